// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

use entdyn_core::qmath::{csqrt_principal, eig4, solve_cubic, Complex, CubicRealCoeffs, Matrix4};
use proptest::prelude::*;

fn rel_close(a: Complex, b: Complex, tol: f64, scale: f64) -> bool {
    (a - b).norm() <= tol * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cubic_roots_satisfy_vieta(a2 in -60.0..60.0f64, a1 in -500.0..500.0f64, a0 in -3000.0..3000.0f64) {
        let r = solve_cubic(CubicRealCoeffs::new(a2, a1, a0)).unwrap();
        let [u1, u2, u3] = r.roots;
        prop_assert!(rel_close(u1 + u2 + u3, Complex::new(-a2, 0.0), 1e-8, a2.abs()));
        prop_assert!(rel_close(u1 * u2 + u1 * u3 + u2 * u3, Complex::new(a1, 0.0), 1e-8, a1.abs().max(a2 * a2)));
        prop_assert!(rel_close(u1 * u2 * u3, Complex::new(-a0, 0.0), 1e-8, a0.abs().max(a2.abs().powi(3))));
    }

    #[test]
    fn cubic_residuals_are_small(a2 in -60.0..60.0f64, a1 in -500.0..500.0f64, a0 in -3000.0..3000.0f64) {
        let c = CubicRealCoeffs::new(a2, a1, a0);
        let r = solve_cubic(c).unwrap();
        for u in r.roots {
            let bound = 1e-10 * u.norm().powi(3).max(1.0);
            prop_assert!(c.eval(u).norm() <= bound, "residual {} at {}", c.eval(u).norm(), u);
        }
    }

    #[test]
    fn cubic_roots_closed_under_conjugation(a2 in -60.0..60.0f64, a1 in -500.0..500.0f64, a0 in -3000.0..3000.0f64) {
        let r = solve_cubic(CubicRealCoeffs::new(a2, a1, a0)).unwrap();
        for u in r.roots {
            let partner = r.roots.iter().map(|v| (v - u.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(partner <= 1e-12 * u.norm().max(1.0));
        }
    }

    #[test]
    fn csqrt_squares_back(re in -1e3..1e3f64, im in -1e3..1e3f64) {
        let z = Complex::new(re, im);
        let w = csqrt_principal(z);
        prop_assert!((w * w - z).norm() <= 1e-12 * z.norm().max(1e-300));
        prop_assert!(w.re > 0.0 || (w.re == 0.0 && w.im >= 0.0));
        if im != 0.0 {
            prop_assert_eq!(csqrt_principal(z.conj()), w.conj());
        }
    }

    #[test]
    fn eig4_hermitian_spectrum_is_real(entries in proptest::collection::vec(-1.0..1.0f64, 32)) {
        let mut a = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let k = 2 * (4 * i + j);
                a[(i, j)] = Complex::new(entries[k], entries[k + 1]);
            }
        }
        let h = a + a.adjoint();
        let eig = eig4(&h).unwrap();
        let scale = h.norm();
        for z in eig {
            prop_assert!(z.im.abs() <= 1e-8 * scale.max(1.0), "eigenvalue {}", z);
            let shifted = h - Matrix4::identity().scale(z);
            prop_assert!(shifted.determinant().norm() <= 1e-8 * scale.powi(4));
        }
        let sum: Complex = eig.iter().sum();
        let prod: Complex = eig.iter().product();
        prop_assert!((sum - h.trace()).norm() <= 1e-8 * scale.max(1.0));
        prop_assert!((prod - h.determinant()).norm() <= 1e-8 * scale.powi(4).max(1.0));
    }
}
