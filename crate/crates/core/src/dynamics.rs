// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Reduced dynamics of one and two qubits under independent amplitude
//! damping.
//!
//! A single qubit coupled to a zero-temperature reservoir evolves as
//!
//! ```text
//! ρ₁₁(t) = ρ₁₁(0)|q|²     ρ₁₀(t) = ρ₁₀(0) q
//! ρ₀₀(t) = ρ₀₀(0) + ρ₁₁(0)(1 - |q|²)
//! ```
//!
//! and two noninteracting qubits in separate reservoirs evolve by the tensor
//! product of their single-qubit maps. X-shaped two-qubit states stay
//! X-shaped, so [`XState`] is the working representation; dense 4×4
//! matrices only appear at the oracle boundary.
//!
//! Two-qubit basis order throughout: `|11⟩, |10⟩, |01⟩, |00⟩` (first label
//! is qubit A).

use thiserror::Error;

use crate::qmath::{Complex, Matrix4};

/// Slack allowed on `|q| ≤ 1`.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("non-physical survival amplitude |q| = {0} (must be ≤ 1)")]
    NonPhysicalAmplitude(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
}

fn check_amplitude(q: Complex) -> Result<(), DynamicsError> {
    let m = q.norm();
    if !m.is_finite() || m > 1.0 + AMPLITUDE_TOLERANCE {
        Err(DynamicsError::NonPhysicalAmplitude(m))
    } else {
        Ok(())
    }
}

/// Single-qubit density matrix in the `{|1⟩, |0⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitState {
    rho11: f64,
    rho00: f64,
    rho10: Complex,
}

impl SingleQubitState {
    pub fn new(rho11: f64, rho00: f64, rho10: Complex) -> Result<Self, DynamicsError> {
        let ok = rho11.is_finite()
            && rho00.is_finite()
            && rho10.re.is_finite()
            && rho10.im.is_finite()
            && (rho11 + rho00 - 1.0).abs() <= 1e-12
            && (0.0..=1.0).contains(&rho11)
            && (0.0..=1.0).contains(&rho00)
            && rho10.norm_sqr() <= rho11 * rho00 + 1e-12;
        if ok {
            Ok(Self { rho11, rho00, rho10 })
        } else {
            Err(DynamicsError::InvalidState(format!(
                "single-qubit state ρ₁₁={rho11}, ρ₀₀={rho00}, ρ₁₀={rho10} is not a density matrix"
            )))
        }
    }

    pub fn excited() -> Self {
        Self {
            rho11: 1.0,
            rho00: 0.0,
            rho10: Complex::new(0.0, 0.0),
        }
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }

    pub fn rho00(&self) -> f64 {
        self.rho00
    }

    pub fn rho10(&self) -> Complex {
        self.rho10
    }
}

pub fn evolve_single(initial: &SingleQubitState, q: Complex) -> Result<SingleQubitState, DynamicsError> {
    check_amplitude(q)?;
    let p = q.norm_sqr();
    let rho11 = initial.rho11 * p;
    Ok(SingleQubitState {
        rho11,
        // 1 - ρ₁₁(t) written out so the trace is exact
        rho00: initial.rho00 + initial.rho11 * (1.0 - p),
        rho10: initial.rho10 * q,
    })
}

/// Which pair of basis states a Bell-like state superposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellFamily {
    /// `α|01⟩ + β e^{iδ}|10⟩`
    Phi,
    /// `α|00⟩ + β e^{iδ}|11⟩`
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellLikeInit {
    pub family: BellFamily,
    pub alpha: f64,
    pub delta: f64,
}

impl BellLikeInit {
    pub fn new(family: BellFamily, alpha: f64, delta: f64) -> Result<Self, DynamicsError> {
        if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
            return Err(DynamicsError::InvalidState(format!("α = {alpha} must lie in [0, 1]")));
        }
        if !delta.is_finite() {
            return Err(DynamicsError::InvalidState(format!("phase δ = {delta} must be finite")));
        }
        Ok(Self { family, alpha, delta })
    }

    pub fn beta(&self) -> f64 {
        (1.0 - self.alpha * self.alpha).max(0.0).sqrt()
    }

    /// Initial concurrence `2αβ`.
    pub fn initial_concurrence(&self) -> f64 {
        2.0 * self.alpha * self.beta()
    }
}

/// Two-qubit density matrix with only diagonal and antidiagonal entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    diag: [f64; 4],
    ad14: Complex,
    ad23: Complex,
}

impl XState {
    /// `diag` holds the populations of `|11⟩, |10⟩, |01⟩, |00⟩`; `ad14 = ρ₁₄`
    /// and `ad23 = ρ₂₃` are the upper antidiagonal coherences.
    pub fn new(diag: [f64; 4], ad14: Complex, ad23: Complex) -> Result<Self, DynamicsError> {
        let x = Self { diag, ad14, ad23 };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let [d1, d2, d3, d4] = self.diag;
        let finite = self.diag.iter().all(|d| d.is_finite())
            && [self.ad14, self.ad23].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(DynamicsError::InvalidState("X state has non-finite entries".into()));
        }
        let trace: f64 = self.diag.iter().sum();
        if (trace - 1.0).abs() > 1e-12 {
            return Err(DynamicsError::InvalidState(format!("X state trace {trace} ≠ 1")));
        }
        if self.diag.iter().any(|&d| d < -1e-12) {
            return Err(DynamicsError::InvalidState(format!("negative population in {:?}", self.diag)));
        }
        if self.ad14.norm_sqr() > d1 * d4 + 1e-10 {
            return Err(DynamicsError::InvalidState("|ρ₁₄|² > ρ₁₁ρ₄₄".into()));
        }
        if self.ad23.norm_sqr() > d2 * d3 + 1e-10 {
            return Err(DynamicsError::InvalidState("|ρ₂₃|² > ρ₂₂ρ₃₃".into()));
        }
        Ok(())
    }

    pub fn diag(&self) -> [f64; 4] {
        self.diag
    }

    pub fn ad14(&self) -> Complex {
        self.ad14
    }

    pub fn ad23(&self) -> Complex {
        self.ad23
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }
}

/// Bell-like pure state as an X state. `ρ₁₄` (resp. `ρ₂₃`) is `αβ e^{iδ}`.
pub fn bell_like_state(init: &BellLikeInit) -> XState {
    let a = init.alpha;
    let b = init.beta();
    let coherence = Complex::from_polar(a * b, init.delta);
    let zero = Complex::new(0.0, 0.0);
    match init.family {
        BellFamily::Phi => XState {
            diag: [0.0, b * b, a * a, 0.0],
            ad14: zero,
            ad23: coherence,
        },
        BellFamily::Psi => XState {
            diag: [b * b, 0.0, 0.0, a * a],
            ad14: coherence,
            ad23: zero,
        },
    }
}

/// Applies independent amplitude damping with amplitudes `qa` (qubit A) and
/// `qb` (qubit B) to an X state.
pub fn lift_two_qubit(initial: &XState, qa: Complex, qb: Complex) -> Result<XState, DynamicsError> {
    check_amplitude(qa)?;
    check_amplitude(qb)?;
    let (pa, pb) = (qa.norm_sqr(), qb.norm_sqr());
    let (la, lb) = (1.0 - pa, 1.0 - pb);
    let [d1, d2, d3, d4] = initial.diag;
    Ok(XState {
        diag: [
            pa * pb * d1,
            pa * (d2 + lb * d1),
            pb * (d3 + la * d1),
            d4 + la * d2 + lb * d3 + la * lb * d1,
        ],
        ad14: initial.ad14 * qa * qb,
        ad23: initial.ad23 * qa * qb.conj(),
    })
}

/// Hermitian, unit-trace 4×4 matrix in the `|11⟩, |10⟩, |01⟩, |00⟩` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(Matrix4);

impl DensityMatrix4 {
    pub fn new(m: Matrix4) -> Result<Self, DynamicsError> {
        if !m.is_finite() {
            return Err(DynamicsError::InvalidState("matrix has non-finite entries".into()));
        }
        let herm = m.max_abs_diff(&m.adjoint());
        if herm > 1e-9 {
            return Err(DynamicsError::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = m.trace();
        if (tr - 1.0).norm() > 1e-9 {
            return Err(DynamicsError::InvalidState(format!("trace {tr} ≠ 1")));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }
}

pub fn to_dense(x: &XState) -> DensityMatrix4 {
    let mut m = Matrix4::zeros();
    for (i, &d) in x.diag.iter().enumerate() {
        m[(i, i)] = Complex::new(d, 0.0);
    }
    m[(0, 3)] = x.ad14;
    m[(3, 0)] = x.ad14.conj();
    m[(1, 2)] = x.ad23;
    m[(2, 1)] = x.ad23.conj();
    DensityMatrix4(m)
}

/// Single-qubit transfer tensor `T[i][i'][l][l']` with
/// `ρ_{ii'}(t) = Σ T[i][i'][l][l'] ρ_{ll'}(0)`; index 1 is `|1⟩`, 0 is `|0⟩`.
pub fn transfer_tensor(q: Complex) -> [[[[Complex; 2]; 2]; 2]; 2] {
    let zero = Complex::new(0.0, 0.0);
    let mut t = [[[[zero; 2]; 2]; 2]; 2];
    let p = q.norm_sqr();
    t[1][1][1][1] = Complex::new(p, 0.0);
    t[0][0][1][1] = Complex::new(1.0 - p, 0.0);
    t[0][0][0][0] = Complex::new(1.0, 0.0);
    t[1][0][1][0] = q;
    t[0][1][0][1] = q.conj();
    t
}

/// Dense index of `|a b⟩` in the `|11⟩, |10⟩, |01⟩, |00⟩` ordering.
#[inline]
pub fn basis_index(a: usize, b: usize) -> usize {
    (1 - a) * 2 + (1 - b)
}

/// General two-qubit lift by full contraction of both transfer tensors;
/// works for any 4×4 input, X-shaped or not.
pub fn lift_dense(rho: &Matrix4, qa: Complex, qb: Complex) -> Result<Matrix4, DynamicsError> {
    check_amplitude(qa)?;
    check_amplitude(qb)?;
    let ta = transfer_tensor(qa);
    let tb = transfer_tensor(qb);
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for ip in 0..2 {
            for j in 0..2 {
                for jp in 0..2 {
                    let mut acc = Complex::new(0.0, 0.0);
                    for l in 0..2 {
                        for lp in 0..2 {
                            for m in 0..2 {
                                for mp in 0..2 {
                                    acc += ta[i][ip][l][lp]
                                        * tb[j][jp][m][mp]
                                        * rho[(basis_index(l, m), basis_index(lp, mp))];
                                }
                            }
                        }
                    }
                    out[(basis_index(i, j), basis_index(ip, jp))] = acc;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn single_qubit_examples() {
        let ex = SingleQubitState::excited();
        assert_eq!(evolve_single(&ex, c(1.0, 0.0)).unwrap(), ex);
        let g = evolve_single(&ex, c(0.0, 0.0)).unwrap();
        assert_eq!((g.rho11(), g.rho00()), (0.0, 1.0));

        let plus = SingleQubitState::new(0.5, 0.5, c(0.5, 0.0)).unwrap();
        let s = evolve_single(&plus, c(0.6, 0.0)).unwrap();
        assert!((s.rho11() - 0.18).abs() < 1e-15);
        assert!((s.rho00() - 0.82).abs() < 1e-15);
        assert!((s.rho10() - c(0.3, 0.0)).norm() < 1e-15);
        assert!(evolve_single(&plus, c(1.0 + 1e-6, 0.0)).is_err());
    }

    #[test]
    fn single_qubit_rejects_non_states() {
        assert!(SingleQubitState::new(0.7, 0.4, c(0.0, 0.0)).is_err());
        assert!(SingleQubitState::new(0.5, 0.5, c(0.6, 0.0)).is_err());
    }

    #[test]
    fn bell_like_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = bell_like_state(&BellLikeInit::new(BellFamily::Phi, s, 0.0).unwrap());
        assert!((phi.diag()[1] - 0.5).abs() < 1e-15 && (phi.diag()[2] - 0.5).abs() < 1e-15);
        assert!((phi.ad23() - c(0.5, 0.0)).norm() < 1e-15);

        let psi = bell_like_state(&BellLikeInit::new(BellFamily::Psi, 1.0 / 3f64.sqrt(), 0.0).unwrap());
        assert!((psi.diag()[3] - 1.0 / 3.0).abs() < 1e-15);
        assert!((psi.diag()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((psi.ad14() - c(2f64.sqrt() / 3.0, 0.0)).norm() < 1e-15);

        let prod = bell_like_state(&BellLikeInit::new(BellFamily::Phi, 1.0, 0.0).unwrap());
        assert_eq!(prod.diag(), [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(prod.ad23(), c(0.0, 0.0));

        assert!(BellLikeInit::new(BellFamily::Phi, 1.2, 0.0).is_err());
    }

    #[test]
    fn phase_convention_matches_outer_product() {
        // Ψ = α|00⟩ + β e^{iδ}|11⟩  ⇒  ρ₁₄ = ψ₁ ψ₄* = β e^{iδ} α
        let init = BellLikeInit::new(BellFamily::Psi, 0.6, 0.9).unwrap();
        let x = bell_like_state(&init);
        let psi = [Complex::from_polar(0.8, 0.9), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)];
        let dense = to_dense(&x);
        for i in 0..4 {
            for j in 0..4 {
                assert!((dense.matrix()[(i, j)] - psi[i] * psi[j].conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn lift_examples() {
        let psi = bell_like_state(&BellLikeInit::new(BellFamily::Psi, 0.6, 0.4).unwrap());
        assert_eq!(lift_two_qubit(&psi, c(1.0, 0.0), c(1.0, 0.0)).unwrap(), psi);

        let q = c(0.5, 0.3);
        let out = lift_two_qubit(&psi, q, q).unwrap();
        assert!((out.diag()[0] - 0.64 * q.norm_sqr().powi(2)).abs() < 1e-15);
        assert!((out.ad14() - psi.ad14() * q * q).norm() < 1e-15);

        let ten = XState::new([0.0, 1.0, 0.0, 0.0], c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let qa = c(0.3, -0.4);
        let out = lift_two_qubit(&ten, qa, c(0.1, 0.0)).unwrap();
        assert!((out.diag()[1] - 0.25).abs() < 1e-15);
        assert!((out.diag()[3] - 0.75).abs() < 1e-15);
        assert_eq!((out.diag()[0], out.diag()[2]), (0.0, 0.0));
    }

    #[test]
    fn dense_form_examples() {
        let mixed = XState::new([0.25; 4], c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(*to_dense(&mixed).matrix(), Matrix4::identity().scale(c(0.25, 0.0)));
        let phi = bell_like_state(&BellLikeInit::new(BellFamily::Phi, std::f64::consts::FRAC_1_SQRT_2, 0.0).unwrap());
        let m = *to_dense(&phi).matrix();
        for &(i, j) in &[(1, 1), (2, 2), (1, 2), (2, 1)] {
            assert!((m[(i, j)] - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert_eq!(m, m.adjoint());
    }

    #[test]
    fn lift_rejects_growing_amplitudes() {
        let x = XState::new([0.25; 4], c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(
            lift_two_qubit(&x, c(1.1, 0.0), c(0.5, 0.0)),
            Err(DynamicsError::NonPhysicalAmplitude(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let mut m = Matrix4::identity().scale(c(0.25, 0.0));
        assert!(DensityMatrix4::new(m).is_ok());
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
        assert!(DensityMatrix4::new(Matrix4::identity()).is_err());
    }
}
