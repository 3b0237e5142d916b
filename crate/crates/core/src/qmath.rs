// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar and small dense complex arithmetic.
//!
//! Complex scalars come from `num-complex`; on top of that this module
//! provides the principal square root with a pinned branch convention, a
//! 4×4 complex matrix type, real-coefficient cubic and complex quartic root
//! solvers (closed-form seeds followed by Newton polishing), and a 4×4
//! eigenvalue routine built on the characteristic polynomial.

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

pub use num_complex::Complex64 as Complex;

/// Relative root separation below which a cubic's roots are flagged degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

/// Iteration cap for eigenvalue polishing.
const MAX_POLISH_ITERATIONS: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QmathError {
    #[error("non-finite input passed to {0}")]
    NonFinite(&'static str),
    #[error("eigenvalue polishing did not converge: residual {residual:e} > tolerance {tolerance:e}")]
    ConvergenceFailure { residual: f64, tolerance: f64 },
}

#[inline]
pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal square root: `Re(w) >= 0`, and `Im(w) >= 0` whenever `Re(w) == 0`.
///
/// `num-complex` follows the sign of a signed zero imaginary part, so
/// `sqrt(-1 - 0i)` would come back as `-i`; this normalizes that case.
pub fn csqrt_principal(z: Complex) -> Complex {
    let w = z.sqrt();
    if w.re < 0.0 || (w.re == 0.0 && w.im < 0.0) {
        -w
    } else {
        w
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Evaluates a polynomial and its derivative. `coeffs` are ordered from the
/// highest degree down to the constant term.
pub fn horner(coeffs: &[Complex], x: Complex) -> (Complex, Complex) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Damped Newton iterations on `coeffs`: a step that does not lower the
/// residual is halved (up to 30 times) before giving up. Returns the
/// polished root and its final residual.
fn newton_polish(coeffs: &[Complex], mut x: Complex, max_iter: usize) -> (Complex, f64) {
    let (mut p, mut dp) = horner(coeffs, x);
    let mut residual = p.norm();
    'outer: for _ in 0..max_iter {
        if residual == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let mut step = p / dp;
        for _ in 0..30 {
            let candidate = x - step;
            if is_finite(candidate) {
                let (cp, cdp) = horner(coeffs, candidate);
                let cres = cp.norm();
                if cres < residual {
                    x = candidate;
                    p = cp;
                    dp = cdp;
                    residual = cres;
                    if step.norm() <= 1e-16 * x.norm().max(1e-300) {
                        break 'outer;
                    }
                    continue 'outer;
                }
            }
            step *= 0.5;
        }
        break;
    }
    (x, residual)
}

/// Coefficients of the monic cubic `s³ + a2·s² + a1·s + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRealCoeffs {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicRealCoeffs {
    pub fn new(a2: f64, a1: f64, a0: f64) -> Self {
        Self { a2, a1, a0 }
    }

    fn as_complex(&self) -> [Complex; 4] {
        [
            Complex::new(1.0, 0.0),
            Complex::new(self.a2, 0.0),
            Complex::new(self.a1, 0.0),
            Complex::new(self.a0, 0.0),
        ]
    }

    pub fn eval(&self, s: Complex) -> Complex {
        horner(&self.as_complex(), s).0
    }
}

/// Roots of a real cubic plus a flag for near-coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub roots: [Complex; 3],
    /// Set when the minimum pairwise separation is below
    /// [`DEGENERACY_THRESHOLD`] times the largest root magnitude.
    pub degenerate: bool,
}

fn real_cbrt(x: f64) -> f64 {
    x.cbrt()
}

/// Solves `s³ + a2·s² + a1·s + a0 = 0` for real coefficients.
///
/// Cardano (one real root) or the trigonometric form (three real roots)
/// seeds each root, then Newton polishing tightens it against the original
/// polynomial. A complex pair is returned as exact conjugates.
pub fn solve_cubic(c: CubicRealCoeffs) -> Result<CubicRoots, QmathError> {
    if !(c.a2.is_finite() && c.a1.is_finite() && c.a0.is_finite()) {
        return Err(QmathError::NonFinite("solve_cubic"));
    }
    let coeffs = c.as_complex();
    let shift = c.a2 / 3.0;
    // depressed cubic t³ + p t + q, s = t - a2/3
    let p = c.a1 - c.a2 * c.a2 / 3.0;
    let q = 2.0 * c.a2.powi(3) / 27.0 - c.a2 * c.a1 / 3.0 + c.a0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);

    let mut roots = if p == 0.0 && q == 0.0 {
        [Complex::new(-shift, 0.0); 3]
    } else if disc > 0.0 {
        let sign = if q >= 0.0 { 1.0 } else { -1.0 };
        let a = -sign * real_cbrt(q.abs() / 2.0 + disc.sqrt());
        let b = if a != 0.0 { -p / (3.0 * a) } else { 0.0 };
        let real = a + b - shift;
        let pair = Complex::new(-(a + b) / 2.0 - shift, 3f64.sqrt() / 2.0 * (a - b));
        [Complex::new(real, 0.0), pair, pair.conj()]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut out = [Complex::new(0.0, 0.0); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = Complex::new(r * (phi - 2.0 * PI * k as f64 / 3.0).cos() - shift, 0.0);
        }
        out
    };

    if roots[1].im != 0.0 {
        let (real, _) = newton_polish(&coeffs, roots[0], 4);
        let (pair, _) = newton_polish(&coeffs, roots[1], 4);
        // a real seed stays real under real-coefficient Newton
        roots = [Complex::new(real.re, 0.0), pair, pair.conj()];
    } else {
        for root in roots.iter_mut() {
            let (polished, _) = newton_polish(&coeffs, *root, 4);
            *root = Complex::new(polished.re, 0.0);
        }
    }

    Ok(CubicRoots {
        roots,
        degenerate: roots_degenerate(&roots),
    })
}

fn roots_degenerate(roots: &[Complex]) -> bool {
    let scale = roots.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let mut min_sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            min_sep = min_sep.min((roots[i] - roots[j]).norm());
        }
    }
    min_sep <= DEGENERACY_THRESHOLD * scale
}

/// Roots of a monic complex cubic via Cardano, unpolished.
fn cubic_seeds_complex(a2: Complex, a1: Complex, a0: Complex) -> [Complex; 3] {
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = a2 * a2 * a2 * (2.0 / 27.0) - a2 * a1 / 3.0 + a0;
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let sq = disc.sqrt();
    let u_plus = -q / 2.0 + sq;
    let u_minus = -q / 2.0 - sq;
    let u3 = if u_plus.norm() >= u_minus.norm() { u_plus } else { u_minus };
    if u3.norm() == 0.0 {
        return [-shift; 3];
    }
    let u = u3.cbrt();
    let omega = Complex::new(-0.5, 3f64.sqrt() / 2.0);
    let mut out = [Complex::new(0.0, 0.0); 3];
    let mut w = Complex::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * w;
        *slot = uk - p / (3.0 * uk) - shift;
        w *= omega;
    }
    out
}

/// Seeds for the roots of the monic quartic `x⁴ + b x³ + c x² + d x + e`
/// by Ferrari's method (biquadratic shortcut when the cubic term of the
/// depressed form vanishes).
pub fn quartic_seeds(b: Complex, c: Complex, d: Complex, e: Complex) -> [Complex; 4] {
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - b2 * (3.0 / 8.0);
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - b2 * b2 * (3.0 / 256.0);
    let scale = 1.0f64
        .max(p.norm())
        .max(r.norm().sqrt())
        .max(q.norm().powf(2.0 / 3.0));

    let ys: [Complex; 4] = if q.norm() <= 1e-14 * scale.powf(1.5) {
        let root_disc = (p * p - r * 4.0).sqrt();
        let z1 = (-p + root_disc) / 2.0;
        let z2 = (-p - root_disc) / 2.0;
        let (y1, y2) = (z1.sqrt(), z2.sqrt());
        [y1, -y1, y2, -y2]
    } else {
        // resolvent m³ + p m² + (p²/4 - r) m - q²/8 = 0, take the largest root
        let m = cubic_seeds_complex(p, p * p / 4.0 - r, -q * q / 8.0)
            .into_iter()
            .fold(Complex::new(0.0, 0.0), |best, m| if m.norm() > best.norm() { m } else { best });
        let s = (m * 2.0).sqrt();
        let mut out = [Complex::new(0.0, 0.0); 4];
        for (k, sigma) in [1.0, -1.0].into_iter().enumerate() {
            let inner = (-(p * 2.0 + m * 2.0 + q * 2.0 * sigma / s)).sqrt();
            out[2 * k] = (s * sigma + inner) / 2.0;
            out[2 * k + 1] = (s * sigma - inner) / 2.0;
        }
        out
    };
    ys.map(|y| y - shift)
}

// ---------------------------------------------------------------------------
// 4×4 complex matrices
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    pub entries: [[Complex; 4]; 4],
}

impl Default for Matrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl Matrix4 {
    pub fn zeros() -> Self {
        Self {
            entries: [[Complex::new(0.0, 0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([Complex::new(1.0, 0.0); 4])
    }

    pub fn diagonal(d: [Complex; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self {
            entries: rows.map(|row| row.map(|x| Complex::new(x, 0.0))),
        }
    }

    pub fn trace(&self) -> Complex {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Entry-wise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|&z| is_finite(z))
    }

    /// Characteristic polynomial `λ⁴ + c3 λ³ + c2 λ² + c1 λ + c0` by
    /// Faddeev–LeVerrier, returned highest degree first (leading 1 included).
    pub fn characteristic_polynomial(&self) -> [Complex; 5] {
        let mut coeffs = [Complex::new(0.0, 0.0); 5];
        coeffs[0] = Complex::new(1.0, 0.0);
        let mut m = Matrix4::zeros();
        for k in 1..=4 {
            let mut next = *self * m;
            for i in 0..4 {
                next.entries[i][i] += coeffs[k - 1];
            }
            m = next;
            coeffs[k] = -(*self * m).trace() / k as f64;
        }
        coeffs
    }

    pub fn determinant(&self) -> Complex {
        self.characteristic_polynomial()[4]
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i][j]
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.entries[i][j] = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        out
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(mut self, rhs: Matrix4) -> Matrix4 {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(mut self, rhs: Matrix4) -> Matrix4 {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

/// Eigenvalues of a 4×4 complex matrix.
///
/// Characteristic polynomial by Faddeev–LeVerrier, Ferrari seeds, then Newton
/// polishing on the polynomial until each root satisfies
/// `|det(m - λI)| <= 1e-8 · ‖m‖⁴` (Frobenius norm).
pub fn eig4(m: &Matrix4) -> Result<[Complex; 4], QmathError> {
    if !m.is_finite() {
        return Err(QmathError::NonFinite("eig4"));
    }
    let norm = m.norm();
    if norm == 0.0 {
        return Ok([Complex::new(0.0, 0.0); 4]);
    }
    // work on the unit-norm matrix so the seeding thresholds are scale free;
    // det(m - λI) = ‖m‖⁴ det(m̂ - λ̂I), so the tolerance becomes 1e-8
    let unit = m.scale(Complex::new(1.0 / norm, 0.0));
    let coeffs = unit.characteristic_polynomial();
    let tolerance = 1e-8;
    let seeds = quartic_seeds(coeffs[1], coeffs[2], coeffs[3], coeffs[4]);
    let mut out = [Complex::new(0.0, 0.0); 4];
    for (slot, seed) in out.iter_mut().zip(seeds) {
        let seed = if is_finite(seed) { seed } else { Complex::new(0.0, 0.0) };
        let (root, residual) = newton_polish(&coeffs, seed, MAX_POLISH_ITERATIONS);
        if residual > tolerance {
            return Err(QmathError::ConvergenceFailure {
                residual: residual * norm.powi(4),
                tolerance: tolerance * norm.powi(4),
            });
        }
        *slot = root * norm;
    }
    Ok(out)
}
