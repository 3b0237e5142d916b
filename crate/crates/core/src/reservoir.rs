// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Structured zero-temperature reservoirs.
//!
//! Two spectral densities are supported: a Lorentzian cavity line detuned
//! from the qubit transition, and a Lorentzian background with a Lorentzian
//! dip carved out at the transition frequency (an imperfect band gap). For
//! each, this module provides the spectral density, the closed-form memory
//! kernel, and the exact survival amplitude `q(t)` obtained by inverting
//! `q̄(s) = 1 / (s + f̄(s))`.
//!
//! Frequencies are always offsets `ω - ω₀` from the qubit transition; rates
//! and times are in whatever unit the caller picks (the CLI uses the
//! dominant decay rate).

use std::f64::consts::PI;

use thiserror::Error;

use crate::qmath::{self, Complex, CubicRealCoeffs, CubicRoots, QmathError, DEGENERACY_THRESHOLD};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("parameter {name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("parameter {name} must be positive (got {value})")]
    NonPositive { name: &'static str, value: f64 },
    #[error("parameter {name} must be non-negative (got {value})")]
    Negative { name: &'static str, value: f64 },
    #[error(
        "Γ₁λ₁² ≥ Γ₂λ₂² violated: J(ω) must be positive at large ω \
         (Γ₁λ₁² = {background}, Γ₂λ₂² = {gap})"
    )]
    TailPositivity { background: f64, gap: f64 },
    #[error(
        "Γ₁ ≥ Γ₂ violated: J(ω) must be positive at the center of resonance \
         (Γ₁ = {gamma1}, Γ₂ = {gamma2})"
    )]
    CenterPositivity { gamma1: f64, gamma2: f64 },
    #[error("root solve failed: {0}")]
    Numerical(#[from] QmathError),
}

fn finite(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NonFinite { name, value })
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, ModelError> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::NonPositive { name, value })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<f64, ModelError> {
    finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(ModelError::Negative { name, value })
    }
}

/// Coupling regime of a resonant Lorentzian cavity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    /// `Γ ≤ λ/2`: overdamped, essentially exponential decay.
    Weak,
    /// `Γ > λ/2`: oscillatory exchange between qubit and cavity.
    Strong,
}

impl CouplingRegime {
    pub fn label(self) -> &'static str {
        match self {
            CouplingRegime::Weak => "weak",
            CouplingRegime::Strong => "strong",
        }
    }
}

/// Cavity line of width `lambda` centred `delta` below the qubit frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetunedLorentzian {
    gamma: f64,
    lambda: f64,
    delta: f64,
}

impl DetunedLorentzian {
    pub fn new(gamma: f64, lambda: f64, delta: f64) -> Result<Self, ModelError> {
        Ok(Self {
            gamma: positive("gamma", gamma)?,
            lambda: positive("lambda", lambda)?,
            delta: finite("delta", delta)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `λ - iΔ`, the complex decay rate of the kernel.
    fn kappa(&self) -> Complex {
        Complex::new(self.lambda, -self.delta)
    }

    /// `J` at offset `ω - ω₀`.
    pub fn spectral_density(&self, omega_offset: f64) -> f64 {
        let x = omega_offset + self.delta;
        self.gamma * self.lambda * self.lambda / (2.0 * PI * (x * x + self.lambda * self.lambda))
    }

    pub fn kernel(&self, tau: f64) -> Complex {
        (-self.kappa() * tau).exp() * (self.gamma * self.lambda / 2.0)
    }

    /// Only defined on resonance; `None` whenever `Δ ≠ 0`.
    pub fn regime(&self) -> Option<CouplingRegime> {
        if self.delta != 0.0 {
            None
        } else if self.gamma > self.lambda / 2.0 {
            Some(CouplingRegime::Strong)
        } else {
            Some(CouplingRegime::Weak)
        }
    }

    pub fn amplitude(&self) -> LorentzianAmplitude {
        LorentzianAmplitude::new(*self)
    }
}

/// Lorentzian background (`gamma1`, `lambda1`) minus a Lorentzian gap
/// (`gamma2`, `lambda2`), both centred on the qubit frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandGapDip {
    gamma1: f64,
    gamma2: f64,
    lambda1: f64,
    lambda2: f64,
}

/// `Λ = (Γ₁λ₁ - Γ₂λ₂)/2` and `Γ_d = (Γ₁ - Γ₂)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRates {
    pub lambda_eff: f64,
    pub gamma_d: f64,
}

impl BandGapDip {
    pub fn new(gamma1: f64, gamma2: f64, lambda1: f64, lambda2: f64) -> Result<Self, ModelError> {
        let gamma1 = non_negative("gamma1", gamma1)?;
        let gamma2 = non_negative("gamma2", gamma2)?;
        let lambda1 = positive("lambda1", lambda1)?;
        let lambda2 = positive("lambda2", lambda2)?;
        let background = gamma1 * lambda1 * lambda1;
        let gap = gamma2 * lambda2 * lambda2;
        if background < gap {
            return Err(ModelError::TailPositivity { background, gap });
        }
        if gamma1 < gamma2 {
            return Err(ModelError::CenterPositivity { gamma1, gamma2 });
        }
        Ok(Self {
            gamma1,
            gamma2,
            lambda1,
            lambda2,
        })
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn derived_rates(&self) -> DerivedRates {
        DerivedRates {
            lambda_eff: (self.gamma1 * self.lambda1 - self.gamma2 * self.lambda2) / 2.0,
            gamma_d: (self.gamma1 - self.gamma2) / 2.0,
        }
    }

    /// Denominator of `q̄(s)`: `s³ + (λ₁+λ₂)s² + (λ₁λ₂+Λ)s + λ₁λ₂Γ_d`.
    pub fn denominator(&self) -> CubicRealCoeffs {
        let DerivedRates { lambda_eff, gamma_d } = self.derived_rates();
        let l12 = self.lambda1 * self.lambda2;
        CubicRealCoeffs::new(self.lambda1 + self.lambda2, l12 + lambda_eff, l12 * gamma_d)
    }

    pub fn spectral_density(&self, omega_offset: f64) -> f64 {
        let x2 = omega_offset * omega_offset;
        let l1 = self.lambda1 * self.lambda1;
        let l2 = self.lambda2 * self.lambda2;
        // J(ω₀) = (Γ₁ - Γ₂)/2π; keep the centre exact so a closed gap gives 0
        if x2 == 0.0 {
            return (self.gamma1 - self.gamma2) / (2.0 * PI);
        }
        (self.gamma1 * l1 / (x2 + l1) - self.gamma2 * l2 / (x2 + l2)) / (2.0 * PI)
    }

    pub fn kernel(&self, tau: f64) -> Complex {
        let v = (self.gamma1 * self.lambda1 * (-self.lambda1 * tau).exp()
            - self.gamma2 * self.lambda2 * (-self.lambda2 * tau).exp())
            / 2.0;
        Complex::new(v, 0.0)
    }

    pub fn amplitude(&self) -> Result<BandGapAmplitude, ModelError> {
        BandGapAmplitude::new(*self)
    }

    /// `|q(t → ∞)|`: the summed weight of the undamped poles.
    pub fn asymptotic_amplitude(&self) -> Result<f64, ModelError> {
        Ok(self.amplitude()?.asymptotic_amplitude())
    }
}

/// Either reservoir model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralModel {
    DetunedLorentzian(DetunedLorentzian),
    BandGapDip(BandGapDip),
}

impl From<DetunedLorentzian> for SpectralModel {
    fn from(m: DetunedLorentzian) -> Self {
        SpectralModel::DetunedLorentzian(m)
    }
}

impl From<BandGapDip> for SpectralModel {
    fn from(m: BandGapDip) -> Self {
        SpectralModel::BandGapDip(m)
    }
}

impl SpectralModel {
    pub fn spectral_density(&self, omega_offset: f64) -> f64 {
        match self {
            SpectralModel::DetunedLorentzian(m) => m.spectral_density(omega_offset),
            SpectralModel::BandGapDip(m) => m.spectral_density(omega_offset),
        }
    }

    pub fn kernel(&self, tau: f64) -> Complex {
        match self {
            SpectralModel::DetunedLorentzian(m) => m.kernel(tau),
            SpectralModel::BandGapDip(m) => m.kernel(tau),
        }
    }

    /// Rate that sets the natural time unit: `Γ` or `Γ₁`.
    pub fn decay_rate(&self) -> f64 {
        match self {
            SpectralModel::DetunedLorentzian(m) => m.gamma(),
            SpectralModel::BandGapDip(m) => m.gamma1(),
        }
    }

    pub fn regime(&self) -> Option<CouplingRegime> {
        match self {
            SpectralModel::DetunedLorentzian(m) => m.regime(),
            SpectralModel::BandGapDip(_) => None,
        }
    }

    pub fn amplitude(&self) -> Result<AmplitudeFn, ModelError> {
        Ok(match self {
            SpectralModel::DetunedLorentzian(m) => AmplitudeFn::Lorentzian(m.amplitude()),
            SpectralModel::BandGapDip(m) => AmplitudeFn::BandGap(m.amplitude()?),
        })
    }
}

// ---------------------------------------------------------------------------
// Survival amplitudes
// ---------------------------------------------------------------------------

/// Below this value of `|d|·t` the cosh/sinh form is replaced by its series.
const SERIES_SWITCH: f64 = 1e-6;

/// `q(t) = e^{-κt/2}[cosh(dt/2) + (κ/d) sinh(dt/2)]`, `κ = λ - iΔ`,
/// `d = √(κ² - 2Γλ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianAmplitude {
    model: DetunedLorentzian,
    kappa: Complex,
    d: Complex,
}

impl LorentzianAmplitude {
    pub fn new(model: DetunedLorentzian) -> Self {
        let kappa = model.kappa();
        let d = qmath::csqrt_principal(kappa * kappa - 2.0 * model.gamma * model.lambda);
        Self { model, kappa, d }
    }

    pub fn model(&self) -> &DetunedLorentzian {
        &self.model
    }

    pub fn d(&self) -> Complex {
        self.d
    }

    pub fn eval(&self, t: f64) -> Complex {
        if t == 0.0 {
            return Complex::new(1.0, 0.0);
        }
        let (kappa, d) = (self.kappa, self.d);
        let half_dt = d * (t / 2.0);
        if (d * t).norm() < SERIES_SWITCH {
            let x2 = half_dt * half_dt;
            let bracket = 1.0 + x2 / 2.0 + kappa * (t / 2.0) * (1.0 + x2 / 6.0);
            return (-kappa * (t / 2.0)).exp() * bracket;
        }
        if half_dt.re.abs() < 30.0 {
            (-kappa * (t / 2.0)).exp() * (half_dt.cosh() + kappa / d * half_dt.sinh())
        } else {
            // split into the two poles so neither factor overflows
            let ratio = kappa / d;
            let slow = (1.0 + ratio) * ((d - kappa) * (t / 2.0)).exp();
            let fast = (1.0 - ratio) * ((-d - kappa) * (t / 2.0)).exp();
            (slow + fast) * 0.5
        }
    }
}

/// A pole of order `coeffs.len()` contributing `e^{pole·t} Σₖ coeffs[k] tᵏ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTerm {
    pub pole: Complex,
    pub coeffs: Vec<Complex>,
}

impl PoleTerm {
    pub fn eval(&self, t: f64) -> Complex {
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * t + c);
        poly * (self.pole * t).exp()
    }

    pub fn multiplicity(&self) -> usize {
        self.coeffs.len()
    }
}

/// Truncated power series product, keeping `len` terms.
fn series_mul(a: &[Complex], b: &[Complex], len: usize) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse Laplace transform of `N(s) / Π (s - rootᵢ)` as a sum of pole
/// terms. Roots closer than the degeneracy threshold are merged into one
/// pole of higher order (confluent partial fractions). `numerator` is given
/// highest degree first.
pub fn inverse_laplace(numerator: &[Complex], roots: &[Complex]) -> Vec<PoleTerm> {
    let scale = roots.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let tol = DEGENERACY_THRESHOLD * scale;

    // cluster roots (sorted insertion into the first matching cluster)
    let mut clusters: Vec<Vec<Complex>> = Vec::new();
    for &u in roots {
        match clusters.iter_mut().find(|c| c.iter().any(|&v| (u - v).norm() <= tol)) {
            Some(c) => c.push(u),
            None => clusters.push(vec![u]),
        }
    }
    let poles: Vec<(Complex, usize)> = clusters
        .iter()
        .map(|c| (c.iter().sum::<Complex>() / c.len() as f64, c.len()))
        .collect();

    poles
        .iter()
        .enumerate()
        .map(|(idx, &(u, order))| {
            // Taylor series of g(s) = N(s) / Π_{other poles} (s - v)^m around u
            let x = [u, Complex::new(1.0, 0.0)];
            let mut g = vec![Complex::new(0.0, 0.0); order];
            for &c in numerator {
                g = series_mul(&g, &x, order);
                g[0] += c;
            }
            for (jdx, &(v, m)) in poles.iter().enumerate() {
                if jdx == idx {
                    continue;
                }
                let w = u - v;
                let inv: Vec<Complex> = (0..order)
                    .map(|n| {
                        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                        sign / w.powu(n as u32 + 1)
                    })
                    .collect();
                for _ in 0..m {
                    g = series_mul(&g, &inv, order);
                }
            }
            // coefficient of tᵏ is g_{order-1-k} / k!
            let mut factorial = 1.0;
            let coeffs = (0..order)
                .map(|k| {
                    if k > 0 {
                        factorial *= k as f64;
                    }
                    g[order - 1 - k] / factorial
                })
                .collect();
            PoleTerm { pole: u, coeffs }
        })
        .collect()
}

/// `q(t) = Σᵢ cᵢ e^{uᵢ t}` over the roots of the band-gap denominator, with
/// confluent terms when roots (nearly) coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct BandGapAmplitude {
    model: BandGapDip,
    roots: CubicRoots,
    terms: Vec<PoleTerm>,
}

impl BandGapAmplitude {
    pub fn new(model: BandGapDip) -> Result<Self, ModelError> {
        let roots = qmath::solve_cubic(model.denominator())?;
        // numerator (s + λ₁)(s + λ₂)
        let (l1, l2) = (model.lambda1, model.lambda2);
        let numerator = [
            Complex::new(1.0, 0.0),
            Complex::new(l1 + l2, 0.0),
            Complex::new(l1 * l2, 0.0),
        ];
        let terms = inverse_laplace(&numerator, &roots.roots);
        Ok(Self { model, roots, terms })
    }

    pub fn model(&self) -> &BandGapDip {
        &self.model
    }

    pub fn roots(&self) -> &CubicRoots {
        &self.roots
    }

    pub fn terms(&self) -> &[PoleTerm] {
        &self.terms
    }

    pub fn eval(&self, t: f64) -> Complex {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// `q(0)`, which must equal 1.
    pub fn residue_sum(&self) -> Complex {
        self.terms.iter().map(|term| term.coeffs[0]).sum()
    }

    /// `q̇(0) = Σ (uᵢ cᵢ + first-order confluent coefficients)`, which must vanish.
    pub fn initial_slope(&self) -> Complex {
        self.terms
            .iter()
            .map(|term| term.pole * term.coeffs[0] + term.coeffs.get(1).copied().unwrap_or_default())
            .sum()
    }

    pub fn asymptotic_amplitude(&self) -> f64 {
        let scale = self.roots.roots.iter().map(|u| u.norm()).fold(1.0, f64::max);
        self.terms
            .iter()
            .filter(|term| term.pole.re.abs() <= 1e-9 * scale)
            .map(|term| term.coeffs[0])
            .sum::<Complex>()
            .norm()
    }
}

/// Analytic `q(t)` for either model. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub enum AmplitudeFn {
    Lorentzian(LorentzianAmplitude),
    BandGap(BandGapAmplitude),
}

impl AmplitudeFn {
    pub fn eval(&self, t: f64) -> Complex {
        match self {
            AmplitudeFn::Lorentzian(a) => a.eval(t),
            AmplitudeFn::BandGap(a) => a.eval(t),
        }
    }

    pub fn model(&self) -> SpectralModel {
        match self {
            AmplitudeFn::Lorentzian(a) => SpectralModel::DetunedLorentzian(a.model),
            AmplitudeFn::BandGap(a) => SpectralModel::BandGapDip(a.model),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pbg(g1: f64, g2: f64, l1: f64, l2: f64) -> BandGapDip {
        BandGapDip::new(g1, g2, l1, l2).unwrap()
    }

    #[test]
    fn closed_gap_density_vanishes_at_centre() {
        let m = pbg(1.0, 1.0, 50.0, 5.0);
        assert_eq!(m.spectral_density(0.0), 0.0);
        assert!(m.spectral_density(3.0) > 0.0);
    }

    #[test]
    fn lorentzian_density_peaks_at_cavity_line() {
        let m = DetunedLorentzian::new(1.0, 0.1, 0.2).unwrap();
        let peak = m.spectral_density(-0.2);
        assert!((peak - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!(m.spectral_density(0.0) < peak);
    }

    #[test]
    fn open_gap_reduces_to_single_lorentzian() {
        let m = pbg(1.3, 0.0, 7.0, 2.0);
        for &w in &[-20.0, -1.0, 0.0, 0.5, 9.0] {
            let single = 1.3 * 49.0 / (2.0 * PI * (w * w + 49.0));
            assert!((m.spectral_density(w) - single).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_values_at_origin() {
        let l = DetunedLorentzian::new(1.0, 0.1, 0.3).unwrap();
        assert!((l.kernel(0.0) - Complex::new(0.05, 0.0)).norm() < 1e-16);
        let p = pbg(1.0, 0.4, 50.0, 5.0);
        assert!((p.kernel(0.0).re - p.derived_rates().lambda_eff).abs() < 1e-14);
        let null = pbg(1.0, 1.0, 5.0, 5.0);
        for &tau in &[0.0, 0.3, 7.0] {
            assert_eq!(null.kernel(tau), Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn validation_names_the_failed_condition() {
        let err = BandGapDip::new(1.0, 1.5, 50.0, 5.0).unwrap_err();
        assert!(matches!(err, ModelError::CenterPositivity { .. }));
        assert!(err.to_string().contains("center of resonance"));
        let err = BandGapDip::new(1.0, 0.5, 1.0, 5.0).unwrap_err();
        assert!(matches!(err, ModelError::TailPositivity { .. }));
        assert!(DetunedLorentzian::new(0.0, 0.1, 0.0).is_err());
        assert!(DetunedLorentzian::new(1.0, f64::NAN, 0.0).is_err());
        assert!(BandGapDip::new(1.0, -0.1, 1.0, 1.0).is_err());
    }

    #[test]
    fn lorentzian_starts_at_one() {
        for &(g, l, d) in &[(1.0, 0.1, 0.0), (1.0, 100.0, 0.0), (1.0, 0.1, 0.8), (1.0, 2.0, 0.0)] {
            let a = DetunedLorentzian::new(g, l, d).unwrap().amplitude();
            assert_eq!(a.eval(0.0), Complex::new(1.0, 0.0));
            assert!((a.eval(1e-9) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn lorentzian_weak_coupling_is_nearly_exponential() {
        let a = DetunedLorentzian::new(1.0, 100.0, 0.0).unwrap().amplitude();
        let p = a.eval(1.0).norm_sqr();
        assert!((p - (-1.0f64).exp()).abs() / (-1.0f64).exp() < 0.02);
    }

    #[test]
    fn lorentzian_strong_coupling_oscillates() {
        let a = DetunedLorentzian::new(1.0, 0.1, 0.0).unwrap().amplitude();
        assert!(a.d().re == 0.0);
        assert!((a.d().im - 0.19f64.sqrt()).abs() < 1e-15);
        // q is real at resonance; zeros of q are spaced by the half-period 2π/|d|
        let period = 2.0 * PI / a.d().norm();
        let zeros: Vec<f64> = (1..40000)
            .map(|k| k as f64 * 1e-3)
            .filter(|&t| a.eval(t).re * a.eval(t + 1e-3).re < 0.0)
            .collect();
        assert!(zeros.len() >= 2);
        assert!((zeros[1] - zeros[0] - period).abs() < 2e-3);
    }

    #[test]
    fn lorentzian_critical_point_uses_series() {
        // (λ)² = 2Γλ  ⇔ λ = 2Γ at resonance: d = 0
        let a = DetunedLorentzian::new(1.0, 2.0, 0.0).unwrap().amplitude();
        assert_eq!(a.d(), Complex::new(0.0, 0.0));
        for &t in &[0.1f64, 1.0, 5.0] {
            let want = (-t).exp() * (1.0 + t);
            assert!((a.eval(t) - Complex::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn lorentzian_large_times_do_not_overflow() {
        let a = DetunedLorentzian::new(1.0, 100.0, 0.0).unwrap().amplitude();
        let q = a.eval(50.0);
        // |q|² ≈ e^{-Γt}, so |q(50)| ≈ e^{-25}
        assert!(q.re.is_finite(), "{q}");
        assert!((q.norm().ln() + 25.0).abs() < 0.5, "{q}");
    }

    #[test]
    fn band_gap_trapping_value() {
        let m = pbg(1.0, 1.0, 50.0, 5.0);
        let a = m.amplitude().unwrap();
        assert!((a.eval(0.0) - 1.0).norm() < 1e-12);
        let expected = 250.0 / 272.5;
        assert!((m.asymptotic_amplitude().unwrap() - expected).abs() < 1e-10);
        assert!((a.eval(50.0).re - expected).abs() < 1e-10);
    }

    #[test]
    fn band_gap_without_dip_fully_decays() {
        let m = pbg(1.0, 0.0, 50.0, 5.0);
        let a = m.amplitude().unwrap();
        assert!(a.roots().roots.iter().all(|u| u.re < 0.0));
        assert_eq!(m.asymptotic_amplitude().unwrap(), 0.0);
        for k in 0..=300 {
            let t = k as f64 * 0.01;
            let p = a.eval(t).norm_sqr();
            assert!((p - (-t).exp()).abs() <= 0.05 * (-t).exp(), "t={t}");
        }
    }

    #[test]
    fn band_gap_null_spectrum_is_frozen() {
        // Γ₁ = Γ₂, λ₁ = λ₂: roots {0, -λ, -λ}, confluent path
        let m = pbg(1.0, 1.0, 5.0, 5.0);
        let a = m.amplitude().unwrap();
        assert!(a.roots().degenerate);
        assert!(a.terms().iter().any(|t| t.multiplicity() == 2));
        for &t in &[0.0, 0.5, 3.0, 40.0] {
            assert!((a.eval(t) - 1.0).norm() < 1e-9);
        }
        assert!((m.asymptotic_amplitude().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn confluent_inverse_laplace_matches_known_transforms() {
        // 1/(s+2)² ↔ t e^{-2t};  (s+1)/(s+2)³ ↔ (t - t²/2) e^{-2t}
        let u = Complex::new(-2.0, 0.0);
        let terms = inverse_laplace(&[Complex::new(1.0, 0.0)], &[u, u]);
        assert_eq!(terms.len(), 1);
        let t = 0.7f64;
        assert!((terms[0].eval(t).re - t * (-2.0 * t).exp()).abs() < 1e-15);
        let terms = inverse_laplace(&[Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)], &[u, u, u]);
        let want = (t - t * t / 2.0) * (-2.0 * t).exp();
        assert!((terms[0].eval(t).re - want).abs() < 1e-15);
    }

    #[test]
    fn detuning_sign_conjugates_amplitude() {
        let plus = DetunedLorentzian::new(1.0, 0.1, 0.5).unwrap().amplitude();
        let minus = DetunedLorentzian::new(1.0, 0.1, -0.5).unwrap().amplitude();
        for k in 0..200 {
            let t = k as f64 * 0.1;
            assert!((plus.eval(t) - minus.eval(t).conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn regime_only_on_resonance() {
        assert_eq!(DetunedLorentzian::new(1.0, 0.1, 0.0).unwrap().regime(), Some(CouplingRegime::Strong));
        assert_eq!(DetunedLorentzian::new(1.0, 100.0, 0.0).unwrap().regime(), Some(CouplingRegime::Weak));
        assert_eq!(DetunedLorentzian::new(1.0, 0.1, 0.2).unwrap().regime(), None);
    }
}
