// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Direct numerical solution of the memory equation
//! `q̇(t) = -∫₀ᵗ f(t - t₁) q(t₁) dt₁`, `q(0) = 1`.
//!
//! This is the brute-force oracle for the closed-form amplitudes: it only
//! needs kernel evaluations, never the Laplace-domain structure. The history
//! integral is a full product-trapezoidal convolution sum (O(N²) overall)
//! and time stepping is a trapezoidal predictor–corrector (PECE), so the
//! scheme is second order in the step.

use thiserror::Error;

use crate::qmath::Complex;

/// Largest number of steps a single solve may allocate.
pub const MAX_STEPS: f64 = 1e7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VolterraError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("kernel is not finite at τ = {0}")]
    NonFiniteKernel(f64),
    #[error("step {step} too large: |q| = {magnitude} exceeds 1 + 10h² at t = {t}")]
    StepTooLarge { step: f64, t: f64, magnitude: f64 },
}

/// Time-stepping scheme. Only the trapezoidal predictor–corrector exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    TrapezoidalPece,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub step: f64,
    pub t_max: f64,
    pub scheme: Scheme,
}

impl SolverConfig {
    pub fn new(step: f64, t_max: f64) -> Result<Self, VolterraError> {
        let cfg = Self {
            step,
            t_max,
            scheme: Scheme::TrapezoidalPece,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), VolterraError> {
        if !(self.step.is_finite() && self.t_max.is_finite()) {
            return Err(VolterraError::InvalidConfig("step and t_max must be finite".into()));
        }
        if !(self.step > 0.0 && self.step <= self.t_max) {
            return Err(VolterraError::InvalidConfig(format!(
                "need 0 < step <= t_max (step = {}, t_max = {})",
                self.step, self.t_max
            )));
        }
        if self.t_max / self.step > MAX_STEPS {
            return Err(VolterraError::InvalidConfig(format!(
                "t_max/step = {:.3e} exceeds the {MAX_STEPS:e} step limit",
                self.t_max / self.step
            )));
        }
        Ok(())
    }

    /// Number of steps; the final grid time is `steps() * step`.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.step).round() as usize).max(1)
    }

    pub fn halved(&self) -> Self {
        Self {
            step: self.step / 2.0,
            ..*self
        }
    }
}

/// `q` sampled on the uniform solver grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAmplitude {
    pub times: Vec<f64>,
    pub values: Vec<Complex>,
}

impl GridAmplitude {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Complex {
        *self.values.last().expect("grid has at least two points")
    }

    /// Largest `|q_grid(tₙ) - reference(tₙ)|` over the grid.
    pub fn max_deviation<F: Fn(f64) -> Complex>(&self, reference: F) -> f64 {
        self.times
            .iter()
            .zip(&self.values)
            .map(|(&t, &q)| (q - reference(t)).norm())
            .fold(0.0, f64::max)
    }
}

/// 4-point Gauss–Legendre nodes and weights on [-1, 1].
const GAUSS_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

/// Per-cell moments of the kernel against the two linear hat halves:
/// `falling[j] = ∫_{τⱼ}^{τⱼ₊₁} f(τ)(τⱼ₊₁ - τ)/h dτ` and
/// `rising[j] = ∫_{τⱼ}^{τⱼ₊₁} f(τ)(τ - τⱼ)/h dτ`.
fn hat_moments<K>(kernel: &K, h: f64, cells: usize) -> Result<(Vec<Complex>, Vec<Complex>), VolterraError>
where
    K: Fn(f64) -> Complex,
{
    let mut falling = Vec::with_capacity(cells);
    let mut rising = Vec::with_capacity(cells);
    for j in 0..cells {
        let start = j as f64 * h;
        let mut lo = Complex::new(0.0, 0.0);
        let mut hi = Complex::new(0.0, 0.0);
        for (&x, &w) in GAUSS_NODES.iter().zip(&GAUSS_WEIGHTS) {
            let frac = 0.5 * (x + 1.0);
            let tau = start + frac * h;
            let v = kernel(tau);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(VolterraError::NonFiniteKernel(tau));
            }
            let wh = 0.5 * w * h;
            lo += v * (wh * (1.0 - frac));
            hi += v * (wh * frac);
        }
        falling.push(lo);
        rising.push(hi);
    }
    Ok((falling, rising))
}

/// Solves the memory equation for `kernel` on `[0, cfg.t_max]`.
///
/// The history integral treats `q` as piecewise linear between nodes
/// (product trapezoidal rule); the kernel is integrated against each hat
/// function by Gauss–Legendre quadrature, so the discrete weights reproduce
/// `∫f` itself to quadrature accuracy rather than to `O(h²)`.
pub fn solve<K>(kernel: K, cfg: &SolverConfig) -> Result<GridAmplitude, VolterraError>
where
    K: Fn(f64) -> Complex,
{
    cfg.validate()?;
    let h = cfg.step;
    let n = cfg.steps();

    for j in 0..=n {
        let tau = j as f64 * h;
        let v = kernel(tau);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(VolterraError::NonFiniteKernel(tau));
        }
    }
    let (falling, rising) = hat_moments(&kernel, h, n)?;
    // weight of q_k in ∫₀^{t_m} f(t_m - s) q(s) ds for an interior node at lag j = m - k
    let interior: Vec<Complex> = (0..n)
        .map(|j| if j == 0 { falling[0] } else { falling[j] + rising[j - 1] })
        .collect();
    let endpoint = falling[0];

    let bound = 1.0 + 10.0 * h * h;
    let mut q = Vec::with_capacity(n + 1);
    q.push(Complex::new(1.0, 0.0));
    // derivative at the current node; the history integral is empty at t = 0
    let mut deriv = Complex::new(0.0, 0.0);

    for m in 1..=n {
        // everything but the q_m term
        let mut history = rising[m - 1] * q[0];
        for k in 1..m {
            history += interior[m - k] * q[k];
        }
        let prev = q[m - 1];
        let rhs = |qm: Complex| -(history + endpoint * qm);

        let predicted = prev + deriv * h;
        let corrected = prev + (deriv + rhs(predicted)) * (h / 2.0);
        deriv = rhs(corrected);

        let magnitude = corrected.norm();
        if !magnitude.is_finite() || magnitude > bound {
            return Err(VolterraError::StepTooLarge {
                step: h,
                t: m as f64 * h,
                magnitude,
            });
        }
        q.push(corrected);
    }

    Ok(GridAmplitude {
        times: (0..=n).map(|j| j as f64 * h).collect(),
        values: q,
    })
}

/// Empirical convergence order at `t_max` from solves with `h`, `h/2`, `h/4`:
/// `log₂(|q_h - q_{h/2}| / |q_{h/2} - q_{h/4}|)`.
///
/// Returns `NaN` when both differences vanish (nothing to measure, e.g. a
/// zero kernel).
pub fn richardson_order<K>(kernel: K, cfg: &SolverConfig) -> Result<f64, VolterraError>
where
    K: Fn(f64) -> Complex,
{
    let coarse = solve(&kernel, cfg)?.last();
    let mid = solve(&kernel, &cfg.halved())?.last();
    let fine = solve(&kernel, &cfg.halved().halved())?.last();
    let num = (coarse - mid).norm();
    let den = (mid - fine).norm();
    if num == 0.0 && den == 0.0 {
        return Ok(f64::NAN);
    }
    Ok((num / den).log2())
}
