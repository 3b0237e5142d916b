// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence of evolved two-qubit states and event extraction along a
//! trajectory (sudden death, revivals, trapping plateau).

use thiserror::Error;

use crate::dynamics::{self, DensityMatrix4, DynamicsError, XState};
use crate::qmath::{self, Complex, Matrix4, QmathError};
use crate::reservoir::AmplitudeFn;

/// Concurrence below this counts as dead.
pub const EPS_DEAD: f64 = 1e-9;
/// After a death, concurrence must exceed this to count as revived.
pub const EPS_ALIVE: f64 = 1e-6;
/// Event times are refined by bisection to this width.
pub const EVENT_TIME_TOLERANCE: f64 = 1e-6;
/// Standard deviation below which the tail of a trajectory is a plateau.
pub const PLATEAU_MAX_STD: f64 = 1e-4;
/// Fraction of the grid (from the end) inspected for a plateau.
pub const PLATEAU_TAIL_FRACTION: f64 = 0.1;
/// Shortest alive/dead excursion, in samples, the analyzer will accept.
pub const MIN_EXCURSION_SAMPLES: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntanglementError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("not a valid two-qubit state: {0}")]
    NotAState(String),
    #[error("eigenvalue computation failed: {0}")]
    Eigen(#[from] QmathError),
    #[error("trajectory input invalid: {0}")]
    InvalidTrajectory(String),
    #[error("grid too coarse: an excursion near t = {t} spans only {samples} sample(s)")]
    GridTooCoarse { t: f64, samples: usize },
}

/// Branch values of the X-state concurrence, `C = 2 max(0, K₁, K₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XConcurrence {
    pub k1: f64,
    pub k2: f64,
    pub c: f64,
}

/// Concurrence at a time where both qubits have survival amplitude `q`,
/// starting from `initial`.
///
/// The coherences enter through their magnitudes, so local phases in the
/// initial state drop out.
pub fn concurrence_x(initial: &XState, q: Complex) -> Result<XConcurrence, EntanglementError> {
    let m = q.norm();
    if !m.is_finite() || m > 1.0 + dynamics::AMPLITUDE_TOLERANCE {
        return Err(DynamicsError::NonPhysicalAmplitude(m).into());
    }
    let p = q.norm_sqr();
    let lost = 1.0 - p;
    let [r11, r22, r33, r44] = initial.diag();
    let r23 = initial.ad23().norm();
    let r14 = initial.ad14().norm();
    let k1 = p * (r23 - r11.sqrt() * (r44 + r11 * lost * lost + (r22 + r33) * lost).max(0.0).sqrt());
    let k2 = p * (r14 - (r22 + r11 * lost).max(0.0).sqrt() * (r33 + r11 * lost).max(0.0).sqrt());
    Ok(XConcurrence {
        k1,
        k2,
        c: 2.0 * 0f64.max(k1).max(k2),
    })
}

/// Concurrence of an arbitrary X state (no dynamics).
pub fn x_state_concurrence(x: &XState) -> f64 {
    let [d1, d2, d3, d4] = x.diag();
    let a = x.ad23().norm() - (d1.max(0.0) * d4.max(0.0)).sqrt();
    let b = x.ad14().norm() - (d2.max(0.0) * d3.max(0.0)).sqrt();
    2.0 * 0f64.max(a).max(b)
}

/// `σy ⊗ σy` in the `|11⟩, |10⟩, |01⟩, |00⟩` basis.
fn spin_flip() -> Matrix4 {
    Matrix4::from_real([
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
}

/// Wootters concurrence `max(0, √r₁ - √r₂ - √r₃ - √r₄)` with `rᵢ` the
/// eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)` in decreasing order.
pub fn concurrence_wootters(rho: &DensityMatrix4) -> Result<f64, EntanglementError> {
    let m = *rho.matrix();
    let spectrum = qmath::eig4(&m)?;
    let min_eig = spectrum.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    if min_eig < -1e-9 {
        return Err(EntanglementError::NotAState(format!("minimum eigenvalue {min_eig:e} < 0")));
    }

    let y = spin_flip();
    let flipped = y * m.conj() * y;
    let r = qmath::eig4(&(m * flipped))?;
    let mut roots = Vec::with_capacity(4);
    for z in r {
        if z.re < -1e-10 {
            return Err(EntanglementError::NotAState(format!(
                "spin-flip product has negative eigenvalue {z}"
            )));
        }
        let z = if z.re < 0.0 { Complex::new(0.0, z.im) } else { z };
        roots.push(qmath::csqrt_principal(z));
    }
    // near-degenerate pairs come out as r ± iε; keep the complex roots so the
    // imaginary parts cancel in the sum instead of biasing each √ separately
    roots.sort_by(|a, b| b.re.total_cmp(&a.re));
    let c = (roots[0] - roots[1] - roots[2] - roots[3]).re;
    Ok(c.clamp(0.0, 1.0))
}

/// One time sample of a concurrence trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceSample {
    pub t: f64,
    pub q: Complex,
    pub k1: f64,
    pub k2: f64,
    pub c: f64,
}

/// Evaluates the analytic concurrence on `times` for identical reservoirs.
pub fn sample_trajectory(
    initial: &XState,
    amplitude: &AmplitudeFn,
    times: &[f64],
) -> Result<Vec<ConcurrenceSample>, EntanglementError> {
    times
        .iter()
        .map(|&t| {
            let q = amplitude.eval(t);
            let XConcurrence { k1, k2, c } = concurrence_x(initial, q)?;
            Ok(ConcurrenceSample { t, q, k1, k2, c })
        })
        .collect()
}

/// `n` equally spaced times on `[0, t_max]`, endpoints included.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|i| t_max * i as f64 / last).collect()
}

/// A dead interval `[death, rebirth]` after which entanglement returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Revival {
    pub death: f64,
    pub rebirth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<ConcurrenceSample>,
    /// First sudden-death time.
    pub esd_time: Option<f64>,
    pub revivals: Vec<Revival>,
    /// Mean concurrence over the tail when it is flat and alive.
    pub plateau: Option<f64>,
}

impl Trajectory {
    /// Every death time (the ESD time first), including a final death with no
    /// rebirth.
    pub fn deaths(&self) -> Vec<f64> {
        let mut deaths: Vec<f64> = self.revivals.iter().map(|r| r.death).collect();
        if let Some(t) = self.esd_time {
            if deaths.first() != Some(&t) {
                deaths.insert(0, t);
            }
        }
        deaths
    }
}

/// Shrinks `[lo, hi]` around the point where `pred` flips from false (at
/// `lo`) to true (at `hi`).
fn bisect<F: Fn(f64) -> bool>(mut lo: f64, mut hi: f64, pred: F) -> f64 {
    while hi - lo > EVENT_TIME_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Extracts events from a uniformly sampled trajectory. `concurrence_at`
/// evaluates the continuous concurrence and is used to refine event times.
///
/// Death is `C < EPS_DEAD` after `C ≥ EPS_DEAD`; rebirth is `C > EPS_ALIVE`
/// after a death. The plateau is the tail mean when the tail's standard
/// deviation is below [`PLATEAU_MAX_STD`] and the mean is itself alive.
pub fn analyze<F>(samples: Vec<ConcurrenceSample>, concurrence_at: F) -> Result<Trajectory, EntanglementError>
where
    F: Fn(f64) -> f64,
{
    if samples.len() < 2 {
        return Err(EntanglementError::InvalidTrajectory("need at least two samples".into()));
    }
    let dt = samples[1].t - samples[0].t;
    let span = samples[samples.len() - 1].t - samples[0].t;
    for w in samples.windows(2) {
        let step = w[1].t - w[0].t;
        if step.is_nan() || step <= 0.0 {
            return Err(EntanglementError::InvalidTrajectory("sample times must increase strictly".into()));
        }
        if (step - dt).abs() > 1e-9 * span.max(1.0) {
            return Err(EntanglementError::InvalidTrajectory("sample grid is not uniform".into()));
        }
    }

    let mut alive = samples[0].c >= EPS_DEAD;
    let mut transitions = Vec::new();
    for (i, s) in samples.iter().enumerate().skip(1) {
        if alive && s.c < EPS_DEAD {
            alive = false;
            transitions.push(i);
        } else if !alive && s.c > EPS_ALIVE {
            alive = true;
            transitions.push(i);
        }
    }
    for w in transitions.windows(2) {
        let len = w[1] - w[0];
        if len < MIN_EXCURSION_SAMPLES {
            return Err(EntanglementError::GridTooCoarse {
                t: samples[w[0]].t,
                samples: len,
            });
        }
    }

    let starts_alive = samples[0].c >= EPS_DEAD;
    let mut esd_time = None;
    let mut revivals = Vec::new();
    let mut pending_death: Option<f64> = None;
    for (k, &i) in transitions.iter().enumerate() {
        let (lo, hi) = (samples[i - 1].t, samples[i].t);
        let is_death = (k % 2 == 0) == starts_alive;
        if is_death {
            let t = bisect(lo, hi, |t| concurrence_at(t) < EPS_DEAD);
            esd_time.get_or_insert(t);
            pending_death = Some(t);
        } else if let Some(death) = pending_death.take() {
            let rebirth = bisect(lo, hi, |t| concurrence_at(t) > EPS_ALIVE);
            revivals.push(Revival { death, rebirth });
        }
    }

    let tail_len = ((samples.len() as f64 * PLATEAU_TAIL_FRACTION).ceil() as usize).clamp(2, samples.len());
    let tail = &samples[samples.len() - tail_len..];
    let mean = tail.iter().map(|s| s.c).sum::<f64>() / tail_len as f64;
    let var = tail.iter().map(|s| (s.c - mean).powi(2)).sum::<f64>() / tail_len as f64;
    let plateau = (var.sqrt() < PLATEAU_MAX_STD && mean >= EPS_ALIVE).then_some(mean);

    Ok(Trajectory {
        samples,
        esd_time,
        revivals,
        plateau,
    })
}

/// Samples and analyzes the trajectory of `initial` under `amplitude`.
pub fn simulate(initial: &XState, amplitude: &AmplitudeFn, t_max: f64, n: usize) -> Result<Trajectory, EntanglementError> {
    if n < 2 || t_max.is_nan() || t_max <= 0.0 {
        return Err(EntanglementError::InvalidTrajectory(format!(
            "need t_max > 0 and at least two samples (t_max = {t_max}, n = {n})"
        )));
    }
    let samples = sample_trajectory(initial, amplitude, &uniform_grid(t_max, n))?;
    analyze(samples, |t| {
        concurrence_x(initial, amplitude.eval(t)).map(|x| x.c).unwrap_or(0.0)
    })
}
