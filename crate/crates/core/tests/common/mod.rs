// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use entdyn_core::qmath::Complex;
use entdyn_core::XState;
use rand::Rng;

/// Random valid X state: populations from normalized uniforms, coherences
/// with random phase and magnitude up to the positivity bound.
pub fn random_x_state<R: Rng>(rng: &mut R) -> XState {
    let raw: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() + 1e-3);
    let total: f64 = raw.iter().sum();
    let mut d = raw.map(|x| x / total);
    // fix the trace exactly
    d[3] = 1.0 - d[0] - d[1] - d[2];
    let ad14 = Complex::from_polar(
        rng.random::<f64>() * (d[0] * d[3]).sqrt(),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    );
    let ad23 = Complex::from_polar(
        rng.random::<f64>() * (d[1] * d[2]).sqrt(),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    );
    XState::new(d, ad14, ad23).unwrap()
}

/// Uniform point in the closed unit disk.
pub fn random_amplitude<R: Rng>(rng: &mut R) -> Complex {
    Complex::from_polar(
        rng.random::<f64>().sqrt(),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}
