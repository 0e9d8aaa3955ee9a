//! Deterministic pseudo-random data for verification batteries.
//!
//! The oracle battery and the invariant checks need reproducible "random"
//! fields: identical seeds must produce identical reports on every platform,
//! so a tiny fixed-algorithm generator is used instead of an external RNG.

use num_complex::Complex64;

use crate::grid::{GridFunction, GridSpec};

/// SplitMix64: passes through arbitrary 64-bit seeds, one multiply-shift
/// pipeline per draw.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Complex field with independent re/im entries uniform in `[-1, 1)`.
pub fn random_grid_function(spec: GridSpec, rng: &mut SplitMix64) -> GridFunction {
    let values = (0..spec.len())
        .map(|_| Complex64::new(rng.next_symmetric(), rng.next_symmetric()))
        .collect();
    GridFunction::from_values(spec, values).expect("generated field is well formed")
}
