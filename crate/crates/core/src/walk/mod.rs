//! The chain: an `(n-k)`-cycle followed by `t` uniform random transpositions.
//!
//! Measures are class functions, so everything is stored per cycle type.
//! Two exact engines ([`evolve_direct`], [`evolve_fourier`]) compute the law
//! of the walk after the cycle and `t` transpositions; [`simulate`] samples
//! it.

mod direct;
mod fourier;
mod measure;
mod simulate;

pub use direct::{evolve_direct, transposition_step, DirectEngine, TranspositionKernel};
pub use fourier::{evolve_fourier, FourierEngine};
pub use measure::{
    coset_measure, fixed_point_moment, fixed_point_pmf, initial_measure, stationary_measure, tv,
    uniform_measure, ClassMeasure, Parity,
};
pub use simulate::{simulate, SimOptions, SimulationResult, DEFAULT_SEED};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Walk parameters: `n` cards, an `(n-k)`-cycle (so `k` fixed points), then
/// `t` transpositions. The measure reached is `μ_{t+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl WalkSpec {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if n < 3 || k == 0 || k >= n {
            return Err(Error::InvalidCycle { n, k });
        }
        Ok(WalkSpec { n, k, t })
    }

    /// `t = round(cn + (n/2) ln k)`; for `k = 1` this is `round(cn)`.
    pub fn from_c(n: usize, k: usize, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
        }
        Self::new(n, k, steps_for_c(n, k, c))
    }

    /// Number of steps including the initial cycle.
    pub fn total_steps(&self) -> usize {
        self.t + 1
    }
}

pub fn steps_for_c(n: usize, k: usize, c: f64) -> usize {
    let n = n as f64;
    (c * n + 0.5 * n * (k.max(1) as f64).ln()).round() as usize
}

/// Inverse of [`steps_for_c`] before rounding.
pub fn c_for_steps(n: usize, k: usize, t: usize) -> f64 {
    let n = n as f64;
    (t as f64 - 0.5 * n * (k.max(1) as f64).ln()) / n
}
