//! Exact and Monte Carlo analysis of the random walk on the symmetric group
//! that starts with a uniformly random `(n-k)`-cycle and then multiplies by
//! uniformly random transpositions.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: Young diagrams, hooks, dimensions, rim hooks.
//! - [`characters`]: Murnaghan–Nakayama characters and normalized
//!   transposition characters `r(λ)`.
//! - [`walk`]: class measures, the two exact evolution engines, stationary
//!   coset laws, total variation and a seeded parallel simulator.
//! - [`bounds`]: Stirling/Bell utilities, tensor-power multiplicities,
//!   asymptotic moments and fixed-point law, and the upper/lower bounds.
//! - [`cli`]: the `cyclewalk` command-line front end.

pub mod bounds;
pub mod characters;
pub mod cli;
mod error;
pub mod numeric;
pub mod partitions;
pub mod walk;

pub use error::{Error, Result};
pub use numeric::{Limits, Mode, Scalar};
pub use partitions::Partition;
pub use walk::{ClassMeasure, Parity, WalkSpec};
