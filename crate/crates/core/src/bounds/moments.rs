use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::characters::{cycle_character, transposition_normalized, transposition_normalized_f64};
use crate::numeric::{big_to_f64, Neumaier, Scalar};
use crate::partitions::{enumerate_partitions, Partition};
use crate::{Error, Result};

use super::combinatorics::tensor_coeff;

/// Largest `r` such that every `λ ⊢ n` occurring in the `r`-th tensor power
/// (those with `|λ̄| <= r`) satisfies `r <= n - λ_2`; this is `⌈n/2⌉`.
pub fn tensor_route_max_r(n: usize) -> usize {
    n.div_ceil(2)
}

/// `λ ⊢ n` with `|λ̄| <= r`, i.e. first row at least `n - r`.
fn shapes_up_to(n: usize, r: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for j in 0..=r.min(n) {
        for nu in enumerate_partitions(j) {
            if nu.part(0) <= n - j {
                let mut parts = vec![n - j];
                parts.extend_from_slice(nu.parts());
                out.push(Partition::new(parts).expect("first row dominates"));
            }
        }
    }
    out
}

fn check(n: usize, k: usize, r: usize) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidCycle { n, k });
    }
    let max = tensor_route_max_r(n);
    if r > max {
        return Err(Error::OutOfRange {
            lambda: format!("all shapes of size {n}"),
            r,
            max,
        });
    }
    Ok(())
}

/// `E[χ_ρ^r]` after the cycle and `t` transpositions, as
/// `Σ_λ a_{λ,r} χ^λ_{(n-k,1^k)} r(λ)^t`, exactly.
pub fn tensor_route_moment(n: usize, k: usize, t: usize, r: usize) -> Result<BigRational> {
    check(n, k, r)?;
    if r == 0 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let mut acc = BigRational::from_integer(0.into());
    for lambda in shapes_up_to(n, r) {
        let chi = cycle_character(&lambda, k)?;
        if chi == BigInt::from(0) {
            continue;
        }
        let a = BigInt::from(tensor_coeff(&lambda, r)?);
        let rt = transposition_normalized(&lambda)?.powu(t);
        acc += BigRational::from_integer(a * chi) * rt;
    }
    Ok(acc)
}

/// Floating-point version of [`tensor_route_moment`], usable for large `n`.
pub fn tensor_route_moment_f64(n: usize, k: usize, t: usize, r: usize) -> Result<f64> {
    check(n, k, r)?;
    if r == 0 {
        return Ok(1.0);
    }
    let mut acc = Neumaier::default();
    for lambda in shapes_up_to(n, r) {
        let chi = cycle_character(&lambda, k)?;
        if chi == BigInt::from(0) {
            continue;
        }
        let a = big_to_f64(&BigInt::from(tensor_coeff(&lambda, r)?));
        let x = transposition_normalized_f64(&lambda);
        let rt = if t > 1000 && x > 0.0 {
            (t as f64 * x.ln()).exp()
        } else {
            x.powi(t as i32)
        };
        acc.add(a * big_to_f64(&chi) * rt);
    }
    Ok(acc.value())
}

/// Moments indexed by `r` with where each came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentVector {
    pub values: Vec<f64>,
    pub provenance: Vec<Provenance>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    AsymptoticFormula,
    Simulated,
}

impl MomentVector {
    /// Starts with `values[0] = 1`.
    pub fn new() -> Self {
        MomentVector {
            values: vec![1.0],
            provenance: vec![Provenance::Exact],
        }
    }

    pub fn push(&mut self, value: f64, provenance: Provenance) {
        self.values.push(value);
        self.provenance.push(provenance);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Default for MomentVector {
    fn default() -> Self {
        Self::new()
    }
}
