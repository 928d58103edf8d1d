use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::{cycle_character, transposition_normalized, transposition_normalized_f64};
use crate::numeric::{big_to_f64, Limits, Neumaier, Scalar};
use crate::partitions::{dimension, enumerate_partitions, rim_hook_attachments, Partition};
use crate::{Error, Result};

/// Beyond this many steps `r^{2t}` is evaluated as `exp(2t ln|r|)`.
const LOG_SPACE_STEPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperRoute {
    /// Only diagrams obtained by attaching an `(n-k)`-rim hook to some
    /// `ξ ⊢ k`; exact when `n - k > n/2`.
    Restricted,
    /// Every `λ ⊢ n`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBound {
    /// Bound on the total variation distance, `½ √(½ Σ)`.
    pub value: f64,
    /// `Σ_λ (χ^λ_{(n-k,1^k)})² r(λ)^{2t}` over non-trivial, non-sign `λ`.
    pub sum: f64,
    pub terms: usize,
    pub route: UpperRoute,
}

fn even_power(r: f64, t: usize) -> f64 {
    if t == 0 {
        return 1.0;
    }
    let a = r.abs();
    if a == 0.0 || a == 1.0 {
        return a;
    }
    if t > LOG_SPACE_STEPS {
        (2.0 * t as f64 * a.ln()).exp()
    } else {
        a.powi(2 * t as i32)
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidCycle { n, k });
    }
    Ok(())
}

fn excluded(lambda: &Partition, n: usize) -> bool {
    lambda.len() <= 1 || lambda.len() == n
}

fn finish(sum: f64, terms: usize, route: UpperRoute) -> UpperBound {
    UpperBound {
        value: 0.5 * (0.5 * sum).sqrt(),
        sum,
        terms,
        route,
    }
}

/// Finite-`n` Fourier upper bound on `‖μ - U‖_TV` after the cycle and `t`
/// transpositions. Uses the restricted route when `n - k > n/2`.
pub fn ds_upper_bound(n: usize, k: usize, t: usize, limits: &Limits) -> Result<UpperBound> {
    check(n, k)?;
    if 2 * (n - k) > n {
        ds_upper_bound_restricted(n, k, t)
    } else {
        ds_upper_bound_full(n, k, t, limits)
    }
}

/// Sum over `λ` attached to `ξ ⊢ k` by an `(n-k)`-rim hook, where
/// `χ^λ_{(n-k,1^k)} = ±d_ξ`.
pub fn ds_upper_bound_restricted(n: usize, k: usize, t: usize) -> Result<UpperBound> {
    check(n, k)?;
    if 2 * (n - k) <= n {
        return Err(Error::InvalidArgument(format!(
            "restricted route needs n - k > n/2, got n={n}, k={k}"
        )));
    }
    let mut acc = Neumaier::default();
    let mut terms = 0;
    for xi in enumerate_partitions(k) {
        let d = big_to_f64(&dimension(&xi).into());
        let d2 = d * d;
        for lambda in rim_hook_attachments(&xi, n - k) {
            if excluded(&lambda, n) {
                continue;
            }
            acc.add(d2 * even_power(transposition_normalized_f64(&lambda), t));
            terms += 1;
        }
    }
    Ok(finish(acc.value(), terms, UpperRoute::Restricted))
}

/// Sum over every `λ ⊢ n`, with characters from the general recursion.
pub fn ds_upper_bound_full(n: usize, k: usize, t: usize, limits: &Limits) -> Result<UpperBound> {
    check(n, k)?;
    limits.check_table("full upper-bound enumeration", n)?;
    let mut acc = Neumaier::default();
    let mut terms = 0;
    for lambda in enumerate_partitions(n) {
        if excluded(&lambda, n) {
            continue;
        }
        let chi = cycle_character(&lambda, k)?;
        if chi.is_zero() {
            continue;
        }
        let chi = big_to_f64(&chi);
        acc.add(chi * chi * even_power(transposition_normalized_f64(&lambda), t));
        terms += 1;
    }
    Ok(finish(acc.value(), terms, UpperRoute::Full))
}

/// The sum `Σ` of [`UpperBound`] in exact arithmetic, over every `λ ⊢ n`.
pub fn ds_upper_sum_exact(n: usize, k: usize, t: usize, limits: &Limits) -> Result<BigRational> {
    check(n, k)?;
    limits.check_table("exact upper-bound sum", n)?;
    let mut sum = BigRational::zero();
    for lambda in enumerate_partitions(n) {
        if excluded(&lambda, n) {
            continue;
        }
        let chi = BigRational::from_integer(cycle_character(&lambda, k)?);
        let r = transposition_normalized(&lambda)?;
        sum += &chi * &chi * r.abs().powu(2 * t);
    }
    Ok(sum)
}

/// `λ` whose character at `(n-k, 1^k)` is non-zero, for checking that the
/// restricted route misses nothing.
pub fn cycle_support(n: usize, k: usize) -> Result<Vec<Partition>> {
    check(n, k)?;
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n) {
        if !cycle_character(&lambda, k)?.is_zero() {
            out.push(lambda);
        }
    }
    Ok(out)
}
