use serde::Serialize;

use crate::numeric::big_to_f64;
use crate::{Error, Result};

use super::combinatorics::stirling2;

pub const PMF_TOLERANCE: f64 = 1e-12;
pub const PMF_MAX_TERMS: usize = 200;

fn check_c(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    Ok(())
}

/// Limiting `r`-th moment of the fixed-point count after an `(n-1)`-cycle
/// and `cn` transpositions:
/// `Σ_i {r brace i} (1 + iη) ζ^i` with `ζ = 1 - e^{-2c}`, `η = e^{-2c}/ζ`.
pub fn moment_k1(r: usize, c: f64) -> Result<f64> {
    check_c(c)?;
    if r == 0 {
        return Ok(1.0);
    }
    let x = (-2.0 * c).exp();
    let zeta = -(-2.0 * c).exp_m1();
    // (1 + iη) ζ^i = ζ^i + i x ζ^{i-1}
    Ok((1..=r)
        .map(|i| big_to_f64(&stirling2(r, i).into()) * (zeta.powi(i as i32) + i as f64 * x * zeta.powi(i as i32 - 1)))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticMoments {
    pub first: f64,
    pub second: f64,
    /// Only known in closed form for `k = 2`.
    pub third: Option<f64>,
}

/// Limiting first, second (and for `k = 2` third) moments of the fixed-point
/// count at `t = cn + (n/2) ln k`.
pub fn moments_k(k: usize, c: f64) -> Result<AsymptoticMoments> {
    check_c(c)?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!("moments_k needs k >= 2, got {k}")));
    }
    let kf = k as f64;
    let x = (-2.0 * c).exp();
    let first = 1.0 + (kf - 1.0) / kf * x;
    let second = 2.0 + 3.0 * (kf - 1.0) / kf * x + (kf * kf - 3.0 * kf + 1.0) / (kf * kf) * x * x;
    let third = (k == 2).then(|| 5.0 + 5.0 * x - 1.5 * x * x - 0.125 * x * x * x);
    Ok(AsymptoticMoments { first, second, third })
}

/// `½ Δ^q / S^{q-1}` with `q = p/(p-1)`.
pub fn holder_lower_bound(delta: f64, moment_sum: f64, p: f64) -> Result<f64> {
    if !(moment_sum > 0.0) {
        return Err(Error::InvalidArgument(format!("moment sum must be positive, got {moment_sum}")));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!("need 1 < p < inf, got {p}")));
    }
    if delta < 0.0 {
        return Err(Error::InvalidArgument(format!("need a non-negative mean gap, got {delta}")));
    }
    let q = p / (p - 1.0);
    Ok(0.5 * delta.powf(q) / moment_sum.powf(q - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentLowerBound {
    pub p: f64,
    pub delta: f64,
    pub moment_sum: f64,
    /// With the ½ prefactor.
    pub value: f64,
    /// Without it.
    pub value_without_half: f64,
}

/// Hölder-type lower bound from the limiting moments: `p = 3` for `k = 2`,
/// `p = 2` for `k >= 3`. Uses `E_U(χ_ρ) = 1`, `E_U(χ_ρ²) = 2`, `E_U(χ_ρ³) = 5`.
pub fn moment_lower_bound(k: usize, c: f64) -> Result<MomentLowerBound> {
    let m = moments_k(k, c)?;
    let delta = m.first - 1.0;
    let (p, moment_sum) = match m.third {
        Some(third) => (3.0, third + 5.0),
        None => (2.0, m.second + 2.0),
    };
    let value = holder_lower_bound(delta, moment_sum, p)?;
    Ok(MomentLowerBound {
        p,
        delta,
        moment_sum,
        value,
        value_without_half: 2.0 * value,
    })
}

/// `(lower, upper)` of the limiting total-variation envelope.
pub fn theorem_envelopes(k: usize, c: f64) -> Result<(f64, f64)> {
    check_c(c)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k == 1 {
        let x = (-4.0 * c).exp();
        return Ok((theorem1_lower_closed(c)?, x / (2.0 * (-(-4.0 * c).exp_m1()).sqrt())));
    }
    let e = std::f64::consts::E;
    Ok(((-4.0 * c).exp() / 12.0, ((e - 1.0) / 2.0).sqrt() * (-2.0 * c).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Index of the last term included.
    pub last_index: usize,
    /// Magnitude of the first omitted term; bounds the truncation error.
    pub tail_bound: f64,
}

/// Limiting law of the fixed-point count for `k = 1`:
/// `Σ_{i >= j} (-1)^{i-j} C(i,j) (1 + iη) ζ^i / i!`, truncated at `N` or,
/// by default, once the next term drops below `1e-12` both absolutely and
/// relative to the partial sum (at most 200 terms).
pub fn asymptotic_pmf_k1(j: usize, c: f64, truncation: Option<usize>) -> Result<SeriesValue> {
    check_c(c)?;
    if let Some(n) = truncation {
        if n < j {
            return Err(Error::InvalidArgument(format!("truncation {n} is below j={j}")));
        }
    }
    let x = (-2.0 * c).exp();
    let zeta = -(-2.0 * c).exp_m1();
    let cap = truncation.unwrap_or(j + PMF_MAX_TERMS - 1);
    // base_i = C(i,j) ζ^i / i! = ζ^i / (j! (i-j)!)
    let mut base = (1..=j).fold(1.0, |acc, m| acc * zeta / m as f64);
    let term = |i: usize, base: f64| {
        let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
        // (1 + iη) ζ^i / ... with η ζ = x
        sign * (base + i as f64 * x * base / zeta)
    };
    let mut value = 0.0;
    let mut i = j;
    loop {
        value += term(i, base);
        let next_base = base * zeta / (i + 1 - j) as f64;
        let next = term(i + 1, next_base).abs();
        if i >= cap || (truncation.is_none() && next < PMF_TOLERANCE && next <= PMF_TOLERANCE * value.abs()) {
            return Ok(SeriesValue {
                value,
                last_index: i,
                tail_bound: next,
            });
        }
        base = next_base;
        i += 1;
    }
}

/// The same law in closed form: `e^{-ζ} ζ^j / j! · (ζ + jη)`.
pub fn asymptotic_pmf_k1_closed(j: usize, c: f64) -> Result<f64> {
    check_c(c)?;
    let x = (-2.0 * c).exp();
    let zeta = -(-2.0 * c).exp_m1();
    let poisson = (1..=j).fold((-zeta).exp(), |acc, m| acc * zeta / m as f64);
    // ζ + jη = ζ + j x / ζ; multiply through to avoid 0/0 at j = 0
    Ok(poisson * zeta + if j == 0 { 0.0 } else { j as f64 * x * poisson / zeta })
}

/// `(1 - e^{e^{-2c}} + e^{e^{-2c} - 2c}) / e`.
pub fn theorem1_lower_closed(c: f64) -> Result<f64> {
    check_c(c)?;
    let x = (-2.0 * c).exp();
    Ok((1.0 - x.exp() + (x - 2.0 * c).exp()) / std::f64::consts::E)
}

/// `|P(χ_ρ = 0) - 1/e|` from the limiting law: the gap on the set of
/// fixed-point-free permutations.
pub fn theorem1_lower_from_pmf(c: f64) -> Result<f64> {
    let p0 = asymptotic_pmf_k1(0, c, None)?.value;
    Ok((p0 - (-1.0f64).exp()).abs())
}

/// `Σ_i x^i / (i! (i + 2))` at `x = e^{-2c}`; `1/e - P(χ_ρ = 0) = x² · this / e`.
pub fn remark_series(c: f64) -> Result<f64> {
    check_c(c)?;
    let x = (-2.0 * c).exp();
    let mut sum = 0.0;
    let mut pow_over_fact = 1.0;
    for i in 0..100 {
        sum += pow_over_fact / (i as f64 + 2.0);
        pow_over_fact *= x / (i as f64 + 1.0);
    }
    Ok(sum)
}
