//! Moment formulas, tensor-power multiplicities, the limiting fixed-point
//! law and the upper/lower total-variation bounds.

mod asymptotic;
mod combinatorics;
mod moments;
mod upper;

pub use asymptotic::{
    asymptotic_pmf_k1, asymptotic_pmf_k1_closed, holder_lower_bound, moment_k1, moment_lower_bound, moments_k,
    remark_series, theorem1_lower_closed, theorem1_lower_from_pmf, theorem_envelopes, AsymptoticMoments,
    MomentLowerBound, SeriesValue, PMF_MAX_TERMS, PMF_TOLERANCE,
};
pub use combinatorics::{
    alternating_power_sum, bell, dim_sum_bound, integral_identity, integral_identity_exact, stirling2,
    stirling2_row, stirling_identity_checks, tensor_coeff, tensor_coeff_max_r, tensor_multiplicity_bruteforce,
    truncated_bell, IdentityReport,
};
pub use moments::{tensor_route_max_r, tensor_route_moment, tensor_route_moment_f64, MomentVector, Provenance};
pub use upper::{
    cycle_support, ds_upper_bound, ds_upper_bound_full, ds_upper_bound_restricted, ds_upper_sum_exact,
    UpperBound, UpperRoute,
};

use num_rational::BigRational;
use serde::Serialize;

use crate::numeric::{Limits, Mode, Scalar};
use crate::walk::{c_for_steps, evolve_direct, simulate, stationary_measure, tv, SimOptions, WalkSpec};
use crate::Result;

pub const STEP_RULE: &str = "t = round(c*n + (n/2)*ln(k))";

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "k",
    "t",
    "c",
    "exact_tv",
    "finite_n_upper",
    "moment_lower",
    "theorem_lower",
    "theorem_upper",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulatedStats {
    pub samples: u64,
    pub shards: u32,
    pub seed: u64,
    pub mean: f64,
    pub mean_se: f64,
    pub second_moment: f64,
    pub second_moment_se: f64,
    pub p_fixed_point_free: f64,
    pub p_fixed_point_free_se: f64,
}

/// Every bound and reference value for one `(n, k, t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    /// `c` recovered from `t` by inverting the step rule.
    pub c: f64,
    pub step_rule: &'static str,
    pub exact_tv: Option<f64>,
    pub exact_mode: Option<String>,
    pub finite_n_upper: f64,
    pub upper_route: UpperRoute,
    pub upper_terms: usize,
    /// Hölder bound with its ½ prefactor (`k >= 2`), or the
    /// fixed-point-free gap of the limiting law (`k = 1`).
    pub moment_lower: Option<f64>,
    /// The same Hölder bound without the ½ prefactor.
    pub moment_lower_without_half: Option<f64>,
    pub holder_p: Option<f64>,
    pub theorem_lower: Option<f64>,
    pub theorem_upper: Option<f64>,
    /// Limiting moments `E[χ_ρ^r]`, `r = 0..`.
    pub asymptotic_moments: Option<MomentVector>,
    /// Finite-`n` moments from the tensor-power route, `r = 0..=3`.
    pub finite_n_moments: Option<MomentVector>,
    pub simulated: Option<SimulatedStats>,
}

/// What to compute beyond the closed forms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Exact total variation via the direct engine (needs `n` within the
    /// exact ceiling).
    pub exact: bool,
    pub mode: Option<Mode>,
    pub simulation: Option<SimOptions>,
}

pub fn bounds_report(spec: &WalkSpec, opts: &ReportOptions, limits: &Limits) -> Result<BoundsReport> {
    let (n, k, t) = (spec.n, spec.k, spec.t);
    let c = c_for_steps(n, k, t);
    let upper = ds_upper_bound(n, k, t, limits)?;

    let mut exact_tv = None;
    let mut exact_mode = None;
    if opts.exact {
        let mode = opts.mode.unwrap_or(Mode::Auto).resolve(n, t);
        let value = match mode {
            Mode::Rational => {
                let m = evolve_direct::<BigRational>(spec, limits)?;
                tv(&m, &stationary_measure(n, spec.total_steps(), k)?)?.as_f64()
            }
            _ => {
                let m = evolve_direct::<f64>(spec, limits)?;
                tv(&m, &stationary_measure(n, spec.total_steps(), k)?)?
            }
        };
        exact_tv = Some(value);
        exact_mode = Some(mode.to_string());
    }

    let positive_c = c > 0.0;
    let (theorem_lower, theorem_upper) = if positive_c {
        let (lo, hi) = theorem_envelopes(k, c)?;
        (Some(lo), Some(hi))
    } else {
        (None, None)
    };

    let (mut moment_lower, mut without_half, mut holder_p) = (None, None, None);
    let mut asymptotic = None;
    if positive_c {
        let mut mv = MomentVector::new();
        if k == 1 {
            moment_lower = Some(theorem1_lower_from_pmf(c)?);
            for r in 1..=3 {
                mv.push(moment_k1(r, c)?, Provenance::AsymptoticFormula);
            }
        } else {
            let m = moment_lower_bound(k, c)?;
            moment_lower = Some(m.value);
            without_half = Some(m.value_without_half);
            holder_p = Some(m.p);
            let am = moments_k(k, c)?;
            mv.push(am.first, Provenance::AsymptoticFormula);
            mv.push(am.second, Provenance::AsymptoticFormula);
            if let Some(third) = am.third {
                mv.push(third, Provenance::AsymptoticFormula);
            }
        }
        asymptotic = Some(mv);
    }

    let finite_n_moments = if tensor_route_max_r(n) >= 3 {
        let mut mv = MomentVector::new();
        for r in 1..=3 {
            mv.push(tensor_route_moment_f64(n, k, t, r)?, Provenance::Exact);
        }
        Some(mv)
    } else {
        None
    };

    let simulated = match &opts.simulation {
        Some(sim) => {
            let res = simulate(spec, sim)?;
            let (mean, mean_se) = res.moment(1);
            let (second, second_se) = res.moment(2);
            let (p0, p0_se) = res.fixed_point_probability(0);
            Some(SimulatedStats {
                samples: res.samples,
                shards: res.shards,
                seed: res.seed,
                mean,
                mean_se,
                second_moment: second,
                second_moment_se: second_se,
                p_fixed_point_free: p0,
                p_fixed_point_free_se: p0_se,
            })
        }
        None => None,
    };

    Ok(BoundsReport {
        n,
        k,
        t,
        c,
        step_rule: STEP_RULE,
        exact_tv,
        exact_mode,
        finite_n_upper: upper.value,
        upper_route: upper.route,
        upper_terms: upper.terms,
        moment_lower,
        moment_lower_without_half: without_half,
        holder_p,
        theorem_lower,
        theorem_upper,
        asymptotic_moments: asymptotic,
        finite_n_moments,
        simulated,
    })
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.format()).unwrap_or_default()
}

impl BoundsReport {
    /// Values in [`CSV_HEADER`] order; absent values are empty cells.
    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.t.to_string(),
            self.c.format(),
            cell(self.exact_tv),
            self.finite_n_upper.format(),
            cell(self.moment_lower),
            cell(self.theorem_lower),
            cell(self.theorem_upper),
        ]
    }

    pub fn to_csv(reports: &[BoundsReport]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory csv");
        for r in reports {
            w.write_record(r.csv_record()).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
