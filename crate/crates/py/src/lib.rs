//! Python bindings for `cyclewalk`.
//!
//! Exact probabilities come back as `fractions.Fraction`, float-mode ones as
//! `float`. Measures are dicts keyed by cycle type tuples.

use std::collections::BTreeMap;

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use cyclewalk::bounds::{self, ReportOptions};
use cyclewalk::characters;
use cyclewalk::numeric::{Limits, Mode};
use cyclewalk::partitions;
use cyclewalk::walk::{self, ClassMeasure, SimOptions, WalkSpec, DEFAULT_SEED};
use cyclewalk::Error;

create_exception!(_cyclewalk, CeilingError, PyValueError, "A size ceiling was exceeded.");
create_exception!(_cyclewalk, InvariantError, PyRuntimeError, "An internal cross-check failed.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Ceiling { .. } => CeilingError::new_err(e.to_string()),
        Error::Invariant(_) => InvariantError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn limits() -> Limits {
    Limits::from_env()
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(py_err)
}

fn spec(n: usize, k: usize, t: Option<usize>, c: Option<f64>) -> PyResult<WalkSpec> {
    match (t, c) {
        (Some(t), None) => WalkSpec::new(n, k, t).map_err(py_err),
        (None, Some(c)) => WalkSpec::from_c(n, k, c).map_err(py_err),
        _ => Err(PyValueError::new_err("give exactly one of t and c")),
    }
}

/// An integer partition: a Young diagram or a cycle type.
#[pyclass(name = "Partition", module = "cyclewalk", frozen, eq, hash, ord, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PyPartition(partitions::Partition);

#[pymethods]
impl PyPartition {
    /// Parts in any order; zeros are dropped.
    #[new]
    fn new(parts: Vec<usize>) -> Self {
        PyPartition(partitions::Partition::from_unsorted(parts))
    }

    /// Parses `"3,2,1"`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(PyPartition).map_err(py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }

    fn __str__(&self) -> String {
        self.0.label()
    }

    fn conjugate(&self) -> Self {
        PyPartition(partitions::conjugate(&self.0))
    }

    /// Number of standard Young tableaux.
    fn dimension(&self) -> num_bigint::BigUint {
        partitions::dimension(&self.0)
    }

    fn hook_lengths(&self) -> Vec<Vec<usize>> {
        partitions::hook_lengths(&self.0)
    }

    /// Sign of a permutation of this cycle type.
    fn sign(&self) -> i8 {
        self.0.sign()
    }

    /// Number of permutations of this cycle type.
    fn class_size(&self) -> num_bigint::BigUint {
        self.0.class_size()
    }

    /// True, False or None when incomparable.
    fn dominates(&self, other: &PyPartition) -> PyResult<Option<bool>> {
        use partitions::Dominance::*;
        Ok(match partitions::dominance(&self.0, &other.0).map_err(py_err)? {
            Equal | Dominates => Some(true),
            Dominated => Some(false),
            Incomparable => None,
        })
    }
}

/// All partitions of `n`, largest first.
#[pyfunction(name = "partitions")]
fn all_partitions(n: usize) -> Vec<PyPartition> {
    partitions::enumerate_partitions(n).into_iter().map(PyPartition).collect()
}

/// `χ^λ_μ` by the Murnaghan–Nakayama rule.
#[pyfunction]
fn mn_character(lam: &PyPartition, mu: &PyPartition) -> PyResult<num_bigint::BigInt> {
    characters::mn_character(&lam.0, &mu.0).map_err(py_err)
}

/// `χ^λ` on the class of an `(n-k)`-cycle.
#[pyfunction]
fn cycle_character(lam: &PyPartition, k: usize) -> PyResult<num_bigint::BigInt> {
    characters::cycle_character(&lam.0, k).map_err(py_err)
}

/// `r(λ) = χ^λ_{(2,1^{n-2})} / d_λ` as a `Fraction`.
#[pyfunction]
fn transposition_normalized<'py>(py: Python<'py>, lam: &PyPartition) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &characters::transposition_normalized(&lam.0).map_err(py_err)?)
}

/// `(irreps, classes, values)` with `values[i][j] = χ^{irreps[i]}_{classes[j]}`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn character_table(n: usize) -> PyResult<(Vec<PyPartition>, Vec<PyPartition>, Vec<Vec<num_bigint::BigInt>>)> {
    let t = characters::character_table(n, &limits()).map_err(py_err)?;
    Ok((
        t.irreps.into_iter().map(PyPartition).collect(),
        t.classes.into_iter().map(PyPartition).collect(),
        t.values,
    ))
}

fn measure_dict<'py, T, F>(py: Python<'py>, m: &ClassMeasure<T>, conv: F) -> PyResult<Bound<'py, PyDict>>
where
    T: cyclewalk::Scalar,
    F: Fn(&T) -> PyResult<Bound<'py, PyAny>>,
{
    let d = PyDict::new(py);
    for (class, p) in m.probs() {
        d.set_item(PyTuple::new(py, class.parts())?, conv(p)?)?;
    }
    Ok(d)
}

fn exact_impl<'py>(py: Python<'py>, spec: &WalkSpec, engine: &str, mode: Mode) -> PyResult<(Bound<'py, PyDict>, Bound<'py, PyAny>)> {
    let l = limits();
    let rational = matches!(mode.resolve(spec.n, spec.t), Mode::Rational);
    macro_rules! run {
        ($t:ty, $conv:expr) => {{
            let m: ClassMeasure<$t> = match engine {
                "direct" => walk::evolve_direct(spec, &l),
                "fourier" => walk::evolve_fourier(spec, &l),
                _ => return Err(PyValueError::new_err(format!("unknown engine {engine:?}"))),
            }
            .map_err(py_err)?;
            let u = walk::stationary_measure::<$t>(spec.n, spec.total_steps(), spec.k).map_err(py_err)?;
            let d = walk::tv(&m, &u).map_err(py_err)?;
            let conv = $conv;
            (measure_dict(py, &m, &conv)?, conv(&d)?)
        }};
    }
    Ok(if rational {
        run!(BigRational, |q: &BigRational| fraction(py, q))
    } else {
        run!(f64, |x: &f64| Ok(x.into_pyobject(py)?.into_any()))
    })
}

/// Law of the walk after the cycle and `t` transpositions (or `t` from
/// `c`), with its total variation distance to the stationary coset law.
#[pyfunction]
#[pyo3(signature = (n, k, t=None, c=None, engine="direct", mode="auto"))]
fn exact<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    t: Option<usize>,
    c: Option<f64>,
    engine: &str,
    mode: &str,
) -> PyResult<(Bound<'py, PyDict>, Bound<'py, PyAny>)> {
    let s = spec(n, k, t, c)?;
    let mode = parse_mode(mode)?;
    exact_impl(py, &s, engine, mode)
}

/// Uniform law on the coset reached after `total_steps` steps.
#[pyfunction]
fn stationary_measure<'py>(py: Python<'py>, n: usize, total_steps: usize, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let u = walk::stationary_measure::<BigRational>(n, total_steps, k).map_err(py_err)?;
    measure_dict(py, &u, |q| fraction(py, q))
}

/// `t = round(c n + (n/2) ln k)`.
#[pyfunction]
fn steps_for_c(n: usize, k: usize, c: f64) -> usize {
    walk::steps_for_c(n, k, c)
}

/// Monte Carlo run: fixed-point histogram and moment estimates.
#[pyfunction]
#[pyo3(signature = (n, k, t=None, c=None, samples=100_000, shards=8, seed=DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    t: Option<usize>,
    c: Option<f64>,
    samples: u64,
    shards: u32,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    if samples == 0 || shards == 0 {
        return Err(PyValueError::new_err("samples and shards must be at least 1"));
    }
    let s = spec(n, k, t, c)?;
    let opts = SimOptions {
        samples,
        shards,
        seed,
        track_classes: false,
    };
    let res = py.detach(|| walk::simulate(&s, &opts)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", n)?;
    d.set_item("k", k)?;
    d.set_item("t", s.t)?;
    d.set_item("samples", res.samples)?;
    d.set_item("shards", res.shards)?;
    d.set_item("seed", res.seed)?;
    let hist: BTreeMap<usize, u64> = res.fixed_points.clone();
    d.set_item("fixed_points", hist)?;
    let moments: Vec<(f64, f64)> = (1..=3).map(|r| res.moment(r)).collect();
    d.set_item("moments", moments)?;
    Ok(d)
}

/// Finite-`n` Fourier upper bound on the total variation distance.
#[pyfunction]
fn ds_upper_bound(n: usize, k: usize, t: usize) -> PyResult<f64> {
    Ok(bounds::ds_upper_bound(n, k, t, &limits()).map_err(py_err)?.value)
}

/// `(lower, upper)` limiting envelope at time parameter `c`.
#[pyfunction]
fn theorem_envelopes(k: usize, c: f64) -> PyResult<(f64, f64)> {
    bounds::theorem_envelopes(k, c).map_err(py_err)
}

/// Limiting `r`-th moment of the fixed-point count for `k = 1`.
#[pyfunction]
fn moment_k1(r: usize, c: f64) -> PyResult<f64> {
    bounds::moment_k1(r, c).map_err(py_err)
}

/// Limiting probability of `j` fixed points for `k = 1`.
#[pyfunction]
#[pyo3(signature = (j, c, truncation=None))]
fn asymptotic_pmf_k1(j: usize, c: f64, truncation: Option<usize>) -> PyResult<f64> {
    Ok(bounds::asymptotic_pmf_k1(j, c, truncation).map_err(py_err)?.value)
}

/// Full bounds report as a JSON string.
#[pyfunction]
#[pyo3(signature = (n, k, t=None, c=None, exact=None, samples=None, seed=DEFAULT_SEED))]
#[allow(clippy::too_many_arguments)]
fn bounds_report_json(
    py: Python<'_>,
    n: usize,
    k: usize,
    t: Option<usize>,
    c: Option<f64>,
    exact: Option<bool>,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<String> {
    let s = spec(n, k, t, c)?;
    let opts = ReportOptions {
        exact: exact.unwrap_or(n <= 10),
        mode: None,
        simulation: samples.map(|samples| SimOptions {
            samples,
            seed,
            ..SimOptions::default()
        }),
    };
    let report = py.detach(|| bounds::bounds_report(&s, &opts, &limits())).map_err(py_err)?;
    Ok(report.to_json().to_string())
}

#[pymodule]
fn _cyclewalk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add("CeilingError", m.py().get_type::<CeilingError>())?;
    m.add("InvariantError", m.py().get_type::<InvariantError>())?;
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(all_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(mn_character, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_character, m)?)?;
    m.add_function(wrap_pyfunction!(transposition_normalized, m)?)?;
    m.add_function(wrap_pyfunction!(character_table, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(stationary_measure, m)?)?;
    m.add_function(wrap_pyfunction!(steps_for_c, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(ds_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_envelopes, m)?)?;
    m.add_function(wrap_pyfunction!(moment_k1, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_pmf_k1, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report_json, m)?)?;
    Ok(())
}
