//! The `cyclewalk` command line.
//!
//! Every subcommand reads its parameters from flags and, optionally, from a
//! JSON config file whose keys mirror the long flag names (`t_max` for
//! `--t-max`). Flags win over the file. Outputs carry a metadata block: a
//! `"metadata"` object in JSON, `# key=value` lines ahead of the CSV header.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 size ceiling
//! exceeded, 3 internal invariant violated.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bounds::{
    asymptotic_pmf_k1, bounds_report, ds_upper_bound, moment_k1, moments_k, theorem_envelopes, BoundsReport,
    ReportOptions, CSV_HEADER, STEP_RULE,
};
use crate::characters::{character_table, to_i64};
use crate::numeric::{Limits, Mode, Scalar};
use crate::walk::{
    c_for_steps, simulate, stationary_measure, tv, ClassMeasure, DirectEngine, FourierEngine, SimOptions,
    WalkSpec, DEFAULT_SEED,
};
use crate::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest per-class float discrepancy tolerated between the two engines.
pub const ENGINE_TOLERANCE: f64 = 1e-10;

/// `bounds` computes the exact distance by default up to this `n`.
pub const AUTO_EXACT_MAX_N: usize = 10;

/// `simulate` records full cycle types by default up to this `n`.
pub const AUTO_CLASSES_MAX_N: usize = 20;

pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SHARDS: u32 = 8;
pub const DEFAULT_THRESHOLD: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(name = "cyclewalk", version, about = "The (n-k)-cycle then random transpositions walk on S_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact class measure after the cycle and t transpositions, and its
    /// distance to the stationary coset law.
    Exact(RunConfig),
    /// Exact distance for every t from 0 to --t-max, as CSV.
    Curve(RunConfig),
    /// Monte Carlo fixed-point histogram and moments.
    Simulate(RunConfig),
    /// Upper and lower bounds with reference moments.
    Bounds(RunConfig),
    /// Full character table of S_n as CSV.
    Chartable(RunConfig),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Exact(_) => "exact",
            Command::Curve(_) => "curve",
            Command::Simulate(_) => "simulate",
            Command::Bounds(_) => "bounds",
            Command::Chartable(_) => "chartable",
        }
    }

    fn config(&self) -> &RunConfig {
        match self {
            Command::Exact(c)
            | Command::Curve(c)
            | Command::Simulate(c)
            | Command::Bounds(c)
            | Command::Chartable(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    Fourier,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Rational,
    Float,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rational => Mode::Rational,
            ModeArg::Float => Mode::Float,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Parameters shared by all subcommands; each uses the ones it needs.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Number of cards.
    #[arg(long)]
    pub n: Option<usize>,
    /// Fixed points of the initial cycle, which has length n - k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Transpositions after the cycle.
    #[arg(long, conflicts_with = "c")]
    pub t: Option<usize>,
    /// Time parameter; t = round(c*n + (n/2)*ln k).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Last t of a curve.
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, value_enum)]
    pub engine: Option<Engine>,
    /// Arithmetic of the exact engines (auto: rational when n <= 8 or t <= 12).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub shards: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Add upper bound and limiting envelopes to a curve.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub with_bounds: Option<bool>,
    /// Compute the exact distance in a bounds report.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub exact: Option<bool>,
    /// Record cycle types in a simulation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub classes: Option<bool>,
    /// Distance below which a curve row is flagged.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// JSON file with defaults for any of the above.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl RunConfig {
    /// Fields set here win; the rest come from `base`.
    pub fn merged(self, base: RunConfig) -> RunConfig {
        RunConfig {
            n: self.n.or(base.n),
            k: self.k.or(base.k),
            t: self.t.or(base.t),
            c: self.c.or(base.c),
            t_max: self.t_max.or(base.t_max),
            engine: self.engine.or(base.engine),
            mode: self.mode.or(base.mode),
            samples: self.samples.or(base.samples),
            shards: self.shards.or(base.shards),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            with_bounds: self.with_bounds.or(base.with_bounds),
            exact: self.exact.or(base.exact),
            classes: self.classes.or(base.classes),
            threshold: self.threshold.or(base.threshold),
            config: self.config,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Run(Error::Ceiling { .. }) => 2,
            CliError::Run(Error::Invariant(_)) => 3,
            CliError::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs, writes the output and returns
/// the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command = cli.command.name();
    match run(cli) {
        Ok((text, out)) => match write_output(&text, out.as_ref()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Usage(_) = e {
                let mut cmd = Cli::command();
                cmd.build();
                if let Some(sub) = cmd.find_subcommand_mut(command) {
                    eprintln!("\n{}", sub.render_usage());
                }
                eprintln!("\nFor more information, try '--help'.");
            }
            e.exit_code()
        }
    }
}

fn write_output(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: &PathBuf) -> CliResult<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

/// Runs a parsed command; returns the rendered output and where it goes.
pub fn run(cli: Cli) -> CliResult<(String, Option<PathBuf>)> {
    let name = cli.command.name();
    let flags = cli.command.config().clone();
    let cfg = match &flags.config {
        Some(path) => flags.clone().merged(load_config(path)?),
        None => flags,
    };
    let limits = Limits::from_env();
    let text = match name {
        "exact" => cmd_exact(&cfg, &limits)?,
        "curve" => cmd_curve(&cfg, &limits)?,
        "simulate" => cmd_simulate(&cfg)?,
        "bounds" => cmd_bounds(&cfg, &limits)?,
        _ => cmd_chartable(&cfg, &limits)?,
    };
    Ok((text, cfg.out.clone()))
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing required --{flag}")))
}

/// How `t` was obtained.
#[derive(Debug, Clone, Copy)]
struct Resolved {
    spec: WalkSpec,
    c_given: Option<f64>,
}

impl Resolved {
    fn c(&self) -> f64 {
        self.c_given
            .unwrap_or_else(|| c_for_steps(self.spec.n, self.spec.k, self.spec.t))
    }
}

fn resolve_spec(cfg: &RunConfig) -> CliResult<Resolved> {
    let n = require(cfg.n, "n")?;
    let k = require(cfg.k, "k")?;
    match (cfg.t, cfg.c) {
        (Some(_), Some(_)) => Err(CliError::Usage("give exactly one of --t and --c".into())),
        (None, None) => Err(CliError::Usage("missing required --t or --c".into())),
        (Some(t), None) => Ok(Resolved {
            spec: WalkSpec::new(n, k, t)?,
            c_given: None,
        }),
        (None, Some(c)) => Ok(Resolved {
            spec: WalkSpec::from_c(n, k, c)?,
            c_given: Some(c),
        }),
    }
}

fn metadata(command: &str, r: Option<&Resolved>, seed: Option<u64>, mode: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("cyclewalk"));
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(seed));
    m.insert("mode".into(), json!(mode));
    if let Some(r) = r {
        m.insert("n".into(), json!(r.spec.n));
        m.insert("k".into(), json!(r.spec.k));
        m.insert("t".into(), json!(r.spec.t));
        m.insert("c".into(), json!(r.c()));
        m.insert("t_source".into(), json!(if r.c_given.is_some() { "c" } else { "t" }));
        m.insert("step_rule".into(), json!(STEP_RULE));
    }
    m
}

fn csv_preamble(meta: &Map<String, Value>) -> String {
    let mut s = String::new();
    for (key, v) in meta {
        let v = match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let _ = writeln!(s, "# {key}={v}");
    }
    s
}

fn csv_body(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn render_json(meta: Map<String, Value>, body: Value) -> String {
    let mut out = Map::new();
    out.insert("metadata".into(), Value::Object(meta));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("json renders");
    s.push('\n');
    s
}

fn discrepancy<T: Scalar>(a: &ClassMeasure<T>, b: &ClassMeasure<T>) -> T {
    let mut worst = T::zero();
    for class in a.probs().keys().chain(b.probs().keys()) {
        let d = (a.prob(class) - b.prob(class)).abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

fn check_agreement<T: Scalar>(d: &T, t: usize) -> CliResult<()> {
    let bad = if T::EXACT { !d.is_zero() } else { d.as_f64() > ENGINE_TOLERANCE };
    if bad {
        return Err(Error::Invariant(format!(
            "direct and Fourier engines disagree by {} at t={t}",
            d.format()
        ))
        .into());
    }
    Ok(())
}

struct ExactRun<T> {
    measure: ClassMeasure<T>,
    tv: T,
    discrepancy: Option<T>,
}

fn exact_run<T: Scalar>(spec: &WalkSpec, engine: Engine, limits: &Limits) -> CliResult<ExactRun<T>> {
    let direct = match engine {
        Engine::Direct | Engine::Both => Some(crate::walk::evolve_direct::<T>(spec, limits)?),
        Engine::Fourier => None,
    };
    let fourier = match engine {
        Engine::Fourier | Engine::Both => Some(crate::walk::evolve_fourier::<T>(spec, limits)?),
        Engine::Direct => None,
    };
    let disc = match (&direct, &fourier) {
        (Some(a), Some(b)) => {
            let d = discrepancy(a, b);
            check_agreement(&d, spec.t)?;
            Some(d)
        }
        _ => None,
    };
    let measure = direct.or(fourier).expect("some engine ran");
    let u = stationary_measure::<T>(spec.n, spec.total_steps(), spec.k)?;
    Ok(ExactRun {
        tv: tv(&measure, &u)?,
        measure,
        discrepancy: disc,
    })
}

fn render_exact<T: Scalar>(run: ExactRun<T>, spec: &WalkSpec, format: Format, mut meta: Map<String, Value>, engine: Engine) -> CliResult<String> {
    let u = stationary_measure::<T>(spec.n, spec.total_steps(), spec.k)?;
    let engine = format!("{engine:?}").to_lowercase();
    match format {
        Format::Json => Ok(render_json(
            meta,
            json!({
                "engine": engine,
                "tv": run.tv.format(),
                "discrepancy": run.discrepancy.as_ref().map(Scalar::format),
                "stationary_parity": u.parity().to_string(),
                "measure": run.measure.to_json(),
            }),
        )),
        Format::Csv => {
            meta.insert("engine".into(), json!(engine));
            meta.insert("tv".into(), json!(run.tv.format()));
            meta.insert("discrepancy".into(), json!(run.discrepancy.as_ref().map(Scalar::format)));
            let mut classes: Vec<_> = run.measure.probs().keys().chain(u.probs().keys()).cloned().collect();
            classes.sort();
            classes.dedup();
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| vec![c.label(), run.measure.prob(c).format(), u.prob(c).format()])
                .collect();
            let header = ["type", "prob", "stationary_prob"].map(String::from);
            Ok(csv_preamble(&meta) + &csv_body(&header, &rows))
        }
    }
}

/// `exact`: class measure, distance to stationarity and, with
/// `--engine both`, the largest per-class disagreement.
pub fn cmd_exact(cfg: &RunConfig, limits: &Limits) -> CliResult<String> {
    let r = resolve_spec(cfg)?;
    let engine = cfg.engine.unwrap_or(Engine::Direct);
    let mode = Mode::from(cfg.mode.unwrap_or(ModeArg::Auto)).resolve(r.spec.n, r.spec.t);
    let format = cfg.format.unwrap_or(Format::Json);
    let meta = metadata("exact", Some(&r), None, Some(&mode.to_string()));
    match mode {
        Mode::Rational => {
            let run = exact_run::<BigRational>(&r.spec, engine, limits)?;
            render_exact(run, &r.spec, format, meta, engine)
        }
        _ => {
            let run = exact_run::<f64>(&r.spec, engine, limits)?;
            render_exact(run, &r.spec, format, meta, engine)
        }
    }
}

enum CurveEngine<T: Scalar> {
    Direct(DirectEngine<T>),
    Fourier(FourierEngine<T>),
    Both(DirectEngine<T>, FourierEngine<T>),
}

fn curve_rows<T: Scalar>(cfg: &RunConfig, n: usize, k: usize, t_max: usize, limits: &Limits) -> CliResult<(Vec<String>, Vec<Vec<String>>)> {
    let engine = cfg.engine.unwrap_or(Engine::Direct);
    let with_bounds = cfg.with_bounds.unwrap_or(false);
    let threshold = cfg.threshold.unwrap_or(DEFAULT_THRESHOLD);
    let mut eng = match engine {
        Engine::Direct => CurveEngine::Direct(DirectEngine::<T>::new(n, k, limits)?),
        Engine::Fourier => CurveEngine::Fourier(FourierEngine::<T>::new(n, k, limits)?),
        Engine::Both => CurveEngine::Both(DirectEngine::<T>::new(n, k, limits)?, FourierEngine::<T>::new(n, k, limits)?),
    };
    let mut header: Vec<String> = ["t", "c", "tv"].map(String::from).to_vec();
    if engine == Engine::Both {
        header.push("discrepancy".into());
    }
    if with_bounds {
        header.extend(["ds_upper", "theorem_lower", "theorem_upper"].map(String::from));
    }
    header.push("first_below_threshold".into());

    let mut rows = Vec::with_capacity(t_max + 1);
    let mut flagged = false;
    for t in 0..=t_max {
        let (measure, disc) = match &mut eng {
            CurveEngine::Direct(d) => (d.measure(), None),
            CurveEngine::Fourier(f) => (f.measure_at(t)?, None),
            CurveEngine::Both(d, f) => {
                let a = d.measure();
                let b = f.measure_at(t)?;
                let x = discrepancy(&a, &b);
                check_agreement(&x, t)?;
                (a, Some(x))
            }
        };
        let u = stationary_measure::<T>(n, t + 1, k)?;
        let dist = tv(&measure, &u)?;
        let c = c_for_steps(n, k, t);
        let mut row = vec![t.to_string(), c.format(), dist.format()];
        if let Some(x) = disc {
            row.push(x.format());
        }
        if with_bounds {
            row.push(ds_upper_bound(n, k, t, limits)?.value.format());
            if c > 0.0 {
                let (lo, hi) = theorem_envelopes(k, c)?;
                row.push(lo.format());
                row.push(hi.format());
            } else {
                row.push(String::new());
                row.push(String::new());
            }
        }
        let first = !flagged && dist.as_f64() < threshold;
        flagged |= first;
        row.push(u8::from(first).to_string());
        rows.push(row);
        match &mut eng {
            CurveEngine::Direct(d) | CurveEngine::Both(d, _) => d.step(),
            CurveEngine::Fourier(_) => {}
        }
    }
    Ok((header, rows))
}

/// `curve`: one CSV row per `t = 0..=t_max`.
pub fn cmd_curve(cfg: &RunConfig, limits: &Limits) -> CliResult<String> {
    let n = require(cfg.n, "n")?;
    let k = require(cfg.k, "k")?;
    let t_max = require(cfg.t_max, "t-max")?;
    if cfg.format == Some(Format::Json) {
        return Err(CliError::Usage("curve writes CSV only".into()));
    }
    WalkSpec::new(n, k, 0)?;
    let mode = Mode::from(cfg.mode.unwrap_or(ModeArg::Auto)).resolve(n, t_max);
    let (header, rows) = match mode {
        Mode::Rational => curve_rows::<BigRational>(cfg, n, k, t_max, limits)?,
        _ => curve_rows::<f64>(cfg, n, k, t_max, limits)?,
    };
    let mut meta = metadata("curve", None, None, Some(&mode.to_string()));
    meta.insert("n".into(), json!(n));
    meta.insert("k".into(), json!(k));
    meta.insert("t_max".into(), json!(t_max));
    meta.insert("threshold".into(), json!(cfg.threshold.unwrap_or(DEFAULT_THRESHOLD)));
    meta.insert("step_rule".into(), json!(STEP_RULE));
    Ok(csv_preamble(&meta) + &csv_body(&header, &rows))
}

/// `simulate`: fixed-point histogram, first three moments with standard
/// errors and, for positive `c`, the limiting values next to them.
pub fn cmd_simulate(cfg: &RunConfig) -> CliResult<String> {
    let r = resolve_spec(cfg)?;
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let shards = cfg.shards.unwrap_or(DEFAULT_SHARDS);
    if samples == 0 || shards == 0 {
        return Err(CliError::Usage("--samples and --shards must be at least 1".into()));
    }
    let opts = SimOptions {
        samples,
        shards,
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
        track_classes: cfg.classes.unwrap_or(r.spec.n <= AUTO_CLASSES_MAX_N),
    };
    let res = simulate(&r.spec, &opts)?;
    let c = r.c();
    let limit_moments: [Option<f64>; 3] = if c > 0.0 {
        if r.spec.k == 1 {
            [moment_k1(1, c).ok(), moment_k1(2, c).ok(), moment_k1(3, c).ok()]
        } else {
            let m = moments_k(r.spec.k, c)?;
            [Some(m.first), Some(m.second), m.third]
        }
    } else {
        [None; 3]
    };
    let moments: Vec<Value> = (1..=3)
        .map(|p| {
            let (mean, se) = res.moment(p);
            json!({"r": p, "mean": mean, "se": se, "limit": limit_moments[p as usize - 1]})
        })
        .collect();
    let pmf_limit = |j: usize| -> Option<f64> {
        (r.spec.k == 1 && c > 0.0)
            .then(|| asymptotic_pmf_k1(j, c, None).ok().map(|s| s.value))
            .flatten()
    };
    let meta = metadata("simulate", Some(&r), Some(opts.seed), Some("monte-carlo"));
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let pmf: Vec<Value> = res
                .fixed_points
                .keys()
                .map(|&j| {
                    let (p, se) = res.fixed_point_probability(j);
                    json!({"fixed_points": j, "empirical": p, "se": se, "limit": pmf_limit(j)})
                })
                .collect();
            let mut body = res.to_json();
            body["moments"] = Value::Array(moments);
            body["pmf"] = Value::Array(pmf);
            Ok(render_json(meta, body))
        }
        Format::Csv => {
            let header = ["fixed_points", "count", "empirical", "se", "limit"].map(String::from);
            let rows: Vec<Vec<String>> = res
                .fixed_points
                .iter()
                .map(|(&j, &count)| {
                    let (p, se) = res.fixed_point_probability(j);
                    vec![
                        j.to_string(),
                        count.to_string(),
                        p.format(),
                        se.format(),
                        pmf_limit(j).map(|x| x.format()).unwrap_or_default(),
                    ]
                })
                .collect();
            Ok(csv_preamble(&meta) + &csv_body(&header, &rows))
        }
    }
}

/// `bounds`: the full report; the Hölder bound appears with and without its
/// ½ prefactor.
pub fn cmd_bounds(cfg: &RunConfig, limits: &Limits) -> CliResult<String> {
    let r = resolve_spec(cfg)?;
    let simulation = cfg.samples.map(|samples| SimOptions {
        samples,
        shards: cfg.shards.unwrap_or(DEFAULT_SHARDS),
        seed: cfg.seed.unwrap_or(DEFAULT_SEED),
        track_classes: false,
    });
    if let Some(s) = &simulation {
        if s.samples == 0 || s.shards == 0 {
            return Err(CliError::Usage("--samples and --shards must be at least 1".into()));
        }
    }
    let opts = ReportOptions {
        exact: cfg.exact.unwrap_or(r.spec.n <= AUTO_EXACT_MAX_N),
        mode: cfg.mode.map(Mode::from),
        simulation,
    };
    let report = bounds_report(&r.spec, &opts, limits)?;
    let mode = report.exact_mode.clone();
    let meta = metadata("bounds", Some(&r), simulation.map(|s| s.seed), mode.as_deref());
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => Ok(render_json(meta, json!({"report": report.to_json()}))),
        Format::Csv => {
            let header = CSV_HEADER.map(String::from);
            Ok(csv_preamble(&meta) + &csv_body(&header, &[BoundsReport::csv_record(&report)]))
        }
    }
}

/// `chartable`: rows are irreducibles `λ`, columns are cycle types.
pub fn cmd_chartable(cfg: &RunConfig, limits: &Limits) -> CliResult<String> {
    let n = require(cfg.n, "n")?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let table = character_table(n, limits)?;
    let mut meta = metadata("chartable", None, None, Some("exact"));
    meta.insert("n".into(), json!(n));
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(csv_preamble(&meta) + &table.to_csv()),
        Format::Json => {
            let values: Vec<Vec<Value>> = table
                .values
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| to_i64(v).map_or_else(|| json!(v.to_string()), |x| json!(x)))
                        .collect()
                })
                .collect();
            Ok(render_json(
                meta,
                json!({
                    "irreps": table.irreps.iter().map(|p| p.label()).collect::<Vec<_>>(),
                    "classes": table.classes.iter().map(|p| p.label()).collect::<Vec<_>>(),
                    "values": values,
                }),
            ))
        }
    }
}
