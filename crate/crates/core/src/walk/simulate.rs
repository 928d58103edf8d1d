use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::partitions::Partition;
use crate::{Error, Result};

use super::WalkSpec;

pub const DEFAULT_SEED: u64 = 0x5eed_c7c1_e5a1_2024;

/// Monte Carlo settings. Shard `s` draws from ChaCha8 seeded with `seed`
/// on stream `s`; shards merge by histogram addition, so results depend on
/// `(seed, shards, samples)` but not on thread scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub samples: u64,
    pub shards: u32,
    pub seed: u64,
    pub track_classes: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            samples: 100_000,
            shards: 8,
            seed: DEFAULT_SEED,
            track_classes: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub spec: WalkSpec,
    pub samples: u64,
    pub shards: u32,
    pub seed: u64,
    /// Fixed-point count → number of samples.
    pub fixed_points: BTreeMap<usize, u64>,
    pub classes: Option<BTreeMap<Partition, u64>>,
}

impl SimulationResult {
    fn empty(spec: WalkSpec, opts: &SimOptions) -> Self {
        SimulationResult {
            spec,
            samples: 0,
            shards: opts.shards,
            seed: opts.seed,
            fixed_points: BTreeMap::new(),
            classes: opts.track_classes.then(BTreeMap::new),
        }
    }

    fn merge(&mut self, other: SimulationResult) {
        self.samples += other.samples;
        for (j, c) in other.fixed_points {
            *self.fixed_points.entry(j).or_default() += c;
        }
        if let (Some(mine), Some(theirs)) = (self.classes.as_mut(), other.classes) {
            for (class, c) in theirs {
                *mine.entry(class).or_default() += c;
            }
        }
    }

    /// Sample mean of `χ_ρ^r` and its standard error.
    pub fn moment(&self, r: i32) -> (f64, f64) {
        let n = self.samples as f64;
        let (mut s1, mut s2) = (0.0, 0.0);
        for (&j, &c) in &self.fixed_points {
            let x = (j as f64).powi(r);
            s1 += c as f64 * x;
            s2 += c as f64 * x * x;
        }
        let mean = s1 / n;
        let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    }

    /// Empirical `P(χ_ρ = j)` and its binomial standard error.
    pub fn fixed_point_probability(&self, j: usize) -> (f64, f64) {
        let p = self.fixed_points.get(&j).copied().unwrap_or(0) as f64 / self.samples as f64;
        (p, (p * (1.0 - p) / self.samples as f64).sqrt())
    }

    pub fn to_json(&self) -> Value {
        let fp: Vec<Value> = self
            .fixed_points
            .iter()
            .map(|(j, c)| json!({"fixed_points": j, "count": c}))
            .collect();
        let mut v = json!({
            "n": self.spec.n,
            "k": self.spec.k,
            "t": self.spec.t,
            "samples": self.samples,
            "shards": self.shards,
            "seed": self.seed,
            "fixed_point_histogram": fp,
        });
        if let Some(classes) = &self.classes {
            v["class_histogram"] = classes
                .iter()
                .map(|(c, n)| json!({"type": c.label(), "count": n}))
                .collect();
        }
        v
    }
}

/// One walk in place: `sigma` becomes a uniform `(n-k)`-cycle times `t`
/// uniform transpositions.
fn sample_one(rng: &mut ChaCha8Rng, spec: &WalkSpec, sigma: &mut [usize], points: &mut [usize]) {
    let n = spec.n;
    let m = n - spec.k;
    for (i, p) in points.iter_mut().enumerate() {
        *p = i;
    }
    // the first m slots of a partial Fisher-Yates shuffle, in cycle order
    for i in 0..m {
        let j = rng.random_range(i..n);
        points.swap(i, j);
    }
    for (i, s) in sigma.iter_mut().enumerate() {
        *s = i;
    }
    for i in 0..m {
        sigma[points[i]] = points[(i + 1) % m];
    }
    for _ in 0..spec.t {
        let (i, j) = loop {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if i != j {
                break (i, j);
            }
        };
        sigma.swap(i, j);
    }
}

fn cycle_type(sigma: &[usize], seen: &mut [bool]) -> Partition {
    seen.fill(false);
    let mut parts = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
            len += 1;
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

fn run_shard(spec: &WalkSpec, opts: &SimOptions, shard: u32, samples: u64) -> SimulationResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(shard as u64);
    let mut out = SimulationResult::empty(*spec, opts);
    out.samples = samples;
    let mut sigma = vec![0; spec.n];
    let mut points = vec![0; spec.n];
    let mut seen = vec![false; spec.n];
    let mut fixed = vec![0u64; spec.n + 1];
    for _ in 0..samples {
        sample_one(&mut rng, spec, &mut sigma, &mut points);
        let fp = sigma.iter().enumerate().filter(|(i, &s)| *i == s).count();
        fixed[fp] += 1;
        if let Some(classes) = out.classes.as_mut() {
            *classes.entry(cycle_type(&sigma, &mut seen)).or_default() += 1;
        }
    }
    out.fixed_points = fixed
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    out
}

/// Samples the walk `opts.samples` times across `opts.shards` shards.
pub fn simulate(spec: &WalkSpec, opts: &SimOptions) -> Result<SimulationResult> {
    if opts.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if opts.shards == 0 {
        return Err(Error::InvalidArgument("shards must be at least 1".into()));
    }
    let shards = opts.shards as u64;
    let (base, extra) = (opts.samples / shards, opts.samples % shards);
    let parts: Vec<SimulationResult> = (0..opts.shards)
        .into_par_iter()
        .map(|s| run_shard(spec, opts, s, base + u64::from((s as u64) < extra)))
        .collect();
    let mut total = SimulationResult::empty(*spec, opts);
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}
