use std::collections::{BTreeMap, HashMap};

use crate::numeric::{Limits, Scalar};
use crate::partitions::Partition;
use crate::Result;

use super::measure::{initial_measure, ClassMeasure};
use super::WalkSpec;

/// Where a uniform transposition sends one cycle type: `(target, pairs)`
/// with pair counts summing to `C(n, 2)`.
pub(crate) fn transposition_targets(class: &Partition) -> Vec<(Partition, u64)> {
    let n = class.size();
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &l in class.parts() {
        *mult.entry(l).or_default() += 1;
    }
    let with = |remove: &[usize], add: &[usize]| -> Partition {
        let mut parts = class.parts().to_vec();
        for r in remove {
            let pos = parts.iter().position(|p| p == r).expect("part present");
            parts.swap_remove(pos);
        }
        parts.extend_from_slice(add);
        Partition::from_unsorted(parts)
    };
    let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
    let lengths: Vec<(usize, u64)> = mult.iter().map(|(&l, &m)| (l, m)).collect();
    // merges: i and j in different cycles
    for (i, &(a, ma)) in lengths.iter().enumerate() {
        if ma >= 2 {
            let count = ma * (ma - 1) / 2 * (a * a) as u64;
            *out.entry(with(&[a, a], &[2 * a])).or_default() += count;
        }
        for &(b, mb) in &lengths[i + 1..] {
            let count = ma * mb * (a * b) as u64;
            *out.entry(with(&[a, b], &[a + b])).or_default() += count;
        }
    }
    // splits: i and j in the same cycle
    for &(l, m) in &lengths {
        for d in 1..=l / 2 {
            let per_cycle = if 2 * d < l { l } else { l / 2 } as u64;
            *out.entry(with(&[l], &[d, l - d])).or_default() += m * per_cycle;
        }
    }
    debug_assert_eq!(out.values().sum::<u64>(), (n * n.saturating_sub(1) / 2) as u64);
    out.into_iter().collect()
}

/// Sparse one-step transition kernel on cycle types, built lazily.
#[derive(Debug, Default)]
pub struct TranspositionKernel {
    n: usize,
    index: HashMap<Partition, usize>,
    classes: Vec<Partition>,
    rows: Vec<Option<Vec<(usize, u64)>>>,
}

impl TranspositionKernel {
    pub fn new(n: usize) -> Self {
        TranspositionKernel {
            n,
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cycle types seen so far.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, id: usize) -> &Partition {
        &self.classes[id]
    }

    pub fn id(&mut self, class: &Partition) -> usize {
        if let Some(&id) = self.index.get(class) {
            return id;
        }
        let id = self.classes.len();
        self.index.insert(class.clone(), id);
        self.classes.push(class.clone());
        self.rows.push(None);
        id
    }

    pub fn row(&mut self, id: usize) -> &[(usize, u64)] {
        self.ensure_row(id);
        self.rows[id].as_deref().expect("row just built")
    }

    fn ensure_row(&mut self, id: usize) {
        if self.rows[id].is_none() {
            let targets = transposition_targets(&self.classes[id].clone());
            let row = targets.into_iter().map(|(c, w)| (self.id(&c), w)).collect();
            self.rows[id] = Some(row);
        }
    }

    fn pairs(&self) -> u64 {
        (self.n * (self.n - 1) / 2) as u64
    }
}

/// One step of the walk: convolve with the uniform transposition measure.
pub fn transposition_step<T: Scalar>(m: &ClassMeasure<T>) -> ClassMeasure<T> {
    let mut kernel = TranspositionKernel::new(m.n());
    let state: Vec<(usize, T)> = m
        .probs()
        .iter()
        .map(|(c, p)| (kernel.id(c), p.clone()))
        .collect();
    let next = step_dense(&mut kernel, &state);
    collect(&kernel, m.n(), next, m.parity().flip())
}

fn step_dense<T: Scalar>(kernel: &mut TranspositionKernel, state: &[(usize, T)]) -> Vec<(usize, T)> {
    for (id, _) in state {
        kernel.ensure_row(*id);
    }
    let kernel = &*kernel;
    let denom = T::from_u64_ratio(1, kernel.pairs());
    let mut acc: Vec<Option<T::Acc>> = vec![None; kernel.len()];
    for (id, p) in state {
        let scaled = p.clone() * denom.clone();
        let row = kernel.rows[*id].as_deref().expect("row built above");
        for &(target, w) in row {
            let term = scaled.clone() * T::from_u64_ratio(w, 1);
            T::accumulate(acc[target].get_or_insert_with(Default::default), &term);
        }
    }
    acc.into_iter()
        .enumerate()
        .filter_map(|(id, a)| a.map(|a| (id, T::total(&a))))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

fn collect<T: Scalar>(
    kernel: &TranspositionKernel,
    n: usize,
    state: Vec<(usize, T)>,
    parity: super::Parity,
) -> ClassMeasure<T> {
    let probs = state
        .into_iter()
        .map(|(id, p)| (kernel.class(id).clone(), p))
        .collect();
    ClassMeasure::from_parts_unchecked(n, probs, parity)
}

/// Steps the walk forward by repeated convolution on cycle types.
pub struct DirectEngine<T: Scalar> {
    kernel: TranspositionKernel,
    state: Vec<(usize, T)>,
    parity: super::Parity,
    t: usize,
}

impl<T: Scalar> DirectEngine<T> {
    pub fn new(n: usize, k: usize, limits: &Limits) -> Result<Self> {
        limits.check_exact("direct class-measure engine", n)?;
        let start = initial_measure::<T>(n, k)?;
        let mut kernel = TranspositionKernel::new(n);
        let state = start
            .probs()
            .iter()
            .map(|(c, p)| (kernel.id(c), p.clone()))
            .collect();
        Ok(DirectEngine {
            kernel,
            state,
            parity: start.parity(),
            t: 0,
        })
    }

    /// Transpositions applied so far.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn step(&mut self) {
        // keep the accumulation order fixed: ascending class id
        self.state.sort_by_key(|(id, _)| *id);
        self.state = step_dense(&mut self.kernel, &self.state);
        self.parity = self.parity.flip();
        self.t += 1;
    }

    pub fn measure(&self) -> ClassMeasure<T> {
        collect(&self.kernel, self.kernel.n(), self.state.clone(), self.parity)
    }
}

pub fn evolve_direct<T: Scalar>(spec: &WalkSpec, limits: &Limits) -> Result<ClassMeasure<T>> {
    let mut engine = DirectEngine::<T>::new(spec.n, spec.k, limits)?;
    for _ in 0..spec.t {
        engine.step();
    }
    Ok(engine.measure())
}
