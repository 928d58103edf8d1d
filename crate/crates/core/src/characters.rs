//! Irreducible characters of `S_n` via the Murnaghan–Nakayama rule, plus
//! the normalized transposition character `r(λ) = χ^λ_{(2,1^{n-2})} / d_λ`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::numeric::{ratio, Limits};
use crate::partitions::{conjugate, dimension, enumerate_partitions, rim_hook_removals, Partition};
use crate::{Error, Result};

/// Memo of `χ^λ_μ` keyed by `(λ, μ)`.
///
/// Readers never see partial values: an entry is inserted only once it has
/// been fully computed. Two threads racing on the same key both compute it
/// and write the same integer.
#[derive(Debug, Default)]
pub struct CharacterCache {
    memo: RwLock<HashMap<(Partition, Partition), BigInt>>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by the free functions of this module.
    pub fn global() -> &'static CharacterCache {
        static CACHE: OnceLock<CharacterCache> = OnceLock::new();
        CACHE.get_or_init(CharacterCache::new)
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("character cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn character(&self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        if lambda.size() != mu.size() {
            return Err(Error::SizeMismatch {
                left: lambda.size(),
                right: mu.size(),
            });
        }
        Ok(self.compute(lambda, mu))
    }

    fn compute(&self, lambda: &Partition, mu: &Partition) -> BigInt {
        // χ^λ on the identity class is the dimension
        if mu.part(0) <= 1 {
            return BigInt::from(dimension(lambda));
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.memo.read().expect("character cache poisoned").get(&key) {
            return v.clone();
        }
        // strip the largest part of μ first
        let m = mu.part(0);
        let rest = Partition::new(mu.parts()[1..].to_vec()).expect("tail of a partition");
        let mut value = BigInt::zero();
        for removal in rim_hook_removals(lambda, m) {
            let sub = self.compute(&removal.residue, &rest);
            if removal.sign > 0 {
                value += sub;
            } else {
                value -= sub;
            }
        }
        self.memo
            .write()
            .expect("character cache poisoned")
            .insert(key, value.clone());
        value
    }
}

/// `χ^λ_μ` by the Murnaghan–Nakayama recursion (shared memo).
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    CharacterCache::global().character(lambda, mu)
}

fn check_cycle(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidCycle { n, k });
    }
    Ok(())
}

/// `χ^λ` at an `(n-k)`-cycle, i.e. on the class `(n-k, 1^k)`.
///
/// When `n - k > n/2` there is at most one `(n-k)`-rim hook, so the value is
/// `0` or `±d_ξ` for the residue `ξ`; otherwise the general recursion runs.
pub fn cycle_character(lambda: &Partition, k: usize) -> Result<BigInt> {
    let n = lambda.size();
    check_cycle(n, k)?;
    let m = n - k;
    if 2 * m > n {
        return Ok(match rim_hook_removals(lambda, m).first() {
            None => BigInt::zero(),
            Some(r) => BigInt::from(r.sign) * BigInt::from(dimension(&r.residue)),
        });
    }
    mn_character(lambda, &Partition::cycle_type(n, k))
}

/// `n(n-1)·r(λ) = Σ_i λ_i² - (2i-1)λ_i` (rows 1-indexed).
pub fn transposition_row_sum(lambda: &Partition) -> i128 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = l as i128;
            l * l - (2 * i as i128 + 1) * l
        })
        .sum()
}

fn check_n2(lambda: &Partition) -> Result<usize> {
    let n = lambda.size();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "normalized transposition character needs n >= 2, got λ=({lambda})"
        )));
    }
    Ok(n)
}

/// `r(λ)` from the row form `Σ (λ_i² - (2i-1)λ_i) / (n(n-1))`, checked
/// against the row/column binomial form.
pub fn transposition_normalized(lambda: &Partition) -> Result<BigRational> {
    let n = check_n2(lambda)?;
    let rows = ratio(transposition_row_sum(lambda), (n * (n - 1)) as i128);
    debug_assert_eq!(rows, transposition_normalized_binomial(lambda)?);
    Ok(rows)
}

/// `r(λ) = Σ_i [C(λ_i, 2) - C(λ^T_i, 2)] / C(n, 2)`.
pub fn transposition_normalized_binomial(lambda: &Partition) -> Result<BigRational> {
    let n = check_n2(lambda)?;
    let pairs = |p: &Partition| -> i128 {
        p.parts()
            .iter()
            .map(|&l| (l as i128) * (l as i128 - 1) / 2)
            .sum()
    };
    let num = pairs(lambda) - pairs(&conjugate(lambda));
    Ok(ratio(num, (n * (n - 1) / 2) as i128))
}

/// `r(λ)` as a float, for large sums.
pub fn transposition_normalized_f64(lambda: &Partition) -> f64 {
    let n = lambda.size() as f64;
    transposition_row_sum(lambda) as f64 / (n * (n - 1.0))
}

/// Upper bound `(λ_2 - 3 + λ_1(λ_1 - λ_2 + 2)/n) / (n - 1)` on `r(λ)`.
pub fn r_upper_bound(lambda: &Partition) -> Result<BigRational> {
    let n = check_n2(lambda)? as i128;
    let (l1, l2) = (lambda.part(0) as i128, lambda.part(1) as i128);
    // multiply through by n
    Ok(ratio((l2 - 3) * n + l1 * (l1 - l2 + 2), n * (n - 1)))
}

/// Moves one box from row `k` to row `l` (rows 1-indexed, `k < l`).
pub fn rim_move(lambda: &Partition, k: usize, l: usize) -> Result<Partition> {
    let bad = |why: &str| Error::InvalidMove(format!("λ=({lambda}), k={k}, l={l}: {why}"));
    if k == 0 || k >= l {
        return Err(bad("need 1 <= k < l"));
    }
    if l > lambda.len() + 1 {
        return Err(bad("target row is past the first empty row"));
    }
    if lambda.part(l - 1) >= lambda.part(k - 1) {
        return Err(bad("need λ_l < λ_k"));
    }
    let mut parts = lambda.parts().to_vec();
    parts.resize(lambda.len().max(l), 0);
    parts[k - 1] -= 1;
    parts[l - 1] += 1;
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::new(parts).map_err(|_| bad("result is not a partition"))
}

/// `r(λ) - r(λ')` for the box move `λ → λ'` of [`rim_move`], from the
/// closed form `2(λ_k - λ_l + (l - k) - 1) / (n(n-1))`.
pub fn rim_move_delta(lambda: &Partition, k: usize, l: usize) -> Result<BigRational> {
    let moved = rim_move(lambda, k, l)?;
    let n = check_n2(lambda)? as i128;
    let (lk, ll) = (lambda.part(k - 1) as i128, lambda.part(l - 1) as i128);
    let closed = ratio(2 * (lk - ll + (l as i128 - k as i128) - 1), n * (n - 1));
    let direct = transposition_normalized(lambda)? - transposition_normalized(&moved)?;
    if closed != direct {
        return Err(Error::Invariant(format!(
            "box move delta {closed} != direct difference {direct} for λ=({lambda}), k={k}, l={l}"
        )));
    }
    Ok(closed)
}

/// Full character table of `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub n: usize,
    /// Irreducibles, in enumeration order starting at `(n)`.
    pub irreps: Vec<Partition>,
    /// Classes, in increasing lexicographic order starting at `(1^n)`.
    pub classes: Vec<Partition>,
    /// `values[i][j] = χ^{irreps[i]}_{classes[j]}`.
    pub values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn irrep_index(&self, lambda: &Partition) -> Option<usize> {
        self.irreps.iter().position(|l| l == lambda)
    }

    pub fn class_index(&self, mu: &Partition) -> Option<usize> {
        self.classes.binary_search(mu).ok()
    }

    /// Header row of class labels, one row per irreducible.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("lambda".to_string())
            .chain(self.classes.iter().map(Partition::label));
        w.write_record(header).expect("in-memory csv");
        for (lambda, row) in self.irreps.iter().zip(&self.values) {
            let record = std::iter::once(lambda.label()).chain(row.iter().map(|v| v.to_string()));
            w.write_record(record).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }
}

pub fn character_table(n: usize, limits: &Limits) -> Result<CharacterTable> {
    limits.check_table("character table", n)?;
    let irreps = enumerate_partitions(n);
    let mut classes = irreps.clone();
    classes.reverse();
    let cache = CharacterCache::global();
    let values = irreps
        .par_iter()
        .map(|lambda| {
            classes
                .iter()
                .map(|mu| cache.compute(lambda, mu))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(CharacterTable {
        n,
        irreps,
        classes,
        values,
    })
}

/// Converts a small exact character value to `i64`.
pub fn to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
