//! Integer partitions and Young diagrams.
//!
//! A [`Partition`] indexes both the irreducible representations of `S_n`
//! and its conjugacy classes (cycle types). Parts are stored as a
//! non-increasing list; any index past the last row reads as `0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{factorial, Limits};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Validating constructor: parts must be positive and non-increasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    /// Cycle type `(n-k, 1^k)` of an `(n-k)`-cycle in `S_n`.
    pub fn cycle_type(n: usize, k: usize) -> Self {
        assert!(k <= n, "cycle_type: k={k} > n={n}");
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat(1).take(k));
        Self::from_unsorted(parts)
    }

    /// Cycle type `(2, 1^{n-2})` of a transposition.
    pub fn transposition(n: usize) -> Self {
        Self::cycle_type(n, n - 2)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row `i` (0-indexed); `0` past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of parts equal to 1; the fixed points of a permutation with
    /// this cycle type.
    pub fn fixed_points(&self) -> usize {
        self.parts.iter().rev().take_while(|&&p| p == 1).count()
    }

    /// Sign of a permutation with this cycle type: `(-1)^(n - #parts)`.
    pub fn sign(&self) -> i8 {
        if (self.size - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Size of the conjugacy class: `n! / Π ℓ^{m_ℓ} m_ℓ!`.
    pub fn class_size(&self) -> BigUint {
        let mut denom = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let len = self.parts[i];
            let mut mult = 0;
            while i < self.parts.len() && self.parts[i] == len {
                mult += 1;
                i += 1;
            }
            denom *= BigUint::from(len).pow(mult as u32) * factorial(mult);
        }
        factorial(self.size) / denom
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Comma-joined parts, e.g. `"6,4,2,1,1"`; the empty partition is `""`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Column lengths of the diagram.
pub fn conjugate(lambda: &Partition) -> Partition {
    let cols = lambda.part(0);
    let parts = (0..cols)
        .map(|j| lambda.parts.iter().take_while(|&&p| p > j).count())
        .collect();
    Partition::from_sorted(parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    Dominates,
    Dominated,
    Incomparable,
}

/// Compares prefix sums of `lambda` and `xi`.
pub fn dominance(lambda: &Partition, xi: &Partition) -> Result<Dominance> {
    if lambda.size() != xi.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: xi.size(),
        });
    }
    let rows = lambda.len().max(xi.len());
    let (mut a, mut b) = (0, 0);
    let (mut ge, mut le) = (true, true);
    for i in 0..rows {
        a += lambda.part(i);
        b += xi.part(i);
        ge &= a >= b;
        le &= a <= b;
    }
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::Dominated,
        (false, false) => Dominance::Incomparable,
    })
}

/// Hook length `arm + leg + 1` of every cell, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let conj = conjugate(lambda);
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &row)| (0..row).map(|j| (row - j - 1) + (conj.part(j) - i - 1) + 1).collect())
        .collect()
}

/// `d_λ` by the hook-length formula.
pub fn dimension(lambda: &Partition) -> BigUint {
    let hooks: BigUint = hook_lengths(lambda)
        .iter()
        .flatten()
        .fold(BigUint::one(), |acc, &h| acc * h);
    factorial(lambda.size()) / hooks
}

/// Counts standard fillings of `lambda` by exhaustive search.
///
/// Independent of [`dimension`]; used to check it.
pub fn syt_count_bruteforce(lambda: &Partition, limits: &Limits) -> Result<u64> {
    if lambda.size() > limits.max_n_bruteforce {
        return Err(Error::Ceiling {
            what: "brute-force tableau count",
            n: lambda.size(),
            ceiling: limits.max_n_bruteforce,
            env: "Limits::max_n_bruteforce",
        });
    }
    // filled[i] = number of cells of row i already holding a label
    fn place(shape: &[usize], filled: &mut [usize], left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut count = 0;
        for i in 0..shape.len() {
            let j = filled[i];
            let fits_row = j < shape[i];
            let fits_col = i == 0 || filled[i - 1] > j;
            if fits_row && fits_col {
                filled[i] += 1;
                count += place(shape, filled, left - 1);
                filled[i] -= 1;
            }
        }
        count
    }
    let mut filled = vec![0; lambda.len()];
    Ok(place(lambda.parts(), &mut filled, lambda.size()))
}

/// Drops the first `r` rows.
pub fn strip_rows(lambda: &Partition, r: usize) -> Partition {
    Partition::from_sorted(lambda.parts.iter().skip(r).copied().collect())
}

/// Result of removing one rim hook (border strip) from a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimHookRemoval {
    pub residue: Partition,
    pub rows_spanned: usize,
    /// `(-1)^(rows_spanned - 1)`.
    pub sign: i8,
}

/// Every way to remove an `m`-cell rim hook from `lambda`.
///
/// Each cell with hook length `m` determines one removal: the strip running
/// along the rim from the end of that cell's row down to the bottom of its
/// column.
pub fn rim_hook_removals(lambda: &Partition, m: usize) -> Vec<RimHookRemoval> {
    if m == 0 || m > lambda.size() {
        return Vec::new();
    }
    let conj = conjugate(lambda);
    let mut out = Vec::new();
    for (r, &row) in lambda.parts.iter().enumerate() {
        // hooks decrease along a row; skip rows whose first hook is too short
        if row + conj.part(0) - r - 1 < m {
            continue;
        }
        for c in 0..row {
            let arm = row - c - 1;
            let leg = conj.part(c) - r - 1;
            if arm + leg + 1 != m {
                continue;
            }
            let mut parts = lambda.parts.clone();
            for i in r..r + leg {
                parts[i] = lambda.parts[i + 1] - 1;
            }
            parts[r + leg] = c;
            parts.retain(|&p| p > 0);
            out.push(RimHookRemoval {
                residue: Partition::from_sorted(parts),
                rows_spanned: leg + 1,
                sign: if leg % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    out
}

/// A diagram obtained by adding an `m`-cell rim hook, with the sign the
/// hook carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimHookAttachment {
    pub shape: Partition,
    /// Row (0-indexed) of the hook's lowest cell.
    pub lowest_row: usize,
    pub rows_spanned: usize,
    pub sign: i8,
}

/// All diagrams `λ` with `|λ| = |ξ| + m` from which an `m`-rim hook can be
/// removed leaving `xi`, ordered by the row of the hook's lowest cell.
///
/// Works on the beta-set (first-column hook lengths) of `xi`: adding an
/// `m`-hook moves one bead from `b` to the empty position `b + m`.
pub fn rim_hook_attachments_detailed(xi: &Partition, m: usize) -> Vec<RimHookAttachment> {
    if m == 0 {
        return Vec::new();
    }
    let beads = xi.len() + m;
    let beta: Vec<usize> = (0..beads).map(|i| xi.part(i) + beads - 1 - i).collect();
    let mut occupied = vec![false; beta[0] + m + 1];
    for &b in &beta {
        occupied[b] = true;
    }
    let mut out = Vec::new();
    for (row, &b) in beta.iter().enumerate() {
        if occupied[b + m] {
            continue;
        }
        let jumped = beta[..row].iter().filter(|&&x| x > b && x < b + m).count();
        let mut moved = beta.clone();
        moved[row] = b + m;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (beads - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        out.push(RimHookAttachment {
            shape: Partition::from_sorted(parts),
            lowest_row: row,
            rows_spanned: jumped + 1,
            sign: if jumped % 2 == 0 { 1 } else { -1 },
        });
    }
    out
}

pub fn rim_hook_attachments(xi: &Partition, m: usize) -> Vec<Partition> {
    rim_hook_attachments_detailed(xi, m)
        .into_iter()
        .map(|a| a.shape)
        .collect()
}
