use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::characters::{character_table, transposition_normalized};
use crate::numeric::{factorial, Limits, Scalar};
use crate::partitions::Partition;
use crate::{Error, Result};

use super::measure::{ClassMeasure, Parity};
use super::WalkSpec;

const FLOAT_ZERO: f64 = 1e-12;

/// Inverse Fourier transform of the walk's class measure:
/// `μ(c) = |c|/n! · Σ_λ χ^λ_c · χ^λ_{(n-k,1^k)} · r(λ)^t`.
pub struct FourierEngine<T: Scalar> {
    n: usize,
    k: usize,
    classes: Vec<Partition>,
    /// `|c| / n!` per class.
    weights: Vec<T>,
    /// `values[λ][c]`.
    values: Vec<Vec<T>>,
    cycle: Vec<T>,
    r: Vec<T>,
}

impl<T: Scalar> FourierEngine<T> {
    pub fn new(n: usize, k: usize, limits: &Limits) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidCycle { n, k });
        }
        let table = character_table(n, limits)?;
        let order = BigInt::from(factorial(n));
        let weights = table
            .classes
            .iter()
            .map(|c| T::from_ratio(&BigInt::from(c.class_size()), &order))
            .collect();
        let cyc = table
            .class_index(&Partition::cycle_type(n, k))
            .expect("cycle class is in the table");
        let cycle = table.values.iter().map(|row| T::from_int(&row[cyc])).collect();
        let values = table
            .values
            .iter()
            .map(|row| row.iter().map(T::from_int).collect())
            .collect();
        let r = table
            .irreps
            .iter()
            .map(|l| {
                let q = transposition_normalized(l)?;
                Ok(T::from_ratio(q.numer(), q.denom()))
            })
            .collect::<Result<_>>()?;
        Ok(FourierEngine {
            n,
            k,
            classes: table.classes,
            weights,
            values,
            cycle,
            r,
        })
    }

    /// The measure after the cycle and `t` transpositions.
    pub fn measure_at(&self, t: usize) -> Result<ClassMeasure<T>> {
        let coef: Vec<T> = self
            .cycle
            .iter()
            .zip(&self.r)
            .map(|(x, r)| x.clone() * r.powu(t))
            .collect();
        let start_sign = Partition::cycle_type(self.n, self.k).sign();
        let parity = Parity::from_sign(if t % 2 == 0 { start_sign } else { -start_sign });
        let mut probs = BTreeMap::new();
        for (j, class) in self.classes.iter().enumerate() {
            let mut acc = T::Acc::default();
            for (row, a) in self.values.iter().zip(&coef) {
                T::accumulate(&mut acc, &(row[j].clone() * a.clone()));
            }
            let p = T::total(&acc) * self.weights[j].clone();
            if p.is_zero() {
                continue;
            }
            let tiny = !T::EXACT && p.as_f64().abs() <= FLOAT_ZERO;
            if !parity.admits(class) {
                if tiny {
                    continue;
                }
                return Err(Error::Invariant(format!(
                    "mass {} on ({class}) outside the {parity} coset at t={t}",
                    p.format()
                )));
            }
            if p.is_negative() {
                if tiny {
                    continue;
                }
                return Err(Error::Invariant(format!(
                    "negative mass {} on ({class}) at t={t}",
                    p.format()
                )));
            }
            probs.insert(class.clone(), p);
        }
        Ok(ClassMeasure::from_parts_unchecked(self.n, probs, parity))
    }
}

pub fn evolve_fourier<T: Scalar>(spec: &WalkSpec, limits: &Limits) -> Result<ClassMeasure<T>> {
    FourierEngine::<T>::new(spec.n, spec.k, limits)?.measure_at(spec.t)
}
