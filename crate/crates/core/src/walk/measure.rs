use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::numeric::{factorial, Scalar};
use crate::partitions::{enumerate_partitions, Partition};
use crate::{Error, Result};

/// Sign of the coset carrying a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn from_sign(sign: i8) -> Self {
        if sign > 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1`, `-1`, or `None` when mixed.
    pub fn sign(self) -> Option<i8> {
        match self {
            Parity::Even => Some(1),
            Parity::Odd => Some(-1),
            Parity::Mixed => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Mixed => Parity::Mixed,
        }
    }

    pub fn admits(self, class: &Partition) -> bool {
        self.sign().is_none_or(|s| s == class.sign())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "+1",
            Parity::Odd => "-1",
            Parity::Mixed => "mixed",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" => Ok(Parity::Even),
            "-1" => Ok(Parity::Odd),
            "mixed" => Ok(Parity::Mixed),
            _ => Err(Error::InvalidArgument(format!("bad parity {s:?}"))),
        }
    }
}

/// A probability measure on `S_n` that is constant on conjugacy classes,
/// stored as total mass per cycle type. Zero entries are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassMeasure<T> {
    n: usize,
    probs: BTreeMap<Partition, T>,
    parity: Parity,
}

impl<T: Scalar> ClassMeasure<T> {
    /// Builds a measure and tags it with the parity of its support.
    pub fn from_map(n: usize, probs: BTreeMap<Partition, T>) -> Result<Self> {
        let probs: BTreeMap<Partition, T> = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let mut signs = [false; 2];
        for class in probs.keys() {
            if class.size() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: class.size(),
                });
            }
            signs[(class.sign() < 0) as usize] = true;
        }
        let parity = match signs {
            [true, false] => Parity::Even,
            [false, true] => Parity::Odd,
            _ => Parity::Mixed,
        };
        Ok(ClassMeasure { n, probs, parity })
    }

    pub(crate) fn from_parts_unchecked(n: usize, probs: BTreeMap<Partition, T>, parity: Parity) -> Self {
        ClassMeasure { n, probs, parity }
    }

    pub fn point_mass(class: Partition) -> Self {
        let n = class.size();
        let parity = Parity::from_sign(class.sign());
        ClassMeasure {
            n,
            probs: BTreeMap::from([(class, T::one())]),
            parity,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn probs(&self) -> &BTreeMap<Partition, T> {
        &self.probs
    }

    pub fn prob(&self, class: &Partition) -> T {
        self.probs.get(class).cloned().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        T::sum(self.probs.values())
    }

    /// Checks total mass, non-negativity and the parity tag.
    pub fn validate(&self) -> Result<()> {
        let total = self.total();
        let ok = if T::EXACT {
            total == T::one()
        } else {
            (total.as_f64() - 1.0).abs() <= 1e-12
        };
        if !ok {
            return Err(Error::Invariant(format!("class measure has total mass {}", total.format())));
        }
        for (class, p) in &self.probs {
            if p.is_negative() && (T::EXACT || p.as_f64() < -1e-12) {
                return Err(Error::Invariant(format!("negative mass {} on ({class})", p.format())));
            }
            if !self.parity.admits(class) {
                return Err(Error::Invariant(format!(
                    "class ({class}) outside the {} coset",
                    self.parity
                )));
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> ClassMeasure<f64> {
        ClassMeasure {
            n: self.n,
            probs: self.probs.iter().map(|(c, p)| (c.clone(), p.as_f64())).collect(),
            parity: self.parity,
        }
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .probs
            .iter()
            .map(|(c, p)| json!({"type": c.label(), "prob": p.format()}))
            .collect();
        json!({"n": self.n, "parity": self.parity.to_string(), "classes": classes})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("class measure json: {what}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let parity: Parity = v["parity"].as_str().ok_or_else(|| bad("missing parity"))?.parse()?;
        let mut probs = BTreeMap::new();
        for entry in v["classes"].as_array().ok_or_else(|| bad("missing classes"))? {
            let class: Partition = entry["type"].as_str().ok_or_else(|| bad("missing type"))?.parse()?;
            let p = T::parse(entry["prob"].as_str().ok_or_else(|| bad("missing prob"))?)?;
            probs.insert(class, p);
        }
        let m = Self::from_map(n, probs)?;
        if m.parity != parity && !(parity == Parity::Mixed || m.probs.is_empty()) {
            return Err(bad("parity tag does not match support"));
        }
        Ok(ClassMeasure { parity, ..m })
    }
}

fn check_cycle(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidCycle { n, k });
    }
    Ok(())
}

/// Point mass on the `(n-k)`-cycle class `(n-k, 1^k)`.
pub fn initial_measure<T: Scalar>(n: usize, k: usize) -> Result<ClassMeasure<T>> {
    check_cycle(n, k)?;
    Ok(ClassMeasure::point_mass(Partition::cycle_type(n, k)))
}

/// Uniform measure on the even or odd coset (or all of `S_n` when mixed).
pub fn coset_measure<T: Scalar>(n: usize, parity: Parity) -> ClassMeasure<T> {
    let order = BigInt::from(factorial(n));
    let scale = if parity == Parity::Mixed || n < 2 {
        BigInt::from(1)
    } else {
        BigInt::from(2)
    };
    let probs = enumerate_partitions(n)
        .into_iter()
        .filter(|c| n < 2 || parity.admits(c))
        .map(|c| {
            let p = T::from_ratio(&(&scale * BigInt::from(c.class_size())), &order);
            (c, p)
        })
        .collect();
    ClassMeasure::from_parts_unchecked(n, probs, parity)
}

pub fn uniform_measure<T: Scalar>(n: usize) -> ClassMeasure<T> {
    coset_measure(n, Parity::Mixed)
}

/// Uniform law on the coset reached after `total_steps` steps (the initial
/// cycle counts as one): even iff `total_steps ≡ n - k (mod 2)`.
pub fn stationary_measure<T: Scalar>(n: usize, total_steps: usize, k: usize) -> Result<ClassMeasure<T>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("stationary measure needs n >= 3, got {n}")));
    }
    if k > n {
        return Err(Error::InvalidCycle { n, k });
    }
    let parity = if total_steps % 2 == (n - k) % 2 {
        Parity::Even
    } else {
        Parity::Odd
    };
    Ok(coset_measure(n, parity))
}

/// `½ Σ_c |a(c) - b(c)|`.
pub fn tv<T: Scalar>(a: &ClassMeasure<T>, b: &ClassMeasure<T>) -> Result<T> {
    if a.n != b.n {
        return Err(Error::SizeMismatch { left: a.n, right: b.n });
    }
    let mut acc = T::Acc::default();
    for (c, p) in &a.probs {
        T::accumulate(&mut acc, &(p.clone() - b.prob(c)).abs());
    }
    for (c, q) in &b.probs {
        if !a.probs.contains_key(c) {
            T::accumulate(&mut acc, &q.abs());
        }
    }
    Ok(T::total(&acc) / (T::one() + T::one()))
}

/// Law of the number of fixed points.
pub fn fixed_point_pmf<T: Scalar>(m: &ClassMeasure<T>) -> BTreeMap<usize, T> {
    let mut acc: BTreeMap<usize, T::Acc> = BTreeMap::new();
    for (c, p) in &m.probs {
        T::accumulate(acc.entry(c.fixed_points()).or_default(), p);
    }
    acc.iter().map(|(&j, a)| (j, T::total(a))).collect()
}

/// `E[χ_ρ^r]` where `χ_ρ` counts fixed points.
pub fn fixed_point_moment<T: Scalar>(m: &ClassMeasure<T>, r: u32) -> T {
    let terms: Vec<T> = fixed_point_pmf(m)
        .into_iter()
        .map(|(j, p)| T::from_int(&BigInt::from(j).pow(r)) * p)
        .collect();
    T::sum(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    type Q = num_rational::BigRational;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn initial_examples() {
        let m = initial_measure::<Q>(4, 1).unwrap();
        assert_eq!(m.prob(&p("3,1")), ratio(1, 1));
        assert_eq!(m.parity(), Parity::Even);
        assert_eq!(initial_measure::<Q>(5, 0).unwrap().parity(), Parity::Even);
        let m = initial_measure::<Q>(6, 2).unwrap();
        assert_eq!(m.parity(), Parity::Odd);
        assert_eq!(m.prob(&p("4,1,1")), ratio(1, 1));
        assert_eq!(initial_measure::<Q>(4, 3).unwrap().prob(&p("1,1,1,1")), ratio(1, 1));
        assert!(initial_measure::<Q>(4, 4).is_err());
    }

    #[test]
    fn stationary_examples() {
        let even = stationary_measure::<Q>(4, 1, 1).unwrap();
        assert_eq!(even.parity(), Parity::Even);
        assert_eq!(even.prob(&p("1,1,1,1")), ratio(1, 12));
        assert_eq!(even.prob(&p("2,2")), ratio(3, 12));
        assert_eq!(even.prob(&p("3,1")), ratio(8, 12));
        assert_eq!(even.probs().len(), 3);
        let odd = stationary_measure::<Q>(4, 2, 1).unwrap();
        assert_eq!(odd.prob(&p("2,1,1")), ratio(1, 2));
        assert_eq!(odd.prob(&p("4")), ratio(1, 2));
        for n in 3..=9 {
            for t in 0..3 {
                let m = stationary_measure::<Q>(n, t, 1).unwrap();
                m.validate().unwrap();
            }
        }
        uniform_measure::<Q>(6).validate().unwrap();
        assert!(stationary_measure::<Q>(2, 0, 0).is_err());
    }

    #[test]
    fn tv_examples() {
        let a = initial_measure::<Q>(4, 1).unwrap();
        let u = stationary_measure::<Q>(4, 1, 1).unwrap();
        assert_eq!(tv(&a, &a).unwrap(), ratio(0, 1));
        assert_eq!(tv(&a, &u).unwrap(), ratio(1, 3));
        assert_eq!(tv(&u, &a).unwrap(), ratio(1, 3));
        let f = tv(&a.to_f64(), &u.to_f64()).unwrap();
        assert!((f - 1.0 / 3.0).abs() < 1e-15);
        let other = initial_measure::<Q>(5, 1).unwrap();
        assert!(matches!(tv(&a, &other), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn pmf_and_moments() {
        let m = initial_measure::<Q>(7, 3).unwrap();
        assert_eq!(fixed_point_pmf(&m), BTreeMap::from([(3, ratio(1, 1))]));
        let even = stationary_measure::<Q>(4, 1, 1).unwrap();
        let pmf = fixed_point_pmf(&even);
        assert_eq!(
            pmf,
            BTreeMap::from([(0, ratio(3, 12)), (1, ratio(8, 12)), (4, ratio(1, 12))])
        );
        let u = uniform_measure::<Q>(4);
        assert_eq!(fixed_point_moment(&u, 3), ratio(5, 1));
        assert_eq!(fixed_point_moment(&u, 0), ratio(1, 1));
        assert_eq!(fixed_point_moment(&even, 3), ratio(6, 1));
        let odd = stationary_measure::<Q>(4, 0, 1).unwrap();
        assert_eq!(fixed_point_moment(&odd, 3), ratio(4, 1));
    }

    #[test]
    fn json_round_trip() {
        let u = stationary_measure::<Q>(5, 1, 2).unwrap();
        let v = u.to_json();
        assert_eq!(v["parity"], "+1");
        assert_eq!(v["classes"][0]["type"], "1,1,1,1,1");
        assert_eq!(v["classes"][0]["prob"], "1/60");
        assert_eq!(ClassMeasure::<Q>::from_json(&v).unwrap(), u);
        let f = u.to_f64();
        let back = ClassMeasure::<f64>::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn validation_catches_bad_measures() {
        let mut probs = BTreeMap::new();
        probs.insert(p("3,1"), ratio(1, 2));
        let m = ClassMeasure::from_map(4, probs.clone()).unwrap();
        assert!(matches!(m.validate(), Err(Error::Invariant(_))));
        probs.insert(p("2,2"), ratio(1, 2));
        let m = ClassMeasure::from_map(4, probs.clone()).unwrap();
        assert_eq!(m.parity(), Parity::Even);
        m.validate().unwrap();
        probs.insert(p("4"), ratio(0, 1));
        assert_eq!(ClassMeasure::from_map(4, probs.clone()).unwrap().parity(), Parity::Even);
        probs.insert(p("4"), ratio(1, 2));
        assert_eq!(ClassMeasure::from_map(4, probs).unwrap().parity(), Parity::Mixed);
        let mut wrong = BTreeMap::new();
        wrong.insert(p("3,1"), ratio(1, 1));
        assert!(ClassMeasure::from_map(5, wrong).is_err());
    }
}
