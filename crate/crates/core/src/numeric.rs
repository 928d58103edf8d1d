//! Scalars, numeric modes, ceilings and small combinatorial helpers.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub const ENV_MAX_N_EXACT: &str = "WALK_MAX_N_EXACT";
pub const ENV_MAX_N_TABLE: &str = "WALK_MAX_N_TABLE";

/// Probability scalar: either an exact `BigRational` or a binary64 float.
///
/// Sums go through [`Scalar::Acc`] so that the float mode can use
/// compensated summation while the exact mode just adds.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    type Acc: Default + Clone + Send;
    const EXACT: bool;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;
    fn as_f64(&self) -> f64;
    fn accumulate(acc: &mut Self::Acc, x: &Self);
    fn total(acc: &Self::Acc) -> Self;
    /// `"p/q"` for rationals, 17 significant digits for floats.
    fn format(&self) -> String;
    fn parse(s: &str) -> Result<Self>;

    fn from_int(v: &BigInt) -> Self {
        Self::from_ratio(v, &BigInt::one())
    }

    fn from_u64_ratio(num: u64, den: u64) -> Self {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den))
    }

    fn powu(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        let mut acc = Self::Acc::default();
        for x in items {
            Self::accumulate(&mut acc, x);
        }
        Self::total(&acc)
    }
}

impl Scalar for BigRational {
    type Acc = BigRational;
    const EXACT: bool = true;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn accumulate(acc: &mut Self::Acc, x: &Self) {
        *acc += x;
    }

    fn total(acc: &Self::Acc) -> Self {
        acc.clone()
    }

    fn format(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse(s: &str) -> Result<Self> {
        parse_ratio(s)
    }
}

impl Scalar for f64 {
    type Acc = Neumaier;
    const EXACT: bool = false;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn accumulate(acc: &mut Self::Acc, x: &Self) {
        acc.add(*x);
    }

    fn total(acc: &Self::Acc) -> Self {
        acc.value()
    }

    fn format(&self) -> String {
        format!("{:.16e}", self)
    }

    fn parse(s: &str) -> Result<Self> {
        if s.contains('/') {
            return Ok(parse_ratio(s)?.as_f64());
        }
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::InvalidArgument(format!("bad probability {s:?}: {e}")))
    }
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = |e: &dyn fmt::Display| Error::InvalidArgument(format!("bad rational {s:?}: {e}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|e| bad(&e))?;
            let q: BigInt = q.trim().parse().map_err(|e| bad(&e))?;
            if q.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|e| bad(&e))?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Arithmetic used by the exact engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Float,
    /// Rational when `n <= 8` or `t <= 12`, float otherwise.
    Auto,
}

impl Mode {
    pub fn resolve(self, n: usize, t: usize) -> Mode {
        match self {
            Mode::Auto if n <= 8 || t <= 12 => Mode::Rational,
            Mode::Auto => Mode::Float,
            m => m,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "exact" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::InvalidArgument(format!(
                "unknown mode {s:?} (expected rational, float or auto)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
            Mode::Auto => "auto",
        })
    }
}

/// Size ceilings for the exact engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for the direct class-measure engine.
    pub max_n_exact: usize,
    /// Largest `n` for full character tables (and everything built on them).
    pub max_n_table: usize,
    /// Largest `|λ|` for brute-force tableau counting.
    pub max_n_bruteforce: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n_exact: 40,
            max_n_table: 20,
            max_n_bruteforce: 10,
        }
    }
}

impl Limits {
    /// Defaults overridden by `WALK_MAX_N_EXACT` / `WALK_MAX_N_TABLE`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse().ok());
        if let Some(v) = read(ENV_MAX_N_EXACT) {
            limits.max_n_exact = v;
        }
        if let Some(v) = read(ENV_MAX_N_TABLE) {
            limits.max_n_table = v;
        }
        limits
    }

    pub(crate) fn check_table(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n_table {
            return Err(Error::Ceiling {
                what,
                n,
                ceiling: self.max_n_table,
                env: ENV_MAX_N_TABLE,
            });
        }
        Ok(())
    }

    pub(crate) fn check_exact(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n_exact {
            return Err(Error::Ceiling {
                what,
                n,
                ceiling: self.max_n_exact,
                env: ENV_MAX_N_EXACT,
            });
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut acc = Neumaier::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            acc.add(x);
        }
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn rational_format_round_trips() {
        let q = ratio(-6, 8);
        assert_eq!(q.format(), "-3/4");
        assert_eq!(BigRational::parse("-3/4").unwrap(), q);
        assert_eq!(BigRational::parse("5").unwrap(), ratio(5, 1));
        assert!(BigRational::parse("1/0").is_err());
    }

    #[test]
    fn float_format_has_17_significant_digits() {
        let s = (1.0f64 / 3.0).format();
        assert_eq!(s, "3.3333333333333331e-1");
        assert_eq!(f64::parse(&s).unwrap(), 1.0 / 3.0);
        assert_eq!(f64::parse("1/4").unwrap(), 0.25);
    }

    #[test]
    fn auto_mode_rule() {
        assert_eq!(Mode::Auto.resolve(8, 100), Mode::Rational);
        assert_eq!(Mode::Auto.resolve(20, 12), Mode::Rational);
        assert_eq!(Mode::Auto.resolve(20, 13), Mode::Float);
        assert_eq!(Mode::Float.resolve(4, 0), Mode::Float);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial_f64(10, 4), 210.0);
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
    }

    #[test]
    fn powu_matches_repeated_product() {
        let q = ratio(3, 7);
        assert_eq!(q.powu(5), ratio(243, 16807));
        assert_eq!(2.0f64.powu(10), 1024.0);
        assert_eq!(q.powu(0), BigRational::one());
    }
}
