use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::mn_character;
use crate::numeric::{binomial, factorial, Limits};
use crate::partitions::{dimension, enumerate_partitions, strip_rows, Partition};
use crate::{Error, Result};

/// Stirling number of the second kind `{r brace i}`.
pub fn stirling2(r: usize, i: usize) -> BigUint {
    if i > r {
        return BigUint::zero();
    }
    // row-by-row recurrence S(m, j) = j S(m-1, j) + S(m-1, j-1)
    let mut row = vec![BigUint::one()];
    for m in 1..=r {
        let mut next = vec![BigUint::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m { &row[j] * j } else { BigUint::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row[i].clone()
}

/// Row `r` of the Stirling triangle, indices `0..=r`.
pub fn stirling2_row(r: usize) -> Vec<BigUint> {
    (0..=r).map(|i| stirling2(r, i)).collect()
}

pub fn bell(r: usize) -> BigUint {
    stirling2_row(r).into_iter().sum()
}

/// `Σ_{i ≤ n} {r brace i}`: the `r`-th moment of the fixed-point count of a
/// uniform permutation of `n` points.
pub fn truncated_bell(r: usize, n: usize) -> BigUint {
    stirling2_row(r).into_iter().take(n + 1).sum()
}

/// Largest `r` for which [`tensor_coeff`] accepts `λ`.
pub fn tensor_coeff_max_r(lambda: &Partition) -> usize {
    lambda.size() - lambda.part(1)
}

/// Multiplicity of `S^λ` in the `r`-th tensor power of the defining
/// representation, `d_{λ̄} Σ_{i=|λ̄|}^r C(i, |λ̄|) {r brace i}`, valid for
/// `1 <= r <= n - λ_2`.
pub fn tensor_coeff(lambda: &Partition, r: usize) -> Result<BigUint> {
    let max = tensor_coeff_max_r(lambda);
    if r == 0 || r > max {
        return Err(Error::OutOfRange {
            lambda: lambda.to_string(),
            r,
            max,
        });
    }
    let bar = strip_rows(lambda, 1);
    let b = bar.size();
    let sum: BigUint = (b..=r).map(|i| binomial(i, b) * stirling2(r, i)).sum();
    Ok(dimension(&bar) * sum)
}

/// `⟨χ_ρ^r, χ^λ⟩ = (1/n!) Σ_c |c| fp(c)^r χ^λ_c` by summing over classes.
pub fn tensor_multiplicity_bruteforce(lambda: &Partition, r: u32, limits: &Limits) -> Result<BigUint> {
    let n = lambda.size();
    limits.check_table("tensor multiplicity by class sum", n)?;
    let mut total = BigInt::zero();
    for class in enumerate_partitions(n) {
        let chi = mn_character(lambda, &class)?;
        total += BigInt::from(class.class_size()) * BigInt::from(class.fixed_points()).pow(r) * chi;
    }
    let (q, rem) = (&total / BigInt::from(factorial(n)), &total % BigInt::from(factorial(n)));
    if !rem.is_zero() || q.sign() == num_bigint::Sign::Minus {
        return Err(Error::Invariant(format!("non-integral multiplicity for ({lambda}), r={r}")));
    }
    Ok(q.magnitude().clone())
}

/// `(Σ_{λ ⊢ n, λ_1 = first} d_λ², C(n, first)² (n - first)!)`.
pub fn dim_sum_bound(n: usize, first: usize) -> Result<(BigUint, BigUint)> {
    if first == 0 || first > n {
        return Err(Error::InvalidArgument(format!("need 1 <= λ_1 <= n, got λ_1={first}, n={n}")));
    }
    let lhs = enumerate_partitions(n)
        .iter()
        .filter(|l| l.part(0) == first)
        .map(|l| {
            let d = dimension(l);
            &d * &d
        })
        .sum();
    let c = binomial(n, first);
    Ok((lhs, &c * &c * factorial(n - first)))
}

/// `Σ_{k=0}^n (-1)^{n-k} C(n,k) k^m`, which vanishes for `n > m`.
pub fn alternating_power_sum(n: usize, m: u32) -> BigInt {
    (0..=n)
        .map(|k| {
            let term = BigInt::from(binomial(n, k)) * BigInt::from(k).pow(m);
            if (n - k) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Both sides of `Σ_{k=0}^n C(n,k)(-x)^{k+2}/(k+2) =
/// ((1-x)^{n+2} - 1)/(n+2) - ((1-x)^{n+1} - 1)/(n+1)`.
pub fn integral_identity(n: usize, x: f64) -> (f64, f64) {
    let lhs = (0..=n)
        .map(|k| crate::numeric::binomial_f64(n, k) * (-x).powi(k as i32 + 2) / (k as f64 + 2.0))
        .sum();
    let y = 1.0 - x;
    let rhs = (y.powi(n as i32 + 2) - 1.0) / (n as f64 + 2.0) - (y.powi(n as i32 + 1) - 1.0) / (n as f64 + 1.0);
    (lhs, rhs)
}

/// The same identity over the rationals.
pub fn integral_identity_exact(n: usize, x: &BigRational) -> (BigRational, BigRational) {
    let pow = |b: &BigRational, e: usize| -> BigRational {
        (0..e).fold(BigRational::one(), |acc, _| acc * b)
    };
    let neg = -x.clone();
    let lhs = (0..=n)
        .map(|k| {
            BigRational::from_integer(BigInt::from(binomial(n, k))) * pow(&neg, k + 2)
                / BigRational::from_integer(BigInt::from(k + 2))
        })
        .fold(BigRational::zero(), |a, b| a + b);
    let y = BigRational::one() - x;
    let one = BigRational::one();
    let rhs = (pow(&y, n + 2) - &one) / BigRational::from_integer(BigInt::from(n + 2))
        - (pow(&y, n + 1) - &one) / BigRational::from_integer(BigInt::from(n + 1));
    (lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub power_sum_cases: usize,
    pub power_sum_failures: Vec<(usize, u32)>,
    pub integral_cases: usize,
    pub integral_max_error: f64,
    pub passed: bool,
}

/// Checks the alternating power-sum identity for all `m < n <= max_n`
/// exactly and the integral identity for `n <= max_n` at each `x` to 1e-10.
pub fn stirling_identity_checks(max_n: usize, xs: &[f64]) -> IdentityReport {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        for m in 0..n as u32 {
            cases += 1;
            if !alternating_power_sum(n, m).is_zero() {
                failures.push((n, m));
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut integral_cases = 0;
    for n in 0..=max_n {
        for &x in xs {
            let (l, r) = integral_identity(n, x);
            worst = worst.max((l - r).abs());
            integral_cases += 1;
        }
    }
    IdentityReport {
        passed: failures.is_empty() && worst <= 1e-10,
        power_sum_cases: cases,
        power_sum_failures: failures,
        integral_cases,
        integral_max_error: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Set partitions of `{0..r}` into exactly `i` blocks, by brute force.
    fn set_partition_count(r: usize, i: usize) -> u64 {
        fn go(x: usize, r: usize, blocks: usize, i: usize) -> u64 {
            if x == r {
                return (blocks == i) as u64;
            }
            let mut total = blocks as u64 * go(x + 1, r, blocks, i);
            if blocks < i {
                total += go(x + 1, r, blocks + 1, i);
            }
            total
        }
        go(0, r, 0, i)
    }

    #[test]
    fn stirling_and_bell() {
        assert_eq!(stirling2(4, 2), big(7));
        assert_eq!(stirling2(0, 0), big(1));
        assert_eq!(stirling2(3, 0), big(0));
        assert_eq!(stirling2(2, 5), big(0));
        assert_eq!(bell(0), big(1));
        assert_eq!(bell(3), big(5));
        assert_eq!(bell(10), big(115_975));
        for r in 0..=9 {
            for i in 0..=r {
                assert_eq!(stirling2(r, i), big(set_partition_count(r, i)));
            }
        }
        assert_eq!(truncated_bell(5, 3), big(1 + 15 + 25));
        assert_eq!(truncated_bell(5, 9), bell(5));
    }

    #[test]
    fn tensor_coeff_examples() {
        for n in 6..=20 {
            let row = Partition::row(n);
            for r in 1..=6 {
                assert_eq!(tensor_coeff(&row, r).unwrap(), bell(r));
            }
            let f = |parts: Vec<usize>, r| tensor_coeff(&Partition::from_unsorted(parts), r).unwrap();
            assert_eq!(f(vec![n - 1, 1], 2), big(3));
            assert_eq!(f(vec![n - 2, 2], 2), big(1));
            assert_eq!(f(vec![n - 2, 1, 1], 2), big(1));
            assert_eq!(f(vec![n - 1, 1], 3), big(10));
            assert_eq!(f(vec![n - 2, 2], 3), big(6));
            assert_eq!(f(vec![n - 2, 1, 1], 3), big(6));
            assert_eq!(f(vec![n - 3, 3], 3), big(1));
            assert_eq!(f(vec![n - 3, 1, 1, 1], 3), big(1));
            assert_eq!(f(vec![n - 3, 2, 1], 3), big(2));
        }
    }

    #[test]
    fn tensor_coeff_range_is_enforced() {
        let err = tensor_coeff(&p("3,3"), 4).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRange {
                lambda: "3,3".into(),
                r: 4,
                max: 3
            }
        );
        assert!(err.to_string().contains('3'));
        assert!(tensor_coeff(&p("4"), 0).is_err());
        assert!(tensor_coeff(&p("4"), 4).is_ok());
    }

    #[test]
    fn tensor_coeff_matches_class_sums() {
        let limits = Limits::default();
        for n in 5..=7 {
            for l in enumerate_partitions(n) {
                for r in 1..=3u32 {
                    let brute = tensor_multiplicity_bruteforce(&l, r, &limits).unwrap();
                    match tensor_coeff(&l, r as usize) {
                        Ok(a) => assert_eq!(a, brute, "λ={l:?} r={r}"),
                        Err(_) => assert!(r as usize > tensor_coeff_max_r(&l)),
                    }
                }
            }
        }
        // inside the range the formula holds for larger r as well
        for n in 4..=8 {
            for l in enumerate_partitions(n) {
                for r in 1..=tensor_coeff_max_r(&l).min(6) {
                    let brute = tensor_multiplicity_bruteforce(&l, r as u32, &limits).unwrap();
                    assert_eq!(tensor_coeff(&l, r).unwrap(), brute, "λ={l:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn dim_sum_examples() {
        for n in 1..=12 {
            let (l, r) = dim_sum_bound(n, n).unwrap();
            assert_eq!((l, r), (big(1), big(1)));
            for first in 1..=n {
                let (l, r) = dim_sum_bound(n, first).unwrap();
                assert!(l <= r, "n={n} λ_1={first}");
            }
        }
        let (l, r) = dim_sum_bound(6, 3).unwrap();
        assert_eq!(r, big(2400));
        assert!(l <= r);
        assert!(dim_sum_bound(4, 0).is_err());
        assert!(dim_sum_bound(4, 5).is_err());
    }

    #[test]
    fn identities() {
        assert_eq!(alternating_power_sum(3, 2), BigInt::zero());
        assert_eq!(alternating_power_sum(3, 3), BigInt::from(6));
        let (l, r) = integral_identity(4, 0.0);
        assert_eq!((l, r), (0.0, 0.0));
        let (l, r) = integral_identity_exact(2, &ratio(1, 1));
        assert_eq!(l, ratio(1, 12));
        assert_eq!(r, ratio(1, 12));
        for n in 0..=12 {
            for x in [ratio(-2, 1), ratio(3, 10), ratio(1, 1), ratio(17, 10)] {
                let (l, r) = integral_identity_exact(n, &x);
                assert_eq!(l, r);
            }
        }
        let report = stirling_identity_checks(12, &[-2.0, 0.3, 1.0, 1.7]);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.power_sum_cases, 78);
    }
}
