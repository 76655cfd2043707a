//! Exact arithmetic functions: Bernoulli numbers, `ζ` at negative integers,
//! divisor sums, the Möbius function and square-divisor enumeration.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::ExactRational;

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factors `m` by trial division.
///
/// Intended for `m ≤ 10⁷`; larger inputs are still handled correctly but the
/// running time grows like `√m`.
///
/// Panics if `m == 0`.
pub fn factorize(m: u64) -> Factorization {
    assert!(m >= 1, "factorize: m must be positive");
    let mut rest = m;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { factors }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for j in 1..n {
        row[j] = &row[j - 1] * BigInt::from(n + 1 - j) / BigInt::from(j);
    }
    row
}

/// Bernoulli numbers `B_0, …, B_n` with `B_1 = -1/2`, from the recurrence
/// `Σ_{j ≤ n} C(n+1, j) B_j = 0`.
pub fn bernoulli_table(n: usize) -> Vec<ExactRational> {
    let mut table: Vec<ExactRational> = Vec::with_capacity(n + 1);
    table.push(ExactRational::one());
    for i in 1..=n {
        if i >= 3 && i % 2 == 1 {
            table.push(ExactRational::zero());
            continue;
        }
        let binom = binomial_row(i + 1);
        let sum = table
            .iter()
            .enumerate()
            .fold(ExactRational::zero(), |acc, (j, b)| {
                acc + b * ExactRational::from_integer(binom[j].clone())
            });
        table.push(-sum / ExactRational::from_integer(BigInt::from(i + 1)));
    }
    table
}

/// The `n`-th Bernoulli number, `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> ExactRational {
    if n >= 3 && n % 2 == 1 {
        return ExactRational::zero();
    }
    bernoulli_table(n).pop().expect("table has n + 1 entries")
}

/// `ζ(-s) = -B_{s+1} / (s+1)` for `s ≥ 1`.
pub fn zeta_negative(s: u32) -> ExactRational {
    assert!(s >= 1, "zeta_negative: s must be positive");
    let k = s as usize + 1;
    -bernoulli(k) / ExactRational::from_integer(BigInt::from(k))
}

/// Divisor power sum `σ_s(m) = Σ_{d | m} d^s`.
///
/// Panics if `m == 0`.
pub fn sigma(s: u32, m: u64) -> ExactRational {
    ExactRational::from_integer(sigma_int(s, m))
}

pub(crate) fn sigma_int(s: u32, m: u64) -> BigInt {
    factorize(m)
        .factors()
        .iter()
        .map(|&(p, e)| {
            // 1 + p^s + p^{2s} + … + p^{es}
            let ps: BigInt = Pow::pow(BigInt::from(p), s);
            let mut term = BigInt::one();
            let mut acc = BigInt::one();
            for _ in 0..e {
                term *= &ps;
                acc += &term;
            }
            acc
        })
        .product()
}

/// Möbius function of `t ≥ 1`.
pub fn moebius(t: u64) -> i8 {
    let f = factorize(t);
    if !f.is_squarefree() {
        0
    } else if f.factors().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `t ≥ 1` with `t² | m`, ascending.
pub fn square_divisors(m: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factorize(m).factors() {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e / 2 {
            pk *= p;
            out.extend(base.iter().map(|t| t * pk));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    // Akiyama–Tanigawa produces B_n with B_1 = +1/2; independent of the recurrence.
    fn akiyama_tanigawa(n: usize) -> ExactRational {
        let mut a: Vec<ExactRational> = Vec::new();
        for m in 0..=n {
            a.push(ratio(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = rat(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        if n == 1 {
            -a[0].clone()
        } else {
            a[0].clone()
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(6), ratio(1, 42));
        for n in 0..40 {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_negative(2), rat(0));
        assert_eq!(zeta_negative(1), ratio(-1, 12));
        assert_eq!(zeta_negative(5), ratio(-1, 252));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(5, 1), rat(1));
        assert_eq!(sigma(1, 6), rat(12));
        assert_eq!(sigma(5, 2), rat(33));
        assert_eq!(sigma(0, 12), rat(6));
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(6), 1);
    }

    #[test]
    fn square_divisor_values() {
        assert_eq!(square_divisors(1), [1]);
        assert_eq!(square_divisors(12), [1, 2]);
        assert_eq!(square_divisors(36), [1, 2, 3, 6]);
    }

    #[test]
    fn factorize_values() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).factors(), &[(97, 1)]);
        assert_eq!(factorize(9_999_991).value(), 9_999_991);
    }
}
