//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own arithmetic or LP code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `Σ_{d | m} d^s` by scanning every candidate divisor.
pub fn sigma_brute(s: u32, m: u64) -> BigInt {
    (1..=m)
        .filter(|d| m % d == 0)
        .map(|d| num_traits::pow(BigInt::from(d), s as usize))
        .sum()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn moebius_brute(t: u64) -> i64 {
    let mut n = t;
    let mut sign = 1;
    for p in 2..=t {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        if n == 1 {
            break;
        }
    }
    sign
}

/// Bernoulli numbers (B_1 = -1/2) by the Akiyama–Tanigawa triangle.
pub fn bernoulli_at(n: usize) -> Q {
    let mut a: Vec<Q> = Vec::new();
    for m in 0..=n {
        a.push(Q::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = q(j as i64) * (&a[j - 1] - &a[j]);
        }
    }
    if n == 1 {
        -a[0].clone()
    } else {
        a[0].clone()
    }
}

pub fn zeta_negative_brute(s: u32) -> Q {
    -bernoulli_at(s as usize + 1) / q(i64::from(s) + 1)
}

/// Row echelon reduction returning (rank, reduced rows, pivot columns).
pub fn echelon(rows: &[Vec<Q>]) -> (usize, Vec<Vec<Q>>, Vec<usize>) {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    echelon(rows).0
}

/// Solves `Σ λ_j cols[j] = target` for linearly independent `cols`, if consistent.
fn solve_independent(cols: &[&Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let d = target.len();
    let aug: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (_, red, pivots) = echelon(&aug);
    if pivots.contains(&cols.len()) {
        return None;
    }
    let mut sol = vec![Q::zero(); cols.len()];
    for (row, &p) in red.iter().zip(&pivots) {
        sol[p] = row[cols.len()].clone();
    }
    Some(sol)
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max)
        .collect()
}

/// Carathéodory: `v` is in the cone iff it is a nonnegative combination of
/// some linearly independent subset of the generators.
pub fn member_brute(v: &[Q], gens: &[Vec<Q>]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    subsets(gens.len(), v.len()).into_iter().any(|s| {
        let cols: Vec<&Vec<Q>> = s.iter().map(|&i| &gens[i]).collect();
        let owned: Vec<Vec<Q>> = cols.iter().map(|c| (*c).clone()).collect();
        rank(&owned) == cols.len()
            && solve_independent(&cols, v).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    })
}

/// Not pointed iff some circuit (a minimal dependent subset of at most d + 1
/// generators) has a kernel vector of one strict sign.
pub fn pointed_brute(gens: &[Vec<Q>]) -> bool {
    let Some(d) = gens.first().map(Vec::len) else {
        return true;
    };
    !subsets(gens.len(), d + 1).into_iter().any(|s| {
        let rows: Vec<Vec<Q>> = s.iter().map(|&i| gens[i].clone()).collect();
        if rank(&rows) != s.len() - 1 {
            return false;
        }
        // kernel of the d × |s| matrix with columns = generators
        let cols: Vec<Vec<Q>> = (0..d)
            .map(|i| s.iter().map(|&j| gens[j][i].clone()).collect())
            .collect();
        let (_, red, pivots) = echelon(&cols);
        let free: Vec<usize> = (0..s.len()).filter(|c| !pivots.contains(c)).collect();
        if free.len() != 1 {
            return false;
        }
        let f = free[0];
        let mut kernel = vec![Q::zero(); s.len()];
        kernel[f] = Q::one();
        for (row, &p) in red.iter().zip(&pivots) {
            kernel[p] = -row[f].clone();
        }
        kernel.iter().all(Signed::is_positive) || kernel.iter().all(Signed::is_negative)
    })
}

/// Determinant of a 2 × 2 integer matrix.
pub fn det2(u: &[[i64; 2]; 2]) -> i64 {
    u[0][0] * u[1][1] - u[0][1] * u[1][0]
}
