//! Truncated q-expansions of level-one modular forms with exact rational
//! coefficients.
//!
//! A [`QSeries`] of precision `N` stores the coefficients of `q^0 … q^{N-1}`.
//! Products and linear combinations never extend precision: the result is
//! known only as far as every operand is.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numtheory::{bernoulli, sigma_int};
use crate::{Error, ExactRational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    weight: u32,
    coeffs: Vec<ExactRational>,
}

impl QSeries {
    /// Builds a series from its first `coeffs.len()` coefficients.
    pub fn new(weight: u32, coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::PrecisionTooSmall { have: 0, need: 1 });
        }
        Ok(Self { weight, coeffs })
    }

    /// The constant series `value + O(q^precision)`.
    pub fn constant(weight: u32, value: ExactRational, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        let mut coeffs = vec![ExactRational::zero(); precision];
        coeffs[0] = value;
        Self { weight, coeffs }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^index`; panics if `index >= precision`.
    pub fn coeff(&self, index: usize) -> &ExactRational {
        &self.coeffs[index]
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient from `q^precision` on.
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be positive");
        let n = precision.min(self.precision());
        Self {
            weight: self.weight,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    // Splits the series as (integer coefficients) / common denominator.
    fn integral_parts(&self, n: usize) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs[..n]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.coeffs[..n]
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }
}

/// Truncated Cauchy product. Weights add; precision is the smaller one.
pub fn multiply(a: &QSeries, b: &QSeries) -> QSeries {
    let n = a.precision().min(b.precision());
    let (xa, da) = a.integral_parts(n);
    let (xb, db) = b.integral_parts(n);
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in xa.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in xb[..n - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    let den = da * db;
    QSeries {
        weight: a.weight + b.weight,
        coeffs: out
            .into_iter()
            .map(|c| ExactRational::new(c, den.clone()))
            .collect(),
    }
}

/// `a^e`; `a^0` is the constant 1 of weight 0 at `a`'s precision.
pub fn power(a: &QSeries, e: u32) -> QSeries {
    let mut result = QSeries::constant(0, ExactRational::one(), a.precision());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = multiply(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = multiply(&base, &base);
        }
    }
    result
}

/// `Σ scalars[i] · series[i]`; all series must share one weight.
pub fn linear_combine(scalars: &[ExactRational], series: &[QSeries]) -> Result<QSeries> {
    if scalars.len() != series.len() {
        return Err(Error::DimensionMismatch {
            left: scalars.len(),
            right: series.len(),
        });
    }
    let first = series
        .first()
        .ok_or(Error::InvalidArgument("linear_combine needs at least one series"))?;
    let n = series.iter().map(QSeries::precision).min().unwrap_or(1);
    let mut coeffs = vec![ExactRational::zero(); n];
    for (c, f) in scalars.iter().zip(series) {
        if f.weight != first.weight {
            return Err(Error::WeightMismatch {
                left: first.weight,
                right: f.weight,
            });
        }
        if c.is_zero() {
            continue;
        }
        for (acc, a) in coeffs.iter_mut().zip(&f.coeffs) {
            *acc += c * a;
        }
    }
    Ok(QSeries {
        weight: first.weight,
        coeffs,
    })
}

/// Dimension of the space of level-one modular forms of weight `k`.
pub fn dim_mk(k: i64) -> usize {
    if k < 0 || k % 2 != 0 || k == 2 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) Σ σ_{k-1}(m) q^m`.
pub fn eisenstein(k: u32, precision: usize) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidWeight(k.into()));
    }
    if precision == 0 {
        return Err(Error::PrecisionTooSmall { have: 0, need: 1 });
    }
    let factor = -ExactRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    let mut coeffs = Vec::with_capacity(precision);
    coeffs.push(ExactRational::one());
    for m in 1..precision as u64 {
        coeffs.push(&factor * ExactRational::from_integer(sigma_int(k - 1, m)));
    }
    Ok(QSeries { weight: k, coeffs })
}

/// The discriminant `Δ = (E_4³ - E_6²) / 1728`.
pub fn delta(precision: usize) -> QSeries {
    assert!(precision >= 1, "precision must be positive");
    let e4 = eisenstein(4, precision).expect("weight 4 is valid");
    let e6 = eisenstein(6, precision).expect("weight 6 is valid");
    let diff = linear_combine(
        &[ExactRational::one(), -ExactRational::one()],
        &[power(&e4, 3), power(&e6, 2)],
    )
    .expect("both terms have weight 12");
    diff.scale(&ExactRational::new(BigInt::one(), BigInt::from(1728)))
}

/// Echelon basis `f_0, …, f_{d-1}` of `M_k` with `f_i = q^i + O(q^d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MillerBasis {
    weight: u32,
    precision: usize,
    basis: Vec<QSeries>,
}

impl MillerBasis {
    /// Assembles a basis from already computed series, checking the shape and
    /// the pivot property.
    pub fn from_parts(weight: u32, precision: usize, basis: Vec<QSeries>) -> Result<Self> {
        let d = dim_mk(weight.into());
        if basis.len() != d {
            return Err(Error::DimensionMismatch {
                left: basis.len(),
                right: d,
            });
        }
        for f in &basis {
            if f.weight != weight {
                return Err(Error::WeightMismatch {
                    left: weight,
                    right: f.weight,
                });
            }
            if f.precision() != precision {
                return Err(Error::PrecisionTooSmall {
                    have: f.precision(),
                    need: precision,
                });
            }
        }
        let out = Self {
            weight,
            precision,
            basis,
        };
        if !out.has_pivot_property() {
            return Err(Error::InvalidArgument("basis violates the echelon pivot property"));
        }
        Ok(out)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn basis(&self) -> &[QSeries] {
        &self.basis
    }

    /// `coeff(q^j, f_i) = δ_ij` for all `i, j < d`.
    pub fn has_pivot_property(&self) -> bool {
        let d = self.dimension();
        if self.precision < d {
            return false;
        }
        self.basis.iter().enumerate().all(|(i, f)| {
            (0..d).all(|j| {
                let c = f.coeff(j);
                if i == j {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        })
    }
}

/// Products `E_4^a E_6^b` with `4a + 6b = k`, ordered by decreasing `a`.
pub fn monomials(k: u32, precision: usize) -> Vec<QSeries> {
    if k % 2 != 0 {
        return Vec::new();
    }
    let e4 = eisenstein(4, precision).expect("weight 4 is valid");
    let e6 = eisenstein(6, precision).expect("weight 6 is valid");
    let mut out = Vec::new();
    let mut a = k / 4;
    loop {
        let rest = k - 4 * a;
        if rest % 6 == 0 {
            out.push(multiply(&power(&e4, a), &power(&e6, rest / 6)));
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    out
}

/// Builds the Miller basis of weight `k` by exact row reduction of the
/// monomials in `E_4` and `E_6`.
///
/// Odd weights and `k = 2` give the zero space (a basis of dimension 0).
pub fn miller_basis(k: u32, precision: usize) -> Result<MillerBasis> {
    let d = dim_mk(k.into());
    let need = d.max(1);
    if precision < need {
        return Err(Error::PrecisionTooSmall {
            have: precision,
            need,
        });
    }
    if d == 0 {
        return Ok(MillerBasis {
            weight: k,
            precision,
            basis: Vec::new(),
        });
    }
    let mut rows: Vec<Vec<ExactRational>> = monomials(k, precision)
        .into_iter()
        .map(|f| f.coeffs)
        .collect();
    debug_assert_eq!(rows.len(), d);

    // Gauss–Jordan on the leading d × d block; it is invertible for every weight.
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !rows[r][col].is_zero())
            .expect("monomials of weight k have an invertible leading block");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for c in rows[col].iter_mut() {
            *c *= &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    let basis = rows
        .into_iter()
        .map(|coeffs| QSeries { weight: k, coeffs })
        .collect();
    Ok(MillerBasis {
        weight: k,
        precision,
        basis,
    })
}

/// True when every coefficient is an integer.
pub fn is_integral(f: &QSeries) -> bool {
    f.coeffs.iter().all(|c| c.is_integer())
}

/// Largest absolute numerator among the coefficients, handy for size checks.
pub fn max_abs_numerator(f: &QSeries) -> BigInt {
    f.coeffs
        .iter()
        .map(|c| c.numer().abs())
        .max()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::{rat, ratio};

    fn series(weight: u32, xs: &[i64]) -> QSeries {
        QSeries::new(weight, xs.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_mk(0), 1);
        assert_eq!(dim_mk(2), 0);
        assert_eq!(dim_mk(-4), 0);
        assert_eq!(dim_mk(7), 0);
        assert_eq!(dim_mk(12), 2);
        assert_eq!(dim_mk(14), 1);
        assert_eq!(dim_mk(18), 2);
        assert_eq!(dim_mk(34), 3);
    }

    #[test]
    fn dimension_matches_monomial_rank() {
        for k in (4..=60).step_by(2) {
            let d = dim_mk(k);
            let rows: Vec<_> = monomials(k as u32, d + 5)
                .into_iter()
                .map(|f| f.coefficients().to_vec())
                .collect();
            assert_eq!(rank(&rows), d, "weight {k}");
        }
    }

    #[test]
    fn eisenstein_small() {
        assert_eq!(eisenstein(4, 3).unwrap(), series(4, &[1, 240, 2160]));
        assert_eq!(eisenstein(6, 2).unwrap(), series(6, &[1, -504]));
        for k in (4..=30).step_by(2) {
            assert!(eisenstein(k, 4).unwrap().coeff(0).is_one());
        }
        assert_eq!(eisenstein(2, 3), Err(Error::InvalidWeight(2)));
        assert_eq!(eisenstein(5, 3), Err(Error::InvalidWeight(5)));
    }

    #[test]
    fn arithmetic() {
        let a = series(0, &[1, 1, 0]);
        let b = series(0, &[1, -1, 0]);
        assert_eq!(multiply(&a, &b), series(0, &[1, 0, -1]));
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(power(&e4, 3).coeff(1), &rat(720));
        assert_eq!(power(&e4, 3).weight(), 12);
        let z = linear_combine(&[rat(1), rat(-1)], &[e4.clone(), e4.clone()]).unwrap();
        assert!(z.is_zero());
        let e6 = eisenstein(6, 3).unwrap();
        assert!(matches!(
            linear_combine(&[rat(1), rat(1)], &[e4, e6]),
            Err(Error::WeightMismatch { .. })
        ));
        // precision is the minimum
        assert_eq!(multiply(&series(0, &[1, 2, 3]), &series(0, &[1, 1])).precision(), 2);
        assert_eq!(
            multiply(&QSeries::new(0, vec![ratio(1, 2), ratio(1, 3)]).unwrap(), &series(0, &[2, 6])),
            QSeries::new(0, vec![rat(1), ratio(11, 3)]).unwrap()
        );
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(200);
        assert!(d.coeff(0).is_zero());
        assert_eq!(d.coeff(1), &rat(1));
        assert_eq!(d.coeff(2), &rat(-24));
        assert_eq!(d.coeff(3), &rat(252));
        assert_eq!(d.coeff(4), &rat(-1472));
        assert!(is_integral(&d));
    }

    #[test]
    fn miller_small_weights() {
        let b6 = miller_basis(6, 5).unwrap();
        assert_eq!(b6.dimension(), 1);
        assert_eq!(b6.basis()[0], eisenstein(6, 5).unwrap());

        let b0 = miller_basis(0, 3).unwrap();
        assert_eq!(b0.basis()[0], QSeries::constant(0, rat(1), 3));

        let b12 = miller_basis(12, 6).unwrap();
        assert_eq!(b12.dimension(), 2);
        assert_eq!(b12.basis()[1], delta(6));
        assert_eq!(b12.basis()[0].coeff(1), &rat(0));

        assert_eq!(miller_basis(2, 3).unwrap().dimension(), 0);
        assert_eq!(miller_basis(7, 3).unwrap().dimension(), 0);
        assert!(matches!(
            miller_basis(24, 2),
            Err(Error::PrecisionTooSmall { have: 2, need: 3 })
        ));
    }

    #[test]
    fn miller_pivot_and_integrality() {
        for k in (0..=60).step_by(2) {
            let d = dim_mk(k);
            let b = miller_basis(k as u32, (2 * d).max(1)).unwrap();
            assert!(b.has_pivot_property(), "weight {k}");
            for f in b.basis() {
                assert!(is_integral(f), "non-integral Miller basis element at weight {k}");
            }
        }
    }
}
