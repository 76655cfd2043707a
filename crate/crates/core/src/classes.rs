//! Cohomology classes of Heegner divisors, primitive Heegner divisors and the
//! Kähler class, represented by their preimages in the dual of `M_k`.
//!
//! The lift sends the coefficient functional `c_m` to the class of the `m`-th
//! Heegner divisor `H_m` and `c_0` to `-[ω]`. It is injective, so every class
//! is handled through its functional: either as a finite combination
//! `Σ a_m c_m` ([`FunctionalCombo`]) or as a coordinate vector in the basis
//! dual to a Miller basis ([`ClassVector`]).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::numtheory::{factorize, moebius, sigma, square_divisors, zeta_negative};
use crate::qseries::{dim_mk, eisenstein, MillerBasis, QSeries};
use crate::{Error, ExactRational, Result};

/// A finite linear combination `Σ a_m c_m` of coefficient functionals on `M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalCombo {
    weight: u32,
    terms: BTreeMap<u64, ExactRational>,
}

impl FunctionalCombo {
    pub fn zero(weight: u32) -> Self {
        Self {
            weight,
            terms: BTreeMap::new(),
        }
    }

    /// The combination `coeff · c_index`.
    pub fn single(weight: u32, index: u64, coeff: ExactRational) -> Self {
        let mut out = Self::zero(weight);
        out.add_term(index, coeff);
        out
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> &BTreeMap<u64, ExactRational> {
        &self.terms
    }

    pub fn coefficient(&self, index: u64) -> ExactRational {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, index: u64, coeff: ExactRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// `self + scale · other`.
    pub fn add_scaled(&mut self, other: &FunctionalCombo, scale: &ExactRational) {
        for (&m, a) in &other.terms {
            self.add_term(m, a * scale);
        }
    }

    /// Evaluates the functional on a modular form.
    pub fn evaluate(&self, f: &QSeries) -> Result<ExactRational> {
        evaluate(self, f)
    }
}

/// Coordinates of a functional in the basis of `M_k*` dual to a Miller basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    weight: u32,
    coords: Vec<ExactRational>,
}

impl ClassVector {
    pub fn new(weight: u32, coords: Vec<ExactRational>) -> Result<Self> {
        let d = dim_mk(weight.into());
        if coords.len() != d {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: d,
            });
        }
        Ok(Self { weight, coords })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<ExactRational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Evaluates on `f`, assuming `f` lies in `M_k`: with the pivot property
    /// `f = Σ c_i(f) f_i`, so the value is `Σ_i coord_i · c_i(f)`.
    pub fn evaluate(&self, f: &QSeries) -> Result<ExactRational> {
        if f.weight() != self.weight {
            return Err(Error::WeightMismatch {
                left: self.weight,
                right: f.weight(),
            });
        }
        if f.precision() < self.dimension() {
            return Err(Error::PrecisionTooSmall {
                have: f.precision(),
                need: self.dimension(),
            });
        }
        Ok(self
            .coords
            .iter()
            .zip(f.coefficients())
            .fold(ExactRational::zero(), |acc, (x, c)| acc + x * c))
    }
}

/// A class `[ω]^power ∧ v` in higher degree.
///
/// Wedging with a power of the Kähler class is injective in the relevant
/// degrees, so it is carried as the coordinates of `v` with a degree tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeImage {
    pub omega_power: u32,
    pub vector: ClassVector,
}

pub fn wedge_with_omega(vector: &ClassVector, omega_power: u32) -> WedgeImage {
    WedgeImage {
        omega_power,
        vector: vector.clone(),
    }
}

fn check_index(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("Heegner index must be positive"));
    }
    Ok(())
}

/// `ψ⁻¹([H_m]) = c_m`.
pub fn heegner_class(m: u64, k: u32) -> Result<FunctionalCombo> {
    check_index(m)?;
    Ok(FunctionalCombo::single(k, m, ExactRational::one()))
}

/// `ψ⁻¹([ω]) = -c_0`.
pub fn omega_class(k: u32) -> FunctionalCombo {
    FunctionalCombo::single(k, 0, -ExactRational::one())
}

/// `ψ⁻¹([P_m]) = Σ_{t² | m} μ(t) c_{m/t²}`.
pub fn primitive_heegner_class(m: u64, k: u32) -> Result<FunctionalCombo> {
    check_index(m)?;
    let mut out = FunctionalCombo::zero(k);
    for t in square_divisors(m) {
        let mu = moebius(t);
        if mu != 0 {
            out.add_term(m / (t * t), ExactRational::from_integer(mu.into()));
        }
    }
    Ok(out)
}

/// `H_m = Σ_{t² | m} P_{m/t²}`, with each `P` expanded back into `c`'s.
pub fn heegner_from_primitive(m: u64, k: u32) -> Result<FunctionalCombo> {
    check_index(m)?;
    let mut out = FunctionalCombo::zero(k);
    for t in square_divisors(m) {
        out.add_scaled(&primitive_heegner_class(m / (t * t), k)?, &ExactRational::one());
    }
    Ok(out)
}

/// Re-expresses a combination of `c_m`'s in terms of the `P`'s: the inverse of
/// [`primitive_heegner_class`], returned as a map `m ↦ coefficient of P_m`.
pub fn primitive_expansion(combo: &FunctionalCombo) -> BTreeMap<u64, ExactRational> {
    let mut out: BTreeMap<u64, ExactRational> = BTreeMap::new();
    for (&m, a) in combo.terms() {
        if m == 0 {
            continue;
        }
        for t in square_divisors(m) {
            let e = out.entry(m / (t * t)).or_default();
            *e += a;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Coordinate `i` is `Σ_m a_m · coeff(q^m, f_i)`.
pub fn coordinates(combo: &FunctionalCombo, basis: &MillerBasis) -> Result<ClassVector> {
    if combo.weight() != basis.weight() {
        return Err(Error::WeightMismatch {
            left: combo.weight(),
            right: basis.weight(),
        });
    }
    if let Some(max) = combo.max_index() {
        let need = max as usize + 1;
        if basis.precision() < need {
            return Err(Error::PrecisionTooSmall {
                have: basis.precision(),
                need,
            });
        }
    }
    let coords = basis
        .basis()
        .iter()
        .map(|f| {
            combo
                .terms()
                .iter()
                .fold(ExactRational::zero(), |acc, (&m, a)| acc + a * f.coeff(m as usize))
        })
        .collect();
    Ok(ClassVector {
        weight: basis.weight(),
        coords,
    })
}

/// `Σ_m a_m · coeff(q^m, f)`.
pub fn evaluate(combo: &FunctionalCombo, f: &QSeries) -> Result<ExactRational> {
    if combo.weight() != f.weight() {
        return Err(Error::WeightMismatch {
            left: combo.weight(),
            right: f.weight(),
        });
    }
    if let Some(max) = combo.max_index() {
        let need = max as usize + 1;
        if f.precision() < need {
            return Err(Error::PrecisionTooSmall {
                have: f.precision(),
                need,
            });
        }
    }
    Ok(combo
        .terms()
        .iter()
        .fold(ExactRational::zero(), |acc, (&m, a)| acc + a * f.coeff(m as usize)))
}

/// Weight `1 + n/2` of the modular forms attached to signature `(n, 2)`.
pub fn weight_for_signature(n: u32) -> Result<u32> {
    if n % 2 != 0 {
        return Err(Error::InvalidArgument("n must be even so that 1 + n/2 is an integer"));
    }
    let k = 1 + n / 2;
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidWeight(k.into()));
    }
    Ok(k)
}

/// Outcome of one exact identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: u64,
    pub n: u32,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub equal: bool,
}

impl IdentityReport {
    fn new(m: u64, n: u32, lhs: ExactRational, rhs: ExactRational) -> Self {
        let equal = lhs == rhs;
        Self { m, n, lhs, rhs, equal }
    }
}

/// Closed form `2σ_{n/2}(m) / ζ(-n/2)` for `c_m(E_{1+n/2})`.
pub fn eisenstein_coefficient_closed_form(m: u64, n: u32) -> ExactRational {
    let s = n / 2;
    ExactRational::from_integer(BigInt::from(2)) * sigma(s, m) / zeta_negative(s)
}

/// Closed form `(2 m^{n/2} / ζ(-n/2)) · Π_{p | m} (1 + p^{-n/2})`.
pub fn primitive_closed_form(m: u64, n: u32) -> ExactRational {
    let s = n / 2;
    let mut value = ExactRational::from_integer(BigInt::from(2) * Pow::pow(BigInt::from(m), s))
        / zeta_negative(s);
    for p in factorize(m).primes() {
        let ps: BigInt = Pow::pow(BigInt::from(p), s);
        value *= ExactRational::new(&ps + BigInt::one(), ps);
    }
    value
}

/// `c_m(E_{1+n/2})` read off the q-expansion versus its closed form.
pub fn eisenstein_coefficient_identity(m: u64, n: u32) -> Result<IdentityReport> {
    check_index(m)?;
    let k = weight_for_signature(n)?;
    let e = eisenstein(k, m as usize + 1)?;
    coefficient_report(m, n, &e)
}

/// `ψ⁻¹([P_m])(E_{1+n/2})` from the Möbius expansion versus its closed product form.
pub fn primitive_eisenstein_identity(m: u64, n: u32) -> Result<IdentityReport> {
    check_index(m)?;
    let k = weight_for_signature(n)?;
    let e = eisenstein(k, m as usize + 1)?;
    primitive_report(m, n, &e)
}

fn coefficient_report(m: u64, n: u32, e: &QSeries) -> Result<IdentityReport> {
    let lhs = evaluate(&heegner_class(m, e.weight())?, e)?;
    Ok(IdentityReport::new(m, n, lhs, eisenstein_coefficient_closed_form(m, n)))
}

fn primitive_report(m: u64, n: u32, e: &QSeries) -> Result<IdentityReport> {
    let lhs = evaluate(&primitive_heegner_class(m, e.weight())?, e)?;
    Ok(IdentityReport::new(m, n, lhs, primitive_closed_form(m, n)))
}

/// Both identity checks for every `1 ≤ m ≤ max_m`, sharing one Eisenstein expansion.
pub fn identity_scan(n: u32, max_m: u64) -> Result<Vec<(IdentityReport, IdentityReport)>> {
    let k = weight_for_signature(n)?;
    let e = eisenstein(k, max_m as usize + 1)?;
    (1..=max_m)
        .map(|m| Ok((coefficient_report(m, n, &e)?, primitive_report(m, n, &e)?)))
        .collect()
}

/// The scalar `r! / r'!` in front of the limit class.
pub fn limit_prefactor(r: u64, r_prime: u64) -> Result<ExactRational> {
    if r > r_prime {
        return Err(Error::InvalidArgument("limit_prefactor needs r <= r'"));
    }
    // r!/r'! = 1 / ((r+1)(r+2)…r')
    let den: BigInt = (r + 1..=r_prime).map(BigInt::from).product();
    Ok(ExactRational::new(BigInt::one(), den))
}
