//! Even unimodular lattices of signature `(n, 2)` and the half-integral
//! matrices indexing special cycles.
//!
//! The lattice is always presented as `U ⊕ U ⊕ E_8^{(n-2)/8}` in a fixed basis:
//! coordinates 0, 1 are the hyperbolic pair `e_1, f_1`, coordinates 2, 3 the pair
//! `e_2, f_2`, followed by the `E_8` blocks in Bourbaki order. In this basis a
//! vector is primitive exactly when the gcd of its coordinates is 1.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::linalg::{det_integer, rref};
use crate::{Error, ExactRational, Result};

/// Cartan matrix of `E_8`; node 2 hangs off node 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

pub fn e8_gram() -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in &E8_EDGES {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenLattice {
    signature: (u32, u32),
    gram: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, t: i64) -> Self {
        Self(self.0.iter().map(|x| x * t).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// `U ⊕ U ⊕ E_8^{(n-2)/8}`, signature `(n, 2)`.
pub fn build_even_unimodular(n: u32) -> Result<EvenLattice> {
    if n < 10 || n % 8 != 2 {
        return Err(Error::InvalidSignature(n.into()));
    }
    let blocks = ((n - 2) / 8) as usize;
    let rank = 4 + 8 * blocks;
    let mut gram = vec![vec![0i64; rank]; rank];
    for h in 0..2 {
        gram[2 * h][2 * h + 1] = 1;
        gram[2 * h + 1][2 * h] = 1;
    }
    let e8 = e8_gram();
    for b in 0..blocks {
        let off = 4 + 8 * b;
        for i in 0..8 {
            for j in 0..8 {
                gram[off + i][off + j] = e8[i][j];
            }
        }
    }
    Ok(EvenLattice {
        signature: (n, 2),
        gram,
    })
}

impl EvenLattice {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn signature(&self) -> (u32, u32) {
        self.signature
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        det_integer(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// The same lattice in the basis given by the columns of `u`
    /// (`gram ↦ uᵀ · gram · u`); `u` must be invertible over ℤ.
    pub fn change_basis(&self, u: &[Vec<i64>]) -> Result<EvenLattice> {
        let n = self.rank();
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: n,
            });
        }
        if !det_integer(u).abs().is_one() {
            return Err(Error::InvalidArgument("basis change is not unimodular"));
        }
        Ok(EvenLattice {
            signature: self.signature,
            gram: congruence(&self.gram, u),
        })
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                left: v.rank(),
                right: self.rank(),
            });
        }
        Ok(())
    }

    /// `(λ, μ) = λᵀ · gram · μ`.
    pub fn inner(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.0
            .iter()
            .zip(&self.gram)
            .map(|(x, row)| x * row.iter().zip(&b.0).map(|(g, y)| g * y).sum::<i64>())
            .sum())
    }

    /// `q(λ) = (λ, λ) / 2`, an integer because the lattice is even.
    pub fn norm_q(&self, v: &LatticeVector) -> Result<i64> {
        Ok(self.inner(v, v)? / 2)
    }

    /// `e_{block} + m · f_{block}` in hyperbolic block 0 or 1; primitive with `q = m`.
    pub fn hyperbolic_vector(&self, block: usize, m: i64) -> LatticeVector {
        let mut c = vec![0i64; self.rank()];
        c[2 * block] = 1;
        c[2 * block + 1] = m;
        LatticeVector(c)
    }
}

/// `uᵀ · a · u` for square integer matrices.
fn congruence(a: &[Vec<i64>], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let cols = u.first().map_or(0, Vec::len);
    let au: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..cols).map(|j| (0..n).map(|k| a[i][k] * u[k][j]).sum()).collect())
        .collect();
    (0..cols)
        .map(|i| (0..cols).map(|j| (0..n).map(|k| u[k][i] * au[k][j]).sum()).collect())
        .collect()
}

/// A witness of norm `m`: `e_1 + m·f_1`, always primitive.
pub fn vector_of_norm(lattice: &EvenLattice, m: i64, require_primitive: bool) -> Result<LatticeVector> {
    if m < 1 {
        return Err(Error::InvalidArgument("norm must be positive"));
    }
    let v = lattice.hyperbolic_vector(0, m);
    debug_assert!(!require_primitive || is_primitive(&v)?);
    Ok(v)
}

pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    Ok(primitive_part(v)?.1 == 1)
}

/// `(λ / t, t)` with `t` the gcd of the coordinates.
pub fn primitive_part(v: &LatticeVector) -> Result<(LatticeVector, i64)> {
    let t = v.0.iter().fold(0i64, |g, &x| g.gcd(&x));
    if t == 0 {
        return Err(Error::ZeroVector);
    }
    Ok((LatticeVector(v.0.iter().map(|x| x / t).collect()), t))
}

/// Symmetric `d × d` half-integral matrix `T`, stored as the integral matrix `2T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfIntegralMatrix {
    doubled: Vec<Vec<i64>>,
}

impl HalfIntegralMatrix {
    /// Accepts `2T`: symmetric, integral, with even diagonal.
    pub fn from_doubled(doubled: Vec<Vec<i64>>) -> Result<Self> {
        let d = doubled.len();
        if d == 0 {
            return Err(Error::InvalidArgument("matrix must be nonempty"));
        }
        if doubled.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("matrix must be square"));
        }
        for i in 0..d {
            if doubled[i][i] % 2 != 0 {
                return Err(Error::InvalidArgument("doubled matrix must have even diagonal"));
            }
            for j in 0..i {
                if doubled[i][j] != doubled[j][i] {
                    return Err(Error::InvalidArgument("matrix must be symmetric"));
                }
            }
        }
        Ok(Self { doubled })
    }

    /// `diag(entries)` with integral entries.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let d = entries.len();
        let mut doubled = vec![vec![0; d]; d];
        for (i, &x) in entries.iter().enumerate() {
            doubled[i][i] = 2 * x;
        }
        Self::from_doubled(doubled)
    }

    pub fn dimension(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[Vec<i64>] {
        &self.doubled
    }

    pub fn entry(&self, i: usize, j: usize) -> ExactRational {
        ExactRational::new(self.doubled[i][j].into(), BigInt::from(2))
    }

    fn halved(&self) -> Vec<Vec<ExactRational>> {
        (0..self.dimension())
            .map(|i| (0..self.dimension()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn determinant(&self) -> ExactRational {
        let d = self.dimension() as u32;
        ExactRational::new(det_integer(&self.doubled), BigInt::from(2).pow(d))
    }

    /// `uᵀ · T · u`.
    pub fn congruent(&self, u: &[Vec<i64>]) -> Result<Self> {
        if u.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                left: u.len(),
                right: self.dimension(),
            });
        }
        Self::from_doubled(congruence(&self.doubled, u))
    }

    /// All leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dimension()).all(|k| {
            let minor: Vec<Vec<i64>> = self.doubled[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_integer(&minor).is_positive()
        })
    }

    /// All principal minors nonnegative.
    pub fn is_positive_semidefinite(&self) -> bool {
        let d = self.dimension();
        (1u32..(1 << d)).all(|mask| {
            let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
            let minor: Vec<Vec<i64>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.doubled[i][j]).collect())
                .collect();
            !det_integer(&minor).is_negative()
        })
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.halved())
    }
}

/// `q(λ) = ½((λ_i, λ_j))_{i,j}`.
pub fn moment_matrix(lattice: &EvenLattice, tuple: &[LatticeVector]) -> Result<HalfIntegralMatrix> {
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("moment matrix of an empty tuple"));
    }
    let doubled = tuple
        .iter()
        .map(|a| tuple.iter().map(|b| lattice.inner(a, b)).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    HalfIntegralMatrix::from_doubled(doubled)
}

/// `u · λ`: the tuple whose `i`-th vector is `Σ_j u_ij λ_j`.
pub fn act_on_tuple(u: &[Vec<i64>], tuple: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    if u.iter().any(|r| r.len() != tuple.len()) {
        return Err(Error::DimensionMismatch {
            left: u.first().map_or(0, Vec::len),
            right: tuple.len(),
        });
    }
    let n = tuple.first().map_or(0, LatticeVector::rank);
    Ok(u.iter()
        .map(|row| {
            LatticeVector(
                (0..n)
                    .map(|c| row.iter().zip(tuple).map(|(a, v)| a * v.0[c]).sum())
                    .collect(),
            )
        })
        .collect())
}

/// Integral `2 × 2` matrix with determinant ±1.
pub type Gl2 = [[i64; 2]; 2];

fn gl2_mul(a: &Gl2, b: &Gl2) -> Gl2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub fn gl2_to_rows(u: &Gl2) -> Vec<Vec<i64>> {
    u.iter().map(|r| r.to_vec()).collect()
}

/// Whether a positive definite binary `T = [[a, b/2], [b/2, c]]` satisfies
/// `0 ≤ b ≤ a ≤ c`.
pub fn is_reduced(t: &HalfIntegralMatrix) -> bool {
    if t.dimension() != 2 {
        return false;
    }
    let (a, b, c) = (t.doubled[0][0] / 2, t.doubled[0][1], t.doubled[1][1] / 2);
    0 <= b && b <= a && a <= c
}

/// Reduces a positive definite binary matrix under `T ↦ uᵀ T u`, `u ∈ GL₂(ℤ)`.
///
/// The representative satisfies `0 ≤ 2T₁₂ ≤ T₁₁ ≤ T₂₂`, which is unique in each
/// `GL₂(ℤ)` class. Returns the reduced matrix and `u`.
pub fn gauss_reduce(t: &HalfIntegralMatrix) -> Result<(HalfIntegralMatrix, Gl2)> {
    if t.dimension() != 2 {
        return Err(Error::InvalidArgument("gauss_reduce handles 2 × 2 matrices only"));
    }
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    // a x² + b xy + c y²
    let mut a = i128::from(t.doubled[0][0] / 2);
    let mut b = i128::from(t.doubled[0][1]);
    let mut c = i128::from(t.doubled[1][1] / 2);
    let mut u: Gl2 = [[1, 0], [0, 1]];
    loop {
        if a > c {
            core::mem::swap(&mut a, &mut c);
            u = gl2_mul(&u, &[[0, 1], [1, 0]]);
            continue;
        }
        if b.abs() > a {
            // y ↦ y - k x brings b into (-a, a]
            let two_a = 2 * a;
            let k = (b + a - 1).div_euclid(two_a);
            let (b_new, c_new) = (b - k * two_a, a * k * k - b * k + c);
            b = b_new;
            c = c_new;
            u = gl2_mul(&u, &[[1, -(k as i64)], [0, 1]]);
            continue;
        }
        break;
    }
    if b < 0 {
        b = -b;
        u = gl2_mul(&u, &[[1, 0], [0, -1]]);
    }
    let reduced = HalfIntegralMatrix::from_doubled(vec![
        vec![(2 * a) as i64, b as i64],
        vec![b as i64, (2 * c) as i64],
    ])?;
    debug_assert_eq!(t.congruent(&gl2_to_rows(&u)).as_ref(), Ok(&reduced));
    Ok((reduced, u))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub j: i64,
    pub tuple: [LatticeVector; 2],
    pub moment: HalfIntegralMatrix,
    /// Moment matrix equals `diag(j² q(λ₁), m)`.
    pub moment_matches: bool,
    /// Rational span of the tuple equals that of `(λ₁, λ₂)`.
    pub span_matches: bool,
    pub determinant: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub first: LatticeVector,
    pub second: LatticeVector,
    pub members: Vec<FamilyMember>,
    pub determinants_increasing: bool,
}

impl FamilyReport {
    pub fn all_checks_pass(&self) -> bool {
        self.determinants_increasing
            && self.members.iter().all(|f| f.moment_matches && f.span_matches)
    }
}

fn rational_rows(vs: &[LatticeVector]) -> Vec<Vec<ExactRational>> {
    vs.iter()
        .map(|v| v.0.iter().map(|&x| ExactRational::from_integer(x.into())).collect())
        .collect()
}

/// Tuples `(j λ₁, λ₂)` for `1 ≤ j ≤ j_max`, all cutting out the same
/// subvariety while `det T_j = j² q(λ₁) m` grows.
///
/// `λ₁ = e_2 + f_2` (norm 1) and `λ₂ = e_1 + m f_1` (norm `m`) are orthogonal.
pub fn common_component_family(lattice: &EvenLattice, m: i64, j_max: i64) -> Result<FamilyReport> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be positive"));
    }
    if j_max < 2 {
        return Err(Error::InvalidArgument("j_max must be at least 2"));
    }
    let first = lattice.hyperbolic_vector(1, 1);
    let second = vector_of_norm(lattice, m, true)?;
    let q1 = lattice.norm_q(&first)?;
    let base_span = rref(&rational_rows(&[first.clone(), second.clone()]));

    let mut members = Vec::with_capacity(j_max as usize);
    for j in 1..=j_max {
        let tuple = [first.scaled(j), second.clone()];
        let moment = moment_matrix(lattice, &tuple)?;
        let expected = HalfIntegralMatrix::diagonal(&[j * j * q1, m])?;
        let span_matches = rref(&rational_rows(&tuple)) == base_span;
        members.push(FamilyMember {
            j,
            determinant: moment.determinant(),
            moment_matches: moment == expected,
            span_matches,
            tuple,
            moment,
        });
    }
    let determinants_increasing = members
        .windows(2)
        .all(|w| w[0].determinant < w[1].determinant);
    Ok(FamilyReport {
        first,
        second,
        members,
        determinants_increasing,
    })
}
