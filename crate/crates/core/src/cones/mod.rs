//! Oriented rays and finitely generated rational cones in `M_k*` coordinates.
//!
//! Rays are normalized by a positive scalar so that the largest absolute
//! coordinate is 1; distances between rays are L∞ distances of those
//! representatives, which keeps everything rational.

pub mod lp;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::classes::{
    coordinates, heegner_class, omega_class, primitive_heegner_class, ClassVector,
};
use crate::linalg::rank;
use crate::qseries::MillerBasis;
use crate::{Error, ExactRational, Result};

pub use lp::{lp_feasible, Constraint, Feasibility, LinearSystem, Relation};

/// `ℝ_{≥0} · v`, stored as `v / max|v_i|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ray {
    canonical: Vec<ExactRational>,
}

impl Ray {
    pub fn canonical(&self) -> &[ExactRational] {
        &self.canonical
    }

    pub fn dimension(&self) -> usize {
        self.canonical.len()
    }
}

/// Divides `v` by its largest absolute coordinate. Orientation is kept:
/// `v` and `-v` give different rays.
pub fn canonicalize(v: &[ExactRational]) -> Result<Ray> {
    let scale = v
        .iter()
        .map(Signed::abs)
        .max()
        .filter(|s| !s.is_zero())
        .ok_or(Error::ZeroVector)?;
    Ok(Ray {
        canonical: v.iter().map(|x| x / &scale).collect(),
    })
}

pub fn class_ray(v: &ClassVector) -> Result<Ray> {
    canonicalize(v.coords())
}

/// L∞ distance between canonical representatives.
pub fn ray_distance(a: &Ray, b: &Ray) -> Result<ExactRational> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            left: a.dimension(),
            right: b.dimension(),
        });
    }
    Ok(a.canonical
        .iter()
        .zip(&b.canonical)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_default())
}

/// The Kähler ray, `ray(-e_0)` in Miller coordinates.
pub fn omega_ray(basis: &MillerBasis) -> Result<Ray> {
    if basis.dimension() == 0 {
        return Err(Error::EmptySpace(basis.weight()));
    }
    class_ray(&coordinates(&omega_class(basis.weight()), basis)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub m: u64,
    pub ray: Ray,
    pub distance: ExactRational,
}

/// Distance from the ray of `P_m` (or `H_m` when `use_primitive` is false) to
/// the Kähler ray, for each `m` in `m_set`.
///
/// Only for weights `k ≡ 2 (mod 4)` do the rays approach the Kähler ray; for
/// other weights the rows still report where each ray points.
pub fn convergence_scan(
    basis: &MillerBasis,
    m_set: &[u64],
    use_primitive: bool,
) -> Result<Vec<ScanRow>> {
    if let Some(&max) = m_set.iter().max() {
        let need = max as usize + 1;
        if basis.precision() < need {
            return Err(Error::PrecisionTooSmall {
                have: basis.precision(),
                need,
            });
        }
    }
    let target = omega_ray(basis)?;
    let k = basis.weight();
    m_set
        .iter()
        .map(|&m| {
            let combo = if use_primitive {
                primitive_heegner_class(m, k)?
            } else {
                heegner_class(m, k)?
            };
            let ray = class_ray(&coordinates(&combo, basis)?)?;
            let distance = ray_distance(&ray, &target)?;
            Ok(ScanRow { m, ray, distance })
        })
        .collect()
}

/// A cone generated by finitely many nonzero rational vectors of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    weight: Option<u32>,
    dim: usize,
    generators: Vec<Vec<ExactRational>>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<Vec<ExactRational>>) -> Result<Self> {
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: g.len(),
                    right: dim,
                });
            }
            if g.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Self {
            weight: None,
            dim,
            generators,
        })
    }

    /// A cone of class vectors of weight `k`.
    pub fn from_classes(k: u32, generators: &[ClassVector]) -> Result<Self> {
        let dim = crate::qseries::dim_mk(k.into());
        if let Some(g) = generators.iter().find(|g| g.weight() != k) {
            return Err(Error::WeightMismatch {
                left: k,
                right: g.weight(),
            });
        }
        let mut cone = Self::new(dim, generators.iter().map(|g| g.coords().to_vec()).collect())?;
        cone.weight = Some(k);
        Ok(cone)
    }

    pub fn weight(&self) -> Option<u32> {
        self.weight
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<ExactRational>] {
        &self.generators
    }

    /// The same cone restricted to its first `count` generators.
    pub fn prefix(&self, count: usize) -> Self {
        Self {
            weight: self.weight,
            dim: self.dim,
            generators: self.generators[..count.min(self.generators.len())].to_vec(),
        }
    }
}

/// Generators `[ω], [P_1], …, [P_M]` in Miller coordinates; generator `m` is `P_m`
/// and generator 0 is the Kähler class.
pub fn accumulation_cone_model(basis: &MillerBasis, max_m: u64) -> Result<Cone> {
    let k = basis.weight();
    if basis.dimension() == 0 {
        return Err(Error::EmptySpace(k));
    }
    let need = max_m as usize + 1;
    if basis.precision() < need {
        return Err(Error::PrecisionTooSmall {
            have: basis.precision(),
            need,
        });
    }
    let mut gens = Vec::with_capacity(need);
    gens.push(coordinates(&omega_class(k), basis)?);
    for m in 1..=max_m {
        gens.push(coordinates(&primitive_heegner_class(m, k)?, basis)?);
    }
    Cone::from_classes(k, &gens)
}

fn dot(a: &[ExactRational], b: &[ExactRational]) -> ExactRational {
    a.iter()
        .zip(b)
        .fold(ExactRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Whether `v = Σ λ_i g_i` for some `λ ≥ 0`.
pub fn member(v: &[ExactRational], cone: &Cone) -> Result<bool> {
    Ok(membership_witness(v, cone)?.is_some())
}

/// Nonnegative coefficients expressing `v` in the generators, if any.
pub fn membership_witness(v: &[ExactRational], cone: &Cone) -> Result<Option<Vec<ExactRational>>> {
    if v.len() != cone.dim {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: cone.dim,
        });
    }
    membership_in(v, &cone.generators.iter().collect::<Vec<_>>())
}

fn membership_in(
    v: &[ExactRational],
    generators: &[&Vec<ExactRational>],
) -> Result<Option<Vec<ExactRational>>> {
    let mut system = LinearSystem::new(generators.len());
    for (i, target) in v.iter().enumerate() {
        let row = generators.iter().map(|g| g[i].clone()).collect();
        system.add(row, Relation::Eq, target.clone());
    }
    Ok(lp_feasible(&system)?.witness().map(<[_]>::to_vec))
}

/// Pointed means the cone contains no line.
///
/// Decided through the alternative: either some `y` has `⟨y, g⟩ > 0` on every
/// generator, or some nonzero `λ ≥ 0` has `Σ λ_i g_i = 0`. The second system,
/// normalized by `Σ λ_i = 1`, has only `dim + 1` rows.
pub fn is_pointed(cone: &Cone) -> bool {
    if cone.generators.is_empty() {
        return true;
    }
    let rays = distinct_rays(cone);
    let mut system = LinearSystem::new(rays.len());
    for i in 0..cone.dim {
        let row = rays.iter().map(|(r, _)| r.canonical[i].clone()).collect();
        system.add(row, Relation::Eq, ExactRational::zero());
    }
    system.add(
        vec![ExactRational::one(); rays.len()],
        Relation::Eq,
        ExactRational::one(),
    );
    !lp_feasible(&system)
        .expect("system is well formed by construction")
        .is_feasible()
}

/// A rational `y` with `⟨y, g⟩ ≥ 1` for every generator, when one exists.
///
/// Solved by constraint generation: the LP only carries the rays violated by
/// earlier candidates, so its size stays near the dimension.
pub fn pointedness_witness(cone: &Cone) -> Option<Vec<ExactRational>> {
    let rays = distinct_rays(cone);
    let one = ExactRational::one();
    let mut active: Vec<usize> = (0..rays.len().min(cone.dim)).collect();
    let witness = loop {
        let mut system = LinearSystem::new(cone.dim);
        for v in 0..cone.dim {
            system.set_free(v);
        }
        for &i in &active {
            system.add(rays[i].0.canonical.clone(), Relation::Ge, one.clone());
        }
        let y = lp_feasible(&system)
            .expect("system is well formed by construction")
            .witness()?
            .to_vec();
        let mut violated: Vec<(ExactRational, usize)> = rays
            .iter()
            .enumerate()
            .map(|(i, (r, _))| (dot(&y, &r.canonical), i))
            .filter(|(value, _)| *value < one)
            .collect();
        if violated.is_empty() {
            break y;
        }
        violated.sort();
        active.extend(violated.into_iter().take(cone.dim + 1).map(|(_, i)| i));
    };
    // Scaling the rays by a positive factor ≤ 1 keeps the inequalities for the generators.
    let scale = cone
        .generators
        .iter()
        .map(|g| dot(&witness, g))
        .min()
        .unwrap_or_else(ExactRational::one);
    let factor = if scale < one { scale.recip() } else { one };
    Some(witness.into_iter().map(|x| x * &factor).collect())
}

// Distinct rays with the first generator index producing each, in index order.
fn distinct_rays(cone: &Cone) -> Vec<(Ray, usize)> {
    let mut seen: BTreeMap<Ray, usize> = BTreeMap::new();
    for (i, g) in cone.generators.iter().enumerate() {
        let ray = canonicalize(g).expect("generators are nonzero");
        seen.entry(ray).or_insert(i);
    }
    let mut out: Vec<(Ray, usize)> = seen.into_iter().collect();
    out.sort_by_key(|&(_, i)| i);
    out
}

/// Indices of generators spanning extremal rays, one index (the smallest) per
/// extremal ray.
///
/// A ray found inside the cone of the others is dropped from every later
/// test; this leaves the cone unchanged and keeps the LPs small. Each ray is
/// first tested against the extremal rays found so far, which settles most
/// interior rays with a tiny LP.
pub fn extremal_generators(cone: &Cone) -> Result<Vec<usize>> {
    if !is_pointed(cone) {
        return Err(Error::NotPointed);
    }
    let rays = distinct_rays(cone);
    let mut alive = vec![true; rays.len()];
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let target = &rays[i].0.canonical;
        let kept_rays: Vec<&Vec<ExactRational>> = kept.iter().map(|&j| &rays[j].0.canonical).collect();
        if !kept_rays.is_empty() && membership_in(target, &kept_rays)?.is_some() {
            alive[i] = false;
            continue;
        }
        let others: Vec<&Vec<ExactRational>> = (0..rays.len())
            .filter(|&j| j != i && alive[j])
            .map(|j| &rays[j].0.canonical)
            .collect();
        if membership_in(target, &others)?.is_some() {
            alive[i] = false;
        } else {
            kept.push(i);
        }
    }
    Ok(kept.into_iter().map(|i| rays[i].1).collect())
}

/// The extremal rays themselves, sorted.
pub fn extremal_rays(cone: &Cone) -> Result<Vec<Ray>> {
    let mut rays: Vec<Ray> = extremal_generators(cone)?
        .into_iter()
        .map(|i| canonicalize(&cone.generators[i]).expect("generators are nonzero"))
        .collect();
    rays.sort();
    Ok(rays)
}

/// Dimension of the linear span of the generators.
pub fn span_dimension(cone: &Cone) -> usize {
    rank(&cone.generators)
}
