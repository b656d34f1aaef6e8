//! Fans of toric varieties and the divisor data attached to them.
//!
//! Conventions: a torus-invariant divisor `D = sum a_rho D_rho` has, on each
//! maximal cone `sigma`, local equation `chi^(-m_sigma)` where
//! `<m_sigma, v_rho> = -a_rho` for the rays of `sigma`. Transition exponents
//! are `g_{sigma tau} = m_sigma - m_tau`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    self, cokernel, kernel_basis, smith_normal_form, solve_integer, to_bigint_vec, to_i64_vec,
    AbelianGroupPresentation, IntegerMatrix, LatticeError, LatticeMap,
};
use crate::polyhedral::{halfspace_intersection, RationalCone};

/// The specific structural invariant a fan violates.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanDefect {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("ray {ray} has length {len}, expected {dim}")]
    RayLength { ray: usize, len: usize, dim: usize },
    #[error("ray {ray} is zero")]
    ZeroRay { ray: usize },
    #[error("ray {ray} is not primitive")]
    NonPrimitiveRay { ray: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} is empty")]
    EmptyCone { cone: usize },
    #[error("cone {cone} refers to ray {ray}, but there are only {rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        ray: usize,
        rays: usize,
    },
    #[error("cone {cone} lists ray {ray} twice")]
    RepeatedRayInCone { cone: usize, ray: usize },
    #[error("ray {ray} lies in no cone")]
    UnusedRay { ray: usize },
    #[error("cone {cone} is contained in cone {other}, so it is not maximal")]
    NotMaximal { cone: usize, other: usize },
    #[error("cone {cone} contains a line")]
    NotStronglyConvex { cone: usize },
    #[error("ray {ray} is not an extreme ray of cone {cone}")]
    NotExtreme { cone: usize, ray: usize },
    #[error("cones {first} and {second} do not meet in a common face")]
    BadIntersection { first: usize, second: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("malformed fan: {0}")]
    Malformed(#[from] FanDefect),
    #[error("could not parse fan: {0}")]
    Parse(String),
    #[error("rays do not span the ambient space (rank {rank} < {dim})")]
    RaysDontSpan { rank: usize, dim: usize },
    #[error("divisor has {got} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, got: usize },
    #[error("divisor is not Cartier on cone {cone}")]
    NotCartier { cone: usize },
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Rays in the cocharacter lattice `Z^dim` plus maximal cones as ray index
/// sets. Construction checks the structural invariants; smoothness and
/// completeness are reported by [`validate_fan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = FanFile::deserialize(d)?;
        Fan::new(f.dim, f.rays, f.max_cones).map_err(serde::de::Error::custom)
    }
}

impl Fan {
    pub fn new(
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanDefect> {
        let fan = Fan {
            dim,
            rays,
            max_cones,
        };
        fan.check_structure()?;
        Ok(fan)
    }

    /// Parses the JSON fan format, separating syntax errors from violated
    /// invariants.
    pub fn from_json(text: &str) -> Result<Self, FanError> {
        let f: FanFile = serde_json::from_str(text).map_err(|e| FanError::Parse(e.to_string()))?;
        Ok(Fan::new(f.dim, f.rays, f.max_cones)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Rays as rows; as a map `M -> Z^rays` this is `m -> (<m, v_rho>)`.
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(&self.rays, self.dim).expect("ray lengths checked")
    }

    /// Max cones with sorted index lists, in sorted order.
    pub fn canonical_cones(&self) -> Vec<Vec<usize>> {
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        cones
    }

    fn cone_of(&self, idx: &[usize]) -> RationalCone {
        RationalCone::new(
            self.dim,
            idx.iter().map(|&i| to_bigint_vec(&self.rays[i])).collect(),
        )
        .expect("ray lengths checked")
    }

    fn check_structure(&self) -> Result<(), FanDefect> {
        if self.dim == 0 {
            return Err(FanDefect::ZeroDimension);
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.dim {
                return Err(FanDefect::RayLength {
                    ray: i,
                    len: r.len(),
                    dim: self.dim,
                });
            }
            let g = lattice::gcd_of(&to_bigint_vec(r));
            if g.is_zero() {
                return Err(FanDefect::ZeroRay { ray: i });
            }
            if !g.is_one() {
                return Err(FanDefect::NonPrimitiveRay { ray: i });
            }
            if let Some(j) = (0..i).find(|&j| self.rays[j] == *r) {
                return Err(FanDefect::DuplicateRay {
                    first: j,
                    second: i,
                });
            }
        }
        let mut used = vec![false; self.rays.len()];
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(FanDefect::EmptyCone { cone: c });
            }
            let mut seen = BTreeSet::new();
            for &r in cone {
                if r >= self.rays.len() {
                    return Err(FanDefect::RayIndexOutOfRange {
                        cone: c,
                        ray: r,
                        rays: self.rays.len(),
                    });
                }
                if !seen.insert(r) {
                    return Err(FanDefect::RepeatedRayInCone { cone: c, ray: r });
                }
                used[r] = true;
            }
        }
        if let Some(r) = used.iter().position(|u| !u) {
            return Err(FanDefect::UnusedRay { ray: r });
        }
        let sets: Vec<BTreeSet<usize>> = self
            .max_cones
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        for (a, sa) in sets.iter().enumerate() {
            for (b, sb) in sets.iter().enumerate() {
                if a != b && sa.is_subset(sb) {
                    return Err(FanDefect::NotMaximal { cone: a, other: b });
                }
            }
        }
        let cones: Vec<RationalCone> = self.max_cones.iter().map(|c| self.cone_of(c)).collect();
        for (c, (cone, idx)) in cones.iter().zip(&self.max_cones).enumerate() {
            let g = cone.minimal_generators();
            if !g.lineality.is_empty() {
                return Err(FanDefect::NotStronglyConvex { cone: c });
            }
            for &r in idx {
                if !g.rays.contains(&to_bigint_vec(&self.rays[r])) {
                    return Err(FanDefect::NotExtreme { cone: c, ray: r });
                }
            }
        }
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if !self.meets_in_face(&cones[a], &sets[a], &cones[b], &sets[b]) {
                    return Err(FanDefect::BadIntersection {
                        first: a,
                        second: b,
                    });
                }
            }
        }
        Ok(())
    }

    /// `cone(A) ∩ cone(B) = cone(A ∩ B)` and that cone is a face of both.
    fn meets_in_face(
        &self,
        ca: &RationalCone,
        sa: &BTreeSet<usize>,
        cb: &RationalCone,
        sb: &BTreeSet<usize>,
    ) -> bool {
        let common: Vec<usize> = sa.intersection(sb).copied().collect();
        let mut constraints = ca.facet_description().as_generator_list();
        constraints.extend(cb.facet_description().as_generator_list());
        let meet = halfspace_intersection(self.dim, &constraints).expect("dimensions consistent");
        let meet =
            RationalCone::new(self.dim, meet.as_generator_list()).expect("dimensions consistent");
        if meet != self.cone_of(&common) {
            return false;
        }
        self.is_face(ca, sa, &common) && self.is_face(cb, sb, &common)
    }

    fn is_face(&self, cone: &RationalCone, gens: &BTreeSet<usize>, subset: &[usize]) -> bool {
        let tight: Vec<&Vec<BigInt>> = cone
            .facet_normals()
            .iter()
            .filter(|f| {
                subset
                    .iter()
                    .all(|&s| lattice::dot(f, &to_bigint_vec(&self.rays[s])).is_zero())
            })
            .collect();
        let on_face: Vec<usize> = gens
            .iter()
            .copied()
            .filter(|&g| {
                tight
                    .iter()
                    .all(|f| lattice::dot(f, &to_bigint_vec(&self.rays[g])).is_zero())
            })
            .collect();
        on_face == subset
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
}

impl FanReport {
    pub fn smooth_and_complete(&self) -> bool {
        self.smooth && self.complete
    }
}

/// Smoothness: every max cone is generated by part of a lattice basis.
/// Completeness (for simplicial fans): every max cone has `dim` rays and each
/// of its facets is shared with exactly one other max cone.
pub fn validate_fan(f: &Fan) -> FanReport {
    let m = f.ray_matrix();
    let simplicial = f
        .max_cones
        .iter()
        .all(|c| m.select_rows(c).rank() == c.len());
    let smooth = simplicial
        && f.max_cones.iter().all(|c| {
            smith_normal_form(&m.select_rows(c))
                .diagonal()
                .iter()
                .all(One::is_one)
        });
    let complete = simplicial && f.max_cones.iter().all(|c| c.len() == f.dim) && {
        let sets: Vec<BTreeSet<usize>> = f
            .max_cones
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        sets.iter().enumerate().all(|(a, sa)| {
            sa.iter().all(|&drop| {
                let mut facet = sa.clone();
                facet.remove(&drop);
                let sharing = sets
                    .iter()
                    .enumerate()
                    .filter(|&(b, sb)| b != a && facet.is_subset(sb))
                    .count();
                sharing == 1
            })
        })
    };
    FanReport {
        simplicial,
        smooth,
        complete,
    }
}

/// Coefficients `a_rho` of `D = sum a_rho D_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusInvariantDivisor(pub Vec<i64>);

impl TorusInvariantDivisor {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The prime divisor `D_rho`.
    pub fn prime(n: usize, rho: usize) -> Self {
        let mut v = vec![0; n];
        v[rho] = 1;
        Self(v)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Class group together with the maps of `0 -> M -> Z^rays -> Cl -> 0`.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub presentation: AbelianGroupPresentation,
    /// `Z^rays -> Cl`; column `rho` is the class of `D_rho`.
    pub degree_map: LatticeMap,
    /// `M -> Z^rays`, `m -> div(chi^m)`.
    pub div_map: LatticeMap,
}

pub fn class_group(f: &Fan) -> Result<ClassGroup, FanError> {
    let div = f.ray_matrix();
    let rank = div.rank();
    if rank < f.dim {
        return Err(FanError::RaysDontSpan { rank, dim: f.dim });
    }
    let presentation = cokernel(&div);
    let degree_map = LatticeMap::new(presentation.projection.clone());
    Ok(ClassGroup {
        presentation,
        degree_map,
        div_map: LatticeMap::new(div),
    })
}

/// Exactness data for `0 -> M -> Z^rays -> Cl -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// `Q ∘ div = 0`.
    pub composite_zero: bool,
    /// `ker Q = im div`, as lattices.
    pub kernel_is_image: bool,
    /// `div` injective.
    pub div_injective: bool,
    pub class_group_rank: usize,
    pub torsion_free: bool,
}

impl ExactnessReport {
    pub fn holds(&self) -> bool {
        self.composite_zero && self.kernel_is_image && self.div_injective
    }
}

pub fn verify_exactness(f: &Fan) -> Result<ExactnessReport, FanError> {
    let cg = class_group(f)?;
    let div = &cg.div_map.matrix;
    let composite_zero = div
        .column_vecs()
        .iter()
        .map(|c| cg.presentation.project(c))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(|v| v.iter().all(Zero::is_zero));
    let free_rows: Vec<usize> = (0..cg.presentation.free_rank).collect();
    let q_free = cg.degree_map.matrix.select_rows(&free_rows);
    let kernel = kernel_basis(&q_free);
    // with torsion the kernel of the free part is bigger than im(div)
    let mut kernel_is_image = cg.presentation.is_free() && kernel.cols() == f.dim;
    if kernel_is_image {
        for col in kernel.column_vecs() {
            if solve_integer(div, &col)?.is_none() {
                kernel_is_image = false;
                break;
            }
        }
    }
    Ok(ExactnessReport {
        composite_zero,
        kernel_is_image,
        div_injective: div.rank() == f.dim,
        class_group_rank: cg.presentation.free_rank,
        torsion_free: cg.presentation.is_free(),
    })
}

/// Local data `m_sigma` per maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartierData {
    pub m: Vec<Vec<i64>>,
}

fn check_divisor(f: &Fan, d: &TorusInvariantDivisor) -> Result<(), FanError> {
    if d.0.len() != f.num_rays() {
        return Err(FanError::DivisorLength {
            expected: f.num_rays(),
            got: d.0.len(),
        });
    }
    Ok(())
}

pub fn cartier_data(f: &Fan, d: &TorusInvariantDivisor) -> Result<CartierData, FanError> {
    check_divisor(f, d)?;
    let rays = f.ray_matrix();
    let mut m = Vec::with_capacity(f.max_cones.len());
    for (c, cone) in f.max_cones.iter().enumerate() {
        let a = rays.select_rows(cone);
        let rhs: Vec<BigInt> = cone.iter().map(|&r| BigInt::from(-d.0[r])).collect();
        let sol = solve_integer(&a, &rhs)?.ok_or(FanError::NotCartier { cone: c })?;
        m.push(to_i64_vec(&sol)?);
    }
    Ok(CartierData { m })
}

/// Transition exponents for every ordered pair of maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CechCocycle {
    pub g: Vec<Vec<Vec<i64>>>,
}

impl CechCocycle {
    pub fn get(&self, sigma: usize, tau: usize) -> &[i64] {
        &self.g[sigma][tau]
    }

    pub fn num_cones(&self) -> usize {
        self.g.len()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let k = self.num_cones();
        (0..k).all(|s| {
            (0..k).all(|t| {
                self.g[s][t]
                    .iter()
                    .zip(&self.g[t][s])
                    .all(|(a, b)| a + b == 0)
            })
        })
    }

    /// `g_{st} + g_{tu} = g_{su}` for all triples.
    pub fn satisfies_cocycle(&self) -> bool {
        let k = self.num_cones();
        (0..k).all(|s| {
            (0..k).all(|t| {
                (0..k).all(|u| {
                    self.g[s][t]
                        .iter()
                        .zip(&self.g[t][u])
                        .zip(&self.g[s][u])
                        .all(|((a, b), c)| a + b == *c)
                })
            })
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(rs, ro)| {
                rs.iter()
                    .zip(ro)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                    .collect()
            })
            .collect();
        Self { g }
    }
}

pub fn cech_transitions(f: &Fan, d: &TorusInvariantDivisor) -> Result<CechCocycle, FanError> {
    let cd = cartier_data(f, d)?;
    let g =
        cd.m.iter()
            .map(|ms| {
                cd.m.iter()
                    .map(|mt| ms.iter().zip(mt).map(|(a, b)| a - b).collect())
                    .collect()
            })
            .collect();
    Ok(CechCocycle { g })
}

/// Strict convexity of the support function: `<m_sigma, v_rho> > -a_rho`
/// for every max cone and every ray outside it.
pub fn is_ample(f: &Fan, d: &TorusInvariantDivisor) -> Result<bool, FanError> {
    check_divisor(f, d)?;
    let report = validate_fan(f);
    if !report.complete {
        return Err(FanError::NotComplete);
    }
    if !report.smooth {
        return Err(FanError::NotSmooth);
    }
    let cd = cartier_data(f, d)?;
    for (cone, m) in f.max_cones.iter().zip(&cd.m) {
        for (rho, v) in f.rays.iter().enumerate() {
            if cone.contains(&rho) {
                continue;
            }
            let pairing: i64 = m.iter().zip(v).map(|(a, b)| a * b).sum();
            if pairing <= -d.0[rho] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `-K = sum D_rho`.
pub fn anticanonical(f: &Fan) -> TorusInvariantDivisor {
    TorusInvariantDivisor(vec![1; f.num_rays()])
}
