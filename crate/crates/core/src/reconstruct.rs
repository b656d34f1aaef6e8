//! Rebuilding a smooth complete fan from the grading of its Cox ring.
//!
//! The rays are the rows of a kernel basis of `Q`. An integral lift of the
//! ample class cuts out a polytope whose normal fan is the answer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cox::{CoxData, CoxError};
use crate::fan::{
    anticanonical, class_group, is_ample, validate_fan, Fan, FanDefect, FanError,
    TorusInvariantDivisor,
};
use crate::lattice::{
    gcd_of, kernel_basis, smith_normal_form, solve_integer, to_bigint_vec, to_i64_vec,
    IntegerMatrix, LatticeError,
};
use crate::polyhedral::{PolyhedralError, RationalPolytope};

/// Why grading data fails to describe a smooth fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SmoothnessDefect {
    /// Row `index` of the kernel basis has content `multiplicity > 1`.
    NonPrimitiveRay {
        index: usize,
        multiplicity: i64,
    },
    /// The normal cone at vertex `vertex` has `active` rays, not `dim`.
    NonSimplicial {
        vertex: usize,
        active: usize,
    },
    NonUnimodular {
        cone: Vec<usize>,
    },
    /// The assembled fan still failed validation.
    Validation {
        simplicial: bool,
        smooth: bool,
        complete: bool,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("grading input: {0}")]
    Parse(String),
    #[error("grading matrix has {rows} rows but the class has {len} entries")]
    Shape { rows: usize, len: usize },
    #[error("grading matrix is not surjective onto Z^r")]
    NotSurjective,
    #[error("variable {index} gives a zero ray")]
    DegenerateRay { index: usize },
    #[error("grading does not come from a smooth fan: {0:?}")]
    NotSmooth(SmoothnessDefect),
    #[error("class is not ample: {0}")]
    NotAmpleLift(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("fan assembly: {0:?}")]
    Malformed(FanDefect),
    #[error(transparent)]
    Cox(#[from] CoxError),
}

/// A degree matrix `Q` (`r` rows, one column per variable) and an ample
/// class `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingInput {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<i64>>,
    pub w: Vec<i64>,
}

impl GradingInput {
    pub fn from_json(text: &str) -> Result<Self, ReconstructError> {
        let gi: Self =
            serde_json::from_str(text).map_err(|e| ReconstructError::Parse(e.to_string()))?;
        let width = gi.q.first().map_or(0, Vec::len);
        if gi.q.is_empty() || width == 0 || gi.q.iter().any(|r| r.len() != width) {
            return Err(ReconstructError::Parse(
                "Q must be a nonempty rectangular matrix".into(),
            ));
        }
        Ok(gi)
    }

    pub fn matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows_i64(&self.q, self.num_vars()).expect("rectangular")
    }

    pub fn num_vars(&self) -> usize {
        self.q.first().map_or(0, Vec::len)
    }
}

/// Kernel-basis rows, primitivized, with the content of each raw row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaleRays {
    pub rays: Vec<Vec<i64>>,
    pub multiplicities: Vec<i64>,
}

impl GaleRays {
    pub fn all_primitive(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }
}

fn check_input(gi: &GradingInput) -> Result<IntegerMatrix, ReconstructError> {
    let q = gi.matrix();
    if q.rows() != gi.w.len() {
        return Err(ReconstructError::Shape {
            rows: q.rows(),
            len: gi.w.len(),
        });
    }
    let snf = smith_normal_form(&q);
    if snf.rank() != q.rows() || snf.diagonal().iter().any(|d| !d.is_one()) {
        return Err(ReconstructError::NotSurjective);
    }
    Ok(q)
}

fn rays_from_kernel(kernel: &IntegerMatrix) -> Result<GaleRays, ReconstructError> {
    let mut rays = Vec::with_capacity(kernel.rows());
    let mut multiplicities = Vec::with_capacity(kernel.rows());
    for (i, row) in kernel.row_vecs().into_iter().enumerate() {
        let g = gcd_of(&row);
        if g.is_zero() {
            return Err(ReconstructError::DegenerateRay { index: i });
        }
        let prim: Vec<BigInt> = row.iter().map(|x| x / &g).collect();
        rays.push(to_i64_vec(&prim)?);
        multiplicities.push(crate::lattice::to_i64(&g)?);
    }
    Ok(GaleRays {
        rays,
        multiplicities,
    })
}

pub fn gale_dual_rays(gi: &GradingInput) -> Result<GaleRays, ReconstructError> {
    let q = check_input(gi)?;
    rays_from_kernel(&kernel_basis(&q))
}

pub fn reconstruct_fan(gi: &GradingInput) -> Result<Fan, ReconstructError> {
    let q = check_input(gi)?;
    reconstruct_with_kernel(gi, &q, &kernel_basis(&q))
}

/// Normal fan of `{m : <m, v_i> >= -a_i}` where the `v_i` are the rows of
/// `kernel` and `Q a = w`.
fn reconstruct_with_kernel(
    gi: &GradingInput,
    q: &IntegerMatrix,
    kernel: &IntegerMatrix,
) -> Result<Fan, ReconstructError> {
    let gale = rays_from_kernel(kernel)?;
    if let Some(index) = gale.multiplicities.iter().position(|&m| m != 1) {
        return Err(ReconstructError::NotSmooth(
            SmoothnessDefect::NonPrimitiveRay {
                index,
                multiplicity: gale.multiplicities[index],
            },
        ));
    }
    let n = kernel.cols();
    let lift = solve_integer(q, &to_bigint_vec(&gi.w))?.ok_or(ReconstructError::NotSurjective)?;
    let polytope = RationalPolytope::new(
        n,
        gale.rays
            .iter()
            .zip(&lift)
            .map(|(v, a)| (to_bigint_vec(v), a.clone()))
            .collect(),
    )?;
    let vertices = match polytope.vertices() {
        Ok(v) => v,
        Err(PolyhedralError::UnboundedPolytope) => {
            return Err(ReconstructError::NotAmpleLift(
                "section polytope is unbounded".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    if vertices.is_empty() {
        return Err(ReconstructError::NotAmpleLift(
            "section polytope is empty".into(),
        ));
    }
    if affine_dimension(&vertices) < n {
        return Err(ReconstructError::NotAmpleLift(
            "section polytope is not full-dimensional".into(),
        ));
    }
    let mut cones = Vec::with_capacity(vertices.len());
    let mut used = vec![false; gale.rays.len()];
    for (vi, vertex) in vertices.iter().enumerate() {
        let active: Vec<usize> = gale
            .rays
            .iter()
            .zip(&lift)
            .enumerate()
            .filter(|(_, (v, a))| {
                let pairing: BigRational = vertex
                    .iter()
                    .zip(v.iter())
                    .map(|(x, &c)| x * BigInt::from(c))
                    .sum();
                pairing + BigRational::from_integer((*a).clone()) == BigRational::zero()
            })
            .map(|(i, _)| i)
            .collect();
        if active.len() != n {
            return Err(ReconstructError::NotSmooth(
                SmoothnessDefect::NonSimplicial {
                    vertex: vi,
                    active: active.len(),
                },
            ));
        }
        let sub: Vec<Vec<i64>> = active.iter().map(|&i| gale.rays[i].clone()).collect();
        if !IntegerMatrix::from_rows_i64(&sub, n)?.is_unimodular() {
            return Err(ReconstructError::NotSmooth(
                SmoothnessDefect::NonUnimodular { cone: active },
            ));
        }
        for &i in &active {
            used[i] = true;
        }
        cones.push(active);
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(ReconstructError::NotAmpleLift(format!(
            "ray {i} is inactive at every vertex"
        )));
    }
    cones.sort();
    let fan = Fan::new(n, gale.rays, cones).map_err(ReconstructError::Malformed)?;
    let report = validate_fan(&fan);
    if !report.smooth_and_complete() {
        return Err(ReconstructError::NotSmooth(SmoothnessDefect::Validation {
            simplicial: report.simplicial,
            smooth: report.smooth,
            complete: report.complete,
        }));
    }
    Ok(fan)
}

fn affine_dimension(points: &[Vec<BigRational>]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rational_rank(diffs)
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Grading data of a fan with `w = [D]`.
pub fn grading_of(f: &Fan, d: &TorusInvariantDivisor) -> Result<GradingInput, ReconstructError> {
    let cd = CoxData::new(f.clone())?;
    let q = cd.degree_map().matrix.to_i64_rows()?;
    Ok(GradingInput {
        q,
        w: cd.class_of(d),
    })
}

/// Rebuilds `f` from `(Q, [D])`, reusing `f`'s own ray matrix as the kernel
/// basis so that equality is literal.
pub fn roundtrip_check(f: &Fan, d: &TorusInvariantDivisor) -> Result<bool, ReconstructError> {
    if !is_ample(f, d)? {
        return Err(ReconstructError::NotAmpleLift(
            "divisor is not ample".into(),
        ));
    }
    let gi = grading_of(f, d)?;
    let q = check_input(&gi)?;
    let cg = class_group(f)?;
    let rebuilt = reconstruct_with_kernel(&gi, &q, &cg.div_map.matrix)?;
    Ok(rebuilt.rays() == f.rays() && rebuilt.canonical_cones() == f.canonical_cones())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingCertificate {
    pub rank: usize,
    /// Degrees of the summands, sorted.
    pub degree_multiset: Vec<Vec<i64>>,
    pub anticanonical_check: bool,
    pub divisor_match: bool,
}

impl SplittingCertificate {
    pub fn holds(&self) -> bool {
        self.anticanonical_check && self.divisor_match
    }
}

pub fn splitting_certificate(f: &Fan) -> Result<SplittingCertificate, ReconstructError> {
    let cd = CoxData::new(f.clone())?;
    let degrees = cd.variable_degrees().to_vec();
    let r = cd.cl_rank();
    let mut sum = vec![0i64; r];
    for d in &degrees {
        for (a, x) in sum.iter_mut().zip(d) {
            *a += x;
        }
    }
    let divisor_match = degrees
        .iter()
        .enumerate()
        .all(|(rho, d)| cd.class_of(&TorusInvariantDivisor::prime(f.num_rays(), rho)) == *d);
    let mut multiset = degrees;
    multiset.sort();
    Ok(SplittingCertificate {
        rank: f.num_rays(),
        degree_multiset: multiset,
        anticanonical_check: sum == cd.class_of(&anticanonical(f)) && f.num_rays() == f.dim() + r,
        divisor_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn gi(q: &[Vec<i64>], w: &[i64]) -> GradingInput {
        GradingInput {
            q: q.to_vec(),
            w: w.to_vec(),
        }
    }

    #[test]
    fn gale_rays_of_the_plane() {
        let g = gale_dual_rays(&gi(&[vec![1, 1, 1]], &[1])).unwrap();
        assert_eq!(g.rays, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert!(g.all_primitive());
    }

    #[test]
    fn non_primitive_kernel_rows_are_flagged() {
        let g = gale_dual_rays(&gi(&[vec![1, 2]], &[1])).unwrap();
        assert_eq!(g.multiplicities.iter().filter(|&&m| m != 1).count(), 1);
        assert!(matches!(
            reconstruct_fan(&gi(&[vec![1, 2]], &[2])),
            Err(ReconstructError::NotSmooth(
                SmoothnessDefect::NonPrimitiveRay {
                    multiplicity: 2,
                    ..
                }
            ))
        ));
    }

    #[test]
    fn rejects_bad_shapes_and_non_surjective_gradings() {
        assert_eq!(
            reconstruct_fan(&gi(&[vec![2, 2, 2]], &[2])),
            Err(ReconstructError::NotSurjective)
        );
        assert!(matches!(
            reconstruct_fan(&gi(&[vec![1, 1, 1]], &[1, 1])),
            Err(ReconstructError::Shape { .. })
        ));
        assert!(matches!(
            reconstruct_fan(&gi(&[vec![1, 0, 1], vec![0, 1, 0]], &[1, 1])),
            Err(ReconstructError::DegenerateRay { .. })
        ));
    }

    #[test]
    fn reconstructs_the_plane() {
        let f = reconstruct_fan(&gi(&[vec![1, 1, 1]], &[1])).unwrap();
        assert_eq!(f.max_cones().len(), 3);
        assert!(validate_fan(&f).smooth_and_complete());
    }

    #[test]
    fn reconstructs_products_and_hirzebruch() {
        let q = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]];
        let f = reconstruct_fan(&gi(&q, &[1, 1])).unwrap();
        assert_eq!(f.max_cones().len(), 4);
        let f1 = vec![vec![1, -1, 1, 0], vec![0, 1, 0, 1]];
        let f = reconstruct_fan(&gi(&f1, &[1, 2])).unwrap();
        assert_eq!(f.max_cones().len(), 4);
        // the class group of the rebuilt fan is graded by the same matrix
        let cd = CoxData::new(f).unwrap();
        assert_eq!(cd.degree_map().matrix.to_i64_rows().unwrap(), f1);
    }

    #[test]
    fn semiample_class_is_not_enough() {
        let q = vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]];
        assert!(matches!(
            reconstruct_fan(&gi(&q, &[1, 0])),
            Err(ReconstructError::NotAmpleLift(_))
        ));
        assert!(matches!(
            reconstruct_fan(&gi(&q, &[-1, 1])),
            Err(ReconstructError::NotAmpleLift(_))
        ));
        let d = TorusInvariantDivisor(vec![1, 0, 0, 0]);
        assert!(matches!(
            roundtrip_check(&corpus::p1xp1(), &d),
            Err(ReconstructError::NotAmpleLift(_))
        ));
    }

    #[test]
    fn round_trips() {
        assert!(roundtrip_check(&corpus::p2(), &TorusInvariantDivisor::prime(3, 0)).unwrap());
        let f1 = corpus::hirzebruch(1);
        assert!(roundtrip_check(&f1, &anticanonical(&f1)).unwrap());
    }

    #[test]
    fn lifts_do_not_change_the_fan() {
        let f = corpus::hirzebruch(1);
        let cg = class_group(&f).unwrap();
        let d1 = TorusInvariantDivisor(vec![1, 1, 1, 1]);
        let d2 = TorusInvariantDivisor(vec![0, 1, 2, 1]);
        assert_eq!(grading_of(&f, &d1).unwrap(), grading_of(&f, &d2).unwrap());
        let gi = grading_of(&f, &d1).unwrap();
        let q = gi.matrix();
        let a = reconstruct_with_kernel(&gi, &q, &cg.div_map.matrix).unwrap();
        assert_eq!(a.canonical_cones(), f.canonical_cones());
        // a second lift, shifted by div(chi^m) for m = (1, -1)
        let shifted = TorusInvariantDivisor(
            d1.coefficients()
                .iter()
                .zip(f.rays())
                .map(|(c, v)| c + v[0] - v[1])
                .collect(),
        );
        assert_eq!(grading_of(&f, &shifted).unwrap().w, gi.w);
        assert!(roundtrip_check(&f, &shifted).unwrap());
    }

    #[test]
    fn certificates() {
        let c = splitting_certificate(&corpus::p2()).unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.degree_multiset, vec![vec![1], vec![1], vec![1]]);
        assert!(c.holds());
        let c = splitting_certificate(&corpus::hirzebruch(1)).unwrap();
        assert_eq!(
            c.degree_multiset,
            vec![vec![-1, 1], vec![0, 1], vec![1, 0], vec![1, 0]]
        );
        let c = splitting_certificate(&corpus::delpezzo6()).unwrap();
        assert_eq!((c.rank, c.degree_multiset.len()), (6, 6));
        assert!(c.holds());
    }

    #[test]
    fn grading_json() {
        let g = GradingInput::from_json(r#"{"Q": [[1,1,1]], "w": [1]}"#).unwrap();
        assert_eq!(g, gi(&[vec![1, 1, 1]], &[1]));
        assert!(GradingInput::from_json(r#"{"Q": [[1,1],[1]], "w": [1]}"#).is_err());
        assert!(GradingInput::from_json("{").is_err());
    }
}
