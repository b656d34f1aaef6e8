//! Exact rational cones and polytopes.
//!
//! Conversions between generator and inequality descriptions go through
//! one double-description routine, [`halfspace_intersection`]. Vectors are
//! kept integral and primitive throughout, so no rationals are needed until
//! polytope vertices are read off.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{dot, primitive, to_bigint_vec};
use crate::par::Strategy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyhedralError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("cone contains a line, so no strictly positive form exists")]
    NotPointed,
    #[error("dual cone yields no form positive on the Hilbert basis")]
    NoPositiveForm,
    #[error("enumeration window too large ({0} candidate points)")]
    TooLarge(u128),
}

/// Generator description of a cone: a lineality basis plus extreme rays
/// taken modulo the lineality space.
///
/// In canonical form the lineality basis is the primitive integral reduced
/// row echelon basis, each ray has been reduced against it (zero in every
/// pivot coordinate) and made primitive, and rays are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl ConeGenerators {
    /// All generators as a flat list, lineality vectors in both signs.
    pub fn as_generator_list(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::with_capacity(2 * self.lineality.len() + self.rays.len());
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out.extend(self.rays.iter().cloned());
        out
    }
}

#[derive(Clone, Debug, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn with_capacity(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// Generators of `{y in Q^dim : <a, y> >= 0 for every a in constraints}`,
/// by the double description method with the combinatorial adjacency test.
pub fn halfspace_intersection(
    dim: usize,
    constraints: &[Vec<BigInt>],
) -> Result<ConeGenerators, PolyhedralError> {
    if let Some(bad) = constraints.iter().find(|a| a.len() != dim) {
        return Err(PolyhedralError::DimensionMismatch {
            expected: dim,
            got: bad.len(),
        });
    }
    let m = constraints.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut rays: Vec<(Vec<BigInt>, BitSet)> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(li) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(li);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if !ao.is_zero() {
                    *other = primitive(&combine(&al, other, &-ao, &l));
                }
            }
            for (r, tight) in rays.iter_mut() {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = primitive(&combine(&al, r, &-ar, &l));
                }
                tight.insert(k);
            }
            // l is tight on every earlier constraint, being a lineality vector
            let mut tight = BitSet::with_capacity(m);
            for j in 0..k {
                tight.insert(j);
            }
            rays.push((primitive(&l), tight));
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() {
            for (i, (_, tight)) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    tight.insert(k);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, BitSet)> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].1.intersection(&rays[n].1);
                let adjacent =
                    !(0..rays.len()).any(|i| i != p && i != n && rays[i].1.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let v = primitive(&combine(&values[p], &rays[n].0, &-&values[n], &rays[p].0));
                let mut tight = common;
                tight.insert(k);
                next.push((v, tight));
            }
        }
        let mut kept = Vec::with_capacity(rays.len() + next.len());
        for (i, (r, mut tight)) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                tight.insert(k);
            }
            kept.push((r, tight));
        }
        kept.extend(next);
        rays = kept;
    }

    Ok(canonicalize(
        lineality,
        rays.into_iter().map(|(r, _)| r).collect(),
    ))
}

/// Primitive integral reduced row echelon basis of the span of `vectors`,
/// together with its pivot columns.
fn echelon_basis(vectors: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let Some(first) = vectors.first() else {
        return (Vec::new(), Vec::new());
    };
    let dim = first.len();
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (
        rows.iter().map(|row| clear_denominators(row)).collect(),
        pivots,
    )
}

/// Smallest positive integral multiple of a rational vector, made primitive.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    primitive(
        &v.iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect::<Vec<_>>(),
    )
}

fn canonicalize(lineality: Vec<Vec<BigInt>>, rays: Vec<Vec<BigInt>>) -> ConeGenerators {
    let (basis, pivots) = echelon_basis(&lineality);
    let mut reduced: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| {
            let mut r: Vec<BigRational> = r.into_iter().map(BigRational::from_integer).collect();
            for (b, &c) in basis.iter().zip(&pivots) {
                if r[c].is_zero() {
                    continue;
                }
                let f = &r[c] / BigRational::from_integer(b[c].clone());
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * BigRational::from_integer(y.clone());
                }
            }
            clear_denominators(&r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    reduced.sort();
    reduced.dedup();
    ConeGenerators {
        lineality: basis,
        rays: reduced,
    }
}

/// A rational polyhedral cone given by generators. The inequality
/// description is computed on first use and cached.
#[derive(Debug)]
pub struct RationalCone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
    facets: OnceLock<ConeGenerators>,
}

impl Clone for RationalCone {
    fn clone(&self) -> Self {
        let facets = OnceLock::new();
        if let Some(f) = self.facets.get() {
            let _ = facets.set(f.clone());
        }
        Self {
            dim: self.dim,
            generators: self.generators.clone(),
            facets,
        }
    }
}

impl PartialEq for RationalCone {
    /// Equality as point sets.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.minimal_generators() == other.minimal_generators()
    }
}

impl Eq for RationalCone {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Closure,
    RelativeInterior,
}

impl RationalCone {
    /// Generators are made primitive; zero vectors and duplicates dropped.
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self, PolyhedralError> {
        if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
            return Err(PolyhedralError::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let mut gens: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .map(|g| primitive(g))
            .collect();
        gens.sort();
        gens.dedup();
        Ok(Self {
            dim,
            generators: gens,
            facets: OnceLock::new(),
        })
    }

    pub fn from_i64(dim: usize, generators: &[Vec<i64>]) -> Result<Self, PolyhedralError> {
        Self::new(dim, generators.iter().map(|g| to_bigint_vec(g)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Inequality description: `x` lies in the cone iff `<l, x> = 0` for
    /// every lineality vector and `<r, x> >= 0` for every ray of the result.
    /// The rays are the facet normals.
    pub fn facet_description(&self) -> &ConeGenerators {
        self.facets.get_or_init(|| {
            halfspace_intersection(self.dim, &self.generators)
                .expect("generator dimensions checked")
        })
    }

    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facet_description().rays
    }

    /// Canonical generators: lineality basis plus extreme rays.
    pub fn minimal_generators(&self) -> ConeGenerators {
        halfspace_intersection(self.dim, &self.facet_description().as_generator_list())
            .expect("dimensions consistent")
    }

    /// The cone rebuilt from its canonical generators.
    pub fn canonical(&self) -> RationalCone {
        let g = self.minimal_generators();
        RationalCone {
            dim: self.dim,
            generators: g.as_generator_list(),
            facets: OnceLock::new(),
        }
    }

    pub fn dual(&self) -> RationalCone {
        RationalCone {
            dim: self.dim,
            generators: self.facet_description().as_generator_list(),
            facets: OnceLock::new(),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.minimal_generators().lineality.is_empty()
    }

    pub fn contains(&self, p: &[BigInt], mode: Containment) -> Result<bool, PolyhedralError> {
        if p.len() != self.dim {
            return Err(PolyhedralError::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        let f = self.facet_description();
        if f.lineality.iter().any(|l| !dot(l, p).is_zero()) {
            return Ok(false);
        }
        Ok(f.rays.iter().all(|r| {
            let v = dot(r, p);
            match mode {
                Containment::Closure => !v.is_negative(),
                Containment::RelativeInterior => v.is_positive(),
            }
        }))
    }

    pub fn contains_i64(&self, p: &[i64], mode: Containment) -> Result<bool, PolyhedralError> {
        self.contains(&to_bigint_vec(p), mode)
    }
}

/// `{y : <y, x> >= 0 for all x in c}`.
pub fn dual_cone(c: &RationalCone) -> RationalCone {
    c.dual()
}

pub fn cone_contains(
    c: &RationalCone,
    p: &[BigInt],
    mode: Containment,
) -> Result<bool, PolyhedralError> {
    c.contains(p, mode)
}

/// `{m : <normal_i, m> >= -offset_i for all i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    inequalities: Vec<(Vec<BigInt>, BigInt)>,
}

/// Vertex data of a polyhedron read off the homogenized cone.
#[derive(Clone, Debug)]
pub struct VertexData {
    /// Homogeneous vertex representatives `(m * t, t)` with `t > 0`.
    pub homogeneous: Vec<Vec<BigInt>>,
    pub recession: ConeGenerators,
}

impl VertexData {
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        self.homogeneous
            .iter()
            .map(|h| {
                let (t, m) = h.split_last().expect("homogeneous coordinate");
                m.iter()
                    .map(|x| BigRational::new(x.clone(), t.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.recession.lineality.is_empty() && self.recession.rays.is_empty()
    }
}

impl RationalPolytope {
    pub fn new(
        dim: usize,
        inequalities: Vec<(Vec<BigInt>, BigInt)>,
    ) -> Result<Self, PolyhedralError> {
        if let Some((bad, _)) = inequalities.iter().find(|(n, _)| n.len() != dim) {
            return Err(PolyhedralError::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        Ok(Self { dim, inequalities })
    }

    pub fn from_i64(dim: usize, inequalities: &[(Vec<i64>, i64)]) -> Result<Self, PolyhedralError> {
        Self::new(
            dim,
            inequalities
                .iter()
                .map(|(n, c)| (to_bigint_vec(n), BigInt::from(*c)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[(Vec<BigInt>, BigInt)] {
        &self.inequalities
    }

    pub fn satisfies(&self, m: &[BigInt]) -> bool {
        self.inequalities
            .iter()
            .all(|(n, c)| !(dot(n, m) + c).is_negative())
    }

    /// Vertices and recession cone via the cone over `P x {1}`.
    pub fn vertex_data(&self) -> VertexData {
        let mut constraints: Vec<Vec<BigInt>> = self
            .inequalities
            .iter()
            .map(|(n, c)| {
                n.iter()
                    .cloned()
                    .chain(std::iter::once(c.clone()))
                    .collect()
            })
            .collect();
        let mut t_nonneg = vec![BigInt::zero(); self.dim + 1];
        t_nonneg[self.dim] = BigInt::one();
        constraints.push(t_nonneg);
        let g = halfspace_intersection(self.dim + 1, &constraints).expect("dimensions checked");
        let (homogeneous, recession_rays): (Vec<_>, Vec<_>) =
            g.rays.into_iter().partition(|r| r[self.dim].is_positive());
        let strip = |v: Vec<BigInt>| v[..self.dim].to_vec();
        VertexData {
            homogeneous,
            recession: ConeGenerators {
                lineality: g.lineality.into_iter().map(strip).collect(),
                rays: recession_rays.into_iter().map(strip).collect(),
            },
        }
    }

    /// Vertices; an empty polytope has none.
    pub fn vertices(&self) -> Result<Vec<Vec<BigRational>>, PolyhedralError> {
        let data = self.vertex_data();
        if !data.homogeneous.is_empty() && !data.is_bounded() {
            return Err(PolyhedralError::UnboundedPolytope);
        }
        Ok(data.vertices())
    }

    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>, PolyhedralError> {
        self.lattice_points_with(Strategy::default())
    }

    /// Integer points, sorted lexicographically, found by scanning the
    /// integral bounding box of the vertices.
    pub fn lattice_points_with(
        &self,
        strategy: Strategy,
    ) -> Result<Vec<Vec<BigInt>>, PolyhedralError> {
        let vertices = self.vertices()?;
        if vertices.is_empty() {
            return Ok(Vec::new());
        }
        if self.dim == 0 {
            return Ok(if self.satisfies(&[]) {
                vec![Vec::new()]
            } else {
                Vec::new()
            });
        }
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let min = vertices.iter().map(|v| &v[i]).min().expect("nonempty");
            let max = vertices.iter().map(|v| &v[i]).max().expect("nonempty");
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut total: u128 = 1;
        for (l, h) in lo.iter().zip(&hi) {
            if h < l {
                return Ok(Vec::new());
            }
            let width = (h - l + 1u32).to_u128().unwrap_or(u128::MAX);
            total = total.saturating_mul(width);
        }
        if total > 50_000_000 {
            return Err(PolyhedralError::TooLarge(total));
        }
        let first: Vec<BigInt> = num_iter(&lo[0], &hi[0]);
        let rows = strategy.map(&first, |x0| {
            let mut out = Vec::new();
            let mut cur: Vec<BigInt> = std::iter::once(x0.clone())
                .chain(lo[1..].iter().cloned())
                .collect();
            loop {
                if self.satisfies(&cur) {
                    out.push(cur.clone());
                }
                // odometer over coordinates 1..dim, last coordinate fastest
                let mut i = self.dim;
                loop {
                    if i == 1 {
                        return out;
                    }
                    i -= 1;
                    if cur[i] < hi[i] {
                        cur[i] += 1u32;
                        break;
                    }
                    cur[i] = lo[i].clone();
                }
            }
        });
        Ok(rows.into_iter().flatten().collect())
    }
}

fn num_iter(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        out.push(x.clone());
        x += 1u32;
    }
    out
}

pub fn polytope_lattice_points(p: &RationalPolytope) -> Result<Vec<Vec<BigInt>>, PolyhedralError> {
    p.lattice_points()
}

/// Minimal generating set of the monoid `cone ∩ Z^dim` for a pointed cone.
///
/// Every irreducible element lies in the half-open zonotope spanned by the
/// extreme rays, so scanning the box bounded by the sum of their absolute
/// values is exhaustive.
pub fn hilbert_basis(cone: &RationalCone) -> Result<Vec<Vec<BigInt>>, PolyhedralError> {
    let gens = cone.minimal_generators();
    if !gens.lineality.is_empty() {
        return Err(PolyhedralError::NotPointed);
    }
    if gens.rays.is_empty() {
        return Ok(Vec::new());
    }
    let dim = cone.dim();
    let mut bound = vec![BigInt::zero(); dim];
    for r in &gens.rays {
        for (b, x) in bound.iter_mut().zip(r) {
            *b += x.abs();
        }
    }
    // inequalities -bound <= x_i <= bound plus the facets give a polytope
    let mut ineqs: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for (i, b) in bound.iter().enumerate() {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::one();
        ineqs.push((e.clone(), b.clone()));
        ineqs.push((e.iter().map(|x| -x).collect(), b.clone()));
    }
    for f in cone.facet_normals() {
        ineqs.push((f.clone(), BigInt::zero()));
    }
    for l in &cone.facet_description().lineality {
        ineqs.push((l.clone(), BigInt::zero()));
        ineqs.push((l.iter().map(|x| -x).collect(), BigInt::zero()));
    }
    let window = RationalPolytope::new(dim, ineqs)?;
    // a strictly positive weight orders points so summands come first
    let weight: Vec<BigInt> = cone
        .dual()
        .minimal_generators()
        .rays
        .iter()
        .fold(vec![BigInt::zero(); dim], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        });
    let mut points: Vec<(BigInt, Vec<BigInt>)> = window
        .lattice_points()?
        .into_iter()
        .filter(|p| p.iter().any(|x| !x.is_zero()))
        .map(|p| (dot(&weight, &p), p))
        .collect();
    points.sort();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for (_, p) in points {
        let reducible = basis.iter().any(|h| {
            let rest: Vec<BigInt> = p.iter().zip(h).map(|(a, b)| a - b).collect();
            cone.contains(&rest, Containment::Closure).unwrap_or(false)
        });
        if !reducible {
            basis.push(p);
        }
    }
    basis.sort();
    Ok(basis)
}

/// Integral linear form used to weight classes; positive on every nonzero
/// effective lattice point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFormKappa {
    pub coefficients: Vec<BigInt>,
}

impl LinearFormKappa {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self {
            coefficients: to_bigint_vec(coefficients),
        }
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        dot(&self.coefficients, x)
    }

    pub fn eval_i64(&self, x: &[i64]) -> BigInt {
        self.coefficients.iter().zip(x).map(|(c, &v)| c * v).sum()
    }
}

/// Picks `kappa` for a pointed effective cone: the sum of the primitive
/// extreme rays of the dual cone, scaled by the least positive integer that
/// makes it at least 1 on the Hilbert basis.
pub fn strictly_positive_form(
    eff: &RationalCone,
    lattice_rank: usize,
) -> Result<LinearFormKappa, PolyhedralError> {
    if eff.dim() != lattice_rank {
        return Err(PolyhedralError::DimensionMismatch {
            expected: lattice_rank,
            got: eff.dim(),
        });
    }
    if !eff.is_pointed() {
        return Err(PolyhedralError::NotPointed);
    }
    let dual = eff.dual().minimal_generators();
    let base = dual
        .rays
        .iter()
        .fold(vec![BigInt::zero(); lattice_rank], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        });
    let values: Vec<BigInt> = hilbert_basis(eff)?.iter().map(|h| dot(&base, h)).collect();
    let Some(min) = values.iter().min() else {
        return Ok(LinearFormKappa::new(base));
    };
    if !min.is_positive() {
        return Err(PolyhedralError::NoPositiveForm);
    }
    // integral values, so min >= 1 and the scale is 1; kept general anyway
    let scale = BigInt::one().div_ceil(min).max(BigInt::one());
    Ok(LinearFormKappa::new(
        base.into_iter().map(|x| x * &scale).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        to_bigint_vec(x)
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> RationalCone {
        RationalCone::from_i64(dim, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.dual(), c);
        assert_eq!(
            c.dual().minimal_generators().rays,
            vec![v(&[0, 1]), v(&[1, 0])]
        );
    }

    #[test]
    fn dual_of_hirzebruch_effective_cone() {
        let c = cone(2, &[&[1, 0], &[-1, 1]]);
        let d = c.dual().minimal_generators();
        assert!(d.lineality.is_empty());
        assert_eq!(d.rays, vec![v(&[0, 1]), v(&[1, 1])]);
    }

    #[test]
    fn full_space_and_origin_are_dual() {
        let full = cone(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let d = full.dual();
        assert!(d.generators().is_empty());
        let origin = cone(2, &[]);
        let g = origin.dual().minimal_generators();
        assert_eq!(g.lineality.len(), 2);
        assert!(g.rays.is_empty());
        assert_eq!(origin.dual(), full);
    }

    #[test]
    fn dual_is_an_involution_on_a_3d_cone() {
        let c = cone(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1], &[-1, 0, 2], &[1, 2, 1]],
        );
        assert_eq!(c.dual().dual(), c);
        for g in c.generators() {
            assert!(c.contains(g, Containment::Closure).unwrap());
        }
        for f in c.facet_normals() {
            for g in c.generators() {
                assert!(!dot(f, g).is_negative());
            }
        }
    }

    #[test]
    fn interior_points_detect_non_extreme_generators() {
        let c = cone(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(c.minimal_generators().rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let c = cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let g = c.minimal_generators();
        assert_eq!(g.lineality, vec![v(&[1, 0])]);
        assert_eq!(g.rays, vec![v(&[0, 1])]);
        assert!(!c.is_pointed());
    }

    #[test]
    fn containment_modes() {
        let c = cone(2, &[&[1, 0], &[-1, 1]]);
        assert!(c
            .contains_i64(&[0, 1], Containment::RelativeInterior)
            .unwrap());
        assert!(!c
            .contains_i64(&[0, 0], Containment::RelativeInterior)
            .unwrap());
        assert!(c.contains_i64(&[0, 0], Containment::Closure).unwrap());
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(q.contains_i64(&[1, 0], Containment::Closure).unwrap());
        assert!(!q
            .contains_i64(&[1, 0], Containment::RelativeInterior)
            .unwrap());
        assert!(cone(2, &[])
            .contains_i64(&[0, 0], Containment::RelativeInterior)
            .unwrap());
        assert!(matches!(
            q.contains_i64(&[1], Containment::Closure),
            Err(PolyhedralError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn relative_interior_of_a_lower_dimensional_cone() {
        let ray = cone(2, &[&[1, 1]]);
        assert!(ray
            .contains_i64(&[2, 2], Containment::RelativeInterior)
            .unwrap());
        assert!(!ray.contains_i64(&[2, 3], Containment::Closure).unwrap());
    }

    #[test]
    fn simplex_lattice_points() {
        let p =
            RationalPolytope::from_i64(2, &[(vec![1, 0], 0), (vec![0, 1], 0), (vec![-1, -1], 2)])
                .unwrap();
        let pts = p.lattice_points().unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_and_square_polytopes() {
        let empty = RationalPolytope::from_i64(1, &[(vec![1], -1), (vec![-1], 0)]).unwrap();
        assert!(empty.lattice_points().unwrap().is_empty());
        let square = RationalPolytope::from_i64(
            2,
            &[
                (vec![1, 0], 0),
                (vec![0, 1], 0),
                (vec![-1, 0], 1),
                (vec![0, -1], 1),
            ],
        )
        .unwrap();
        assert_eq!(square.lattice_points().unwrap().len(), 4);
        assert_eq!(square.vertices().unwrap().len(), 4);
    }

    #[test]
    fn unbounded_polytope_is_rejected() {
        let p = RationalPolytope::from_i64(2, &[(vec![1, 0], 0), (vec![0, 1], 0)]).unwrap();
        assert_eq!(p.lattice_points(), Err(PolyhedralError::UnboundedPolytope));
        let strip = RationalPolytope::from_i64(2, &[(vec![1, 0], 0), (vec![-1, 0], 1)]).unwrap();
        assert_eq!(
            strip.lattice_points(),
            Err(PolyhedralError::UnboundedPolytope)
        );
    }

    #[test]
    fn rational_vertices_are_exact() {
        // 2x >= 1, 2y >= 1, x + y <= 2: vertices (1/2,1/2),(3/2,1/2),(1/2,3/2)
        let p =
            RationalPolytope::from_i64(2, &[(vec![2, 0], -1), (vec![0, 2], -1), (vec![-1, -1], 2)])
                .unwrap();
        let verts = p.vertices().unwrap();
        assert_eq!(verts.len(), 3);
        assert_eq!(p.lattice_points().unwrap(), vec![v(&[1, 1])]);
    }

    #[test]
    fn hilbert_basis_of_hirzebruch_cone() {
        // unimodular, so (0,1) = (1,0) + (-1,1) is not irreducible
        let c = cone(2, &[&[1, 0], &[-1, 1]]);
        assert_eq!(hilbert_basis(&c).unwrap(), vec![v(&[-1, 1]), v(&[1, 0])]);
    }

    #[test]
    fn hilbert_basis_of_a_non_unimodular_cone() {
        // cone((1,0),(1,3)) needs (1,1),(1,2) as well
        let c = cone(2, &[&[1, 0], &[1, 3]]);
        assert_eq!(
            hilbert_basis(&c).unwrap(),
            vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2]), v(&[1, 3])]
        );
    }

    #[test]
    fn kappa_examples() {
        let k = strictly_positive_form(&cone(1, &[&[1]]), 1).unwrap();
        assert_eq!(k.coefficients, v(&[1]));
        let f1 = cone(2, &[&[1, 0], &[-1, 1]]);
        let k = strictly_positive_form(&f1, 2).unwrap();
        assert_eq!(k.coefficients, v(&[1, 2]));
        let vals: Vec<BigInt> = hilbert_basis(&f1)
            .unwrap()
            .iter()
            .map(|h| k.eval(h))
            .collect();
        assert_eq!(vals, v(&[1, 1]));
        assert_eq!(k.eval(&v(&[0, 1])), BigInt::from(2));
        assert_eq!(
            strictly_positive_form(&cone(2, &[&[1, 0], &[-1, 0]]), 2),
            Err(PolyhedralError::NotPointed)
        );
        assert!(matches!(
            strictly_positive_form(&f1, 3),
            Err(PolyhedralError::DimensionMismatch { .. })
        ));
    }
}
