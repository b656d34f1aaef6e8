//! The Cox ring of a smooth complete toric variety as a `Cl`-graded
//! polynomial ring.
//!
//! The ring itself is never materialized. It is the polynomial ring in one
//! variable per ray, and everything is read off the degree map
//! `Q : Z^rays -> Cl`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fan::{class_group, validate_fan, Fan, FanError, FanReport, TorusInvariantDivisor};
use crate::lattice::{
    self, solve_integer, to_bigint_vec, to_i64_vec, IntegerMatrix, LatticeError, LatticeMap,
};
use crate::par::Strategy;
use crate::poly::{Exponent, Polynomial};
use crate::polyhedral::{
    strictly_positive_form, LinearFormKappa, PolyhedralError, RationalCone, RationalPolytope,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("fan must be smooth and complete (simplicial: {}, smooth: {}, complete: {})", .0.simplicial, .0.smooth, .0.complete)]
    NotSmoothComplete(FanReport),
    #[error("class group has torsion {0:?}")]
    Torsion(Vec<BigInt>),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("graded dimension oracles disagree at degree {degree:?}: fibers {fiber}, polytope {polytope}")]
    OracleMismatch {
        degree: Vec<i64>,
        fiber: usize,
        polytope: usize,
    },
    #[error("degree has {got} entries, expected {expected}")]
    DegreeLength { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("kappa is not positive on the degree of variable {variable}")]
    NotPositive { variable: usize },
}

/// A polynomial together with its degree in `Cl`. The zero polynomial may
/// carry any degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    pub poly: Polynomial,
    pub degree: Vec<i64>,
}

/// Generators of a monomial ideal, pairwise incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    pub generators: Vec<Exponent>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Drops duplicates and generators divisible by another, keeping the
    /// first-seen order of the survivors.
    pub fn minimal(generators: Vec<Exponent>) -> Self {
        let mut out: Vec<Exponent> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let redundant = generators
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && divides(h, g) && (h != g || j < i));
            if !redundant {
                out.push(g.clone());
            }
        }
        Self { generators: out }
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, e))
    }
}

/// Solves `Q_J x_J = rhs` for a fixed invertible set `J` of `r` columns:
/// `x_J = adj * rhs / det`.
#[derive(Clone, Debug)]
struct FiberSolver {
    basis: Vec<usize>,
    free: Vec<usize>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl FiberSolver {
    fn new(q: &IntegerMatrix) -> Result<Self, CoxError> {
        let r = q.rows();
        let n = q.cols();
        let subsets = combinations_desc(n, r);
        let mut fallback = None;
        for s in subsets {
            let det = q.select_columns(&s).determinant()?;
            if det.abs() == BigInt::from(1) {
                return Self::from_subset(q, s);
            }
            if !det.is_zero() && fallback.is_none() {
                fallback = Some(s);
            }
        }
        Self::from_subset(q, fallback.expect("degree map has full row rank"))
    }

    fn from_subset(q: &IntegerMatrix, basis: Vec<usize>) -> Result<Self, CoxError> {
        let r = q.rows();
        let sub = q.select_columns(&basis);
        let det = sub.determinant()?;
        // adjugate column j = det * (solution of sub x = e_j), computed exactly
        let inv = rational_inverse(&sub);
        let mut adj = vec![vec![0i128; r]; r];
        for i in 0..r {
            for j in 0..r {
                let v = &inv[i][j] * BigRational::from_integer(det.clone());
                adj[i][j] = v
                    .to_integer()
                    .to_i128()
                    .ok_or(LatticeError::Overflow(v.to_integer()))?;
            }
        }
        let free = (0..q.cols()).filter(|c| !basis.contains(c)).collect();
        Ok(Self {
            basis,
            free,
            adj,
            det: det.to_i128().ok_or(LatticeError::Overflow(det))?,
        })
    }

    fn solve(&self, rhs: &[i128]) -> Option<Vec<i128>> {
        let mut out = Vec::with_capacity(rhs.len());
        for row in &self.adj {
            let v: i128 = row.iter().zip(rhs).map(|(a, b)| a * b).sum();
            if v % self.det != 0 {
                return None;
            }
            out.push(v / self.det);
        }
        Some(out)
    }
}

/// All `k`-subsets of `0..n`, lexicographically last first.
fn combinations_desc(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

fn rational_inverse(m: &IntegerMatrix) -> Vec<Vec<BigRational>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(m.get(i, j).clone())
                    } else if j - n == i {
                        BigRational::from_integer(BigInt::from(1))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Grading data of the Cox ring of a smooth complete fan.
#[derive(Clone, Debug)]
pub struct CoxData {
    fan: Fan,
    degree_map: LatticeMap,
    /// `degrees[rho] = deg x_rho`.
    degrees: Vec<Vec<i64>>,
    names: Vec<String>,
    kappa: LinearFormKappa,
    weights: Vec<i64>,
    solver: FiberSolver,
}

impl CoxData {
    pub fn new(fan: Fan) -> Result<Self, CoxError> {
        let report = validate_fan(&fan);
        if !report.smooth_and_complete() {
            return Err(CoxError::NotSmoothComplete(report));
        }
        let cg = class_group(&fan)?;
        if !cg.presentation.is_free() {
            return Err(CoxError::Torsion(cg.presentation.invariant_factors));
        }
        let degree_map = cg.degree_map;
        let degrees: Vec<Vec<i64>> = degree_map.matrix.transpose().to_i64_rows()?;
        let names = (0..fan.num_rays()).map(|i| format!("x{i}")).collect();
        let r = degree_map.target_rank;
        let eff = RationalCone::new(r, degree_map.matrix.column_vecs())?;
        let kappa = strictly_positive_form(&eff, r)?;
        let weights = degrees
            .iter()
            .map(|d| lattice::to_i64(&kappa.eval_i64(d)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(v) = weights.iter().position(|&w| w < 1) {
            return Err(CoxError::NotPositive { variable: v });
        }
        let solver = FiberSolver::new(&degree_map.matrix)?;
        Ok(Self {
            fan,
            degree_map,
            degrees,
            names,
            kappa,
            weights,
            solver,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Rank of `Cl`.
    pub fn cl_rank(&self) -> usize {
        self.degree_map.target_rank
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_map(&self) -> &LatticeMap {
        &self.degree_map
    }

    pub fn variable_degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    /// `kappa(deg x_rho)` for every variable.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The positive form, chosen by the dual-cone rule.
    pub fn kappa(&self) -> &LinearFormKappa {
        &self.kappa
    }

    pub fn kappa_of(&self, degree: &[i64]) -> BigInt {
        self.kappa.eval_i64(degree)
    }

    pub fn degree_of(&self, e: &[u32]) -> Vec<i64> {
        let mut d = vec![0i64; self.cl_rank()];
        for (rho, &k) in e.iter().enumerate() {
            for (acc, x) in d.iter_mut().zip(&self.degrees[rho]) {
                *acc += i64::from(k) * x;
            }
        }
        d
    }

    /// Class of a torus-invariant divisor.
    pub fn class_of(&self, d: &TorusInvariantDivisor) -> Vec<i64> {
        let mut out = vec![0i64; self.cl_rank()];
        for (rho, &a) in d.coefficients().iter().enumerate() {
            for (acc, x) in out.iter_mut().zip(&self.degrees[rho]) {
                *acc += a * x;
            }
        }
        out
    }

    fn check_degree(&self, lambda: &[i64]) -> Result<(), CoxError> {
        if lambda.len() != self.cl_rank() {
            return Err(CoxError::DegreeLength {
                expected: self.cl_rank(),
                got: lambda.len(),
            });
        }
        Ok(())
    }

    /// Grades a polynomial; the zero polynomial gets degree 0.
    pub fn grade(&self, p: &Polynomial) -> Result<GradedPolynomial, CoxError> {
        let mut degree: Option<Vec<i64>> = None;
        for (e, _) in p.terms() {
            let d = self.degree_of(e);
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return Err(CoxError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(GradedPolynomial {
            poly: p.clone(),
            degree: degree.unwrap_or_else(|| vec![0; self.cl_rank()]),
        })
    }

    /// Some divisor of class `lambda`: the Smith-form particular solution.
    pub fn lift(&self, lambda: &[i64]) -> Result<TorusInvariantDivisor, CoxError> {
        self.check_degree(lambda)?;
        let x = solve_integer(&self.degree_map.matrix, &to_bigint_vec(lambda))?
            .expect("degree map is surjective for torsion-free class groups");
        Ok(TorusInvariantDivisor(to_i64_vec(&x)?))
    }

    /// `P_D = {m : <m, v_rho> >= -a_rho}`; its lattice points index a basis
    /// of the sections of `O(D)`.
    pub fn section_polytope(&self, d: &TorusInvariantDivisor) -> RationalPolytope {
        let ineqs = self
            .fan
            .rays()
            .iter()
            .zip(d.coefficients())
            .map(|(v, &a)| (to_bigint_vec(v), BigInt::from(a)))
            .collect();
        RationalPolytope::new(self.fan.dim(), ineqs).expect("ray lengths match")
    }

    pub fn section_dimension(&self, d: &TorusInvariantDivisor) -> Result<usize, CoxError> {
        Ok(self.section_polytope(d).lattice_points()?.len())
    }

    /// Exponents `e >= 0` with `Q e = lambda`, sorted.
    pub fn monomial_basis(&self, lambda: &[i64]) -> Result<Vec<Exponent>, CoxError> {
        self.monomial_basis_with(lambda, Strategy::default())
    }

    pub fn monomial_basis_with(
        &self,
        lambda: &[i64],
        strategy: Strategy,
    ) -> Result<Vec<Exponent>, CoxError> {
        self.check_degree(lambda)?;
        let budget = lattice::to_i64(&self.kappa_of(lambda))?;
        if budget < 0 {
            return Ok(Vec::new());
        }
        let free = &self.solver.free;
        let target: Vec<i128> = lambda.iter().map(|&x| i128::from(x)).collect();
        let search = |first: &i64| -> Vec<Exponent> {
            let mut out = Vec::new();
            let mut e = vec![0u32; self.num_vars()];
            let mut rhs = target.clone();
            if let Some(&rho) = free.first() {
                e[rho] = *first as u32;
                for (acc, x) in rhs.iter_mut().zip(&self.degrees[rho]) {
                    *acc -= i128::from(*first) * i128::from(*x);
                }
                let spent = first * self.weights[rho];
                self.fiber_dfs(1, budget - spent, &mut e, &mut rhs, &mut out);
            } else {
                self.fiber_dfs(0, budget, &mut e, &mut rhs, &mut out);
            }
            out
        };
        let firsts: Vec<i64> = match free.first() {
            Some(&rho) => (0..=budget / self.weights[rho]).collect(),
            None => vec![0],
        };
        let mut out = strategy.flat_map(&firsts, search);
        out.sort();
        Ok(out)
    }

    fn fiber_dfs(
        &self,
        k: usize,
        budget: i64,
        e: &mut Exponent,
        rhs: &mut Vec<i128>,
        out: &mut Vec<Exponent>,
    ) {
        let free = &self.solver.free;
        if k == free.len() {
            if let Some(x) = self.solver.solve(rhs) {
                if x.iter().all(|&v| v >= 0) {
                    let mut full = e.clone();
                    for (&rho, &v) in self.solver.basis.iter().zip(&x) {
                        full[rho] = v as u32;
                    }
                    out.push(full);
                }
            }
            return;
        }
        let rho = free[k];
        let w = self.weights[rho];
        let mut used = 0;
        while used <= budget {
            self.fiber_dfs(k + 1, budget - used, e, rhs, out);
            e[rho] += 1;
            for (acc, x) in rhs.iter_mut().zip(&self.degrees[rho]) {
                *acc -= i128::from(*x);
            }
            used += w;
        }
        let steps = e[rho];
        for (acc, x) in rhs.iter_mut().zip(&self.degrees[rho]) {
            *acc += i128::from(steps) * i128::from(*x);
        }
        e[rho] = 0;
    }

    /// `dim S^lambda`, counted by monomial fibers and by the lattice points
    /// of a section polytope; an error if the two disagree.
    pub fn graded_dimension(&self, lambda: &[i64]) -> Result<usize, CoxError> {
        self.graded_dimension_with(lambda, Strategy::default())
    }

    pub fn graded_dimension_with(
        &self,
        lambda: &[i64],
        strategy: Strategy,
    ) -> Result<usize, CoxError> {
        let fiber = self.monomial_basis_with(lambda, strategy)?.len();
        let d = self.lift(lambda)?;
        let polytope = self
            .section_polytope(&d)
            .lattice_points_with(strategy)?
            .len();
        if fiber != polytope {
            return Err(CoxError::OracleMismatch {
                degree: lambda.to_vec(),
                fiber,
                polytope,
            });
        }
        Ok(fiber)
    }

    /// Every monomial whose kappa-weight is at most `bound`, sorted.
    pub fn monomials_up_to_weight(&self, bound: i64) -> Vec<Exponent> {
        fn rec(w: &[i64], k: usize, budget: i64, e: &mut Exponent, out: &mut Vec<Exponent>) {
            if k == w.len() {
                out.push(e.clone());
                return;
            }
            let mut used = 0;
            while used <= budget {
                rec(w, k + 1, budget - used, e, out);
                e[k] += 1;
                used += w[k];
            }
            e[k] = 0;
        }
        let mut out = Vec::new();
        if bound >= 0 {
            rec(
                &self.weights,
                0,
                bound,
                &mut vec![0; self.num_vars()],
                &mut out,
            );
        }
        out.sort();
        out
    }

    pub fn weight_of(&self, e: &[u32]) -> i64 {
        e.iter()
            .zip(&self.weights)
            .map(|(&k, &w)| i64::from(k) * w)
            .sum()
    }

    /// Cone spanned by the variable degrees, in canonical form.
    pub fn effective_cone(&self) -> RationalCone {
        RationalCone::new(self.cl_rank(), self.degree_map.matrix.column_vecs())
            .expect("degree lengths match")
            .canonical()
    }

    /// Generated by `prod_{rho not in sigma} x_rho` over maximal cones.
    pub fn irrelevant_ideal(&self) -> MonomialIdeal {
        let n = self.num_vars();
        let gens = self
            .fan
            .max_cones()
            .iter()
            .map(|cone| (0..n).map(|rho| u32::from(!cone.contains(&rho))).collect())
            .collect();
        MonomialIdeal::minimal(gens)
    }

    /// `lambda_0 = [D]`: sections of `O(D)` form the shifted module `S[lambda_0]`.
    pub fn shift_module_degree(&self, d: &TorusInvariantDivisor) -> Vec<i64> {
        self.class_of(d)
    }
}
