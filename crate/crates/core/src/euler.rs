//! The generalized Euler module `Γ(R) = ⊕_ρ S[-deg D_ρ]` of a smooth complete
//! toric variety, the universal derivation `d : S -> Γ(R)` and the weighted
//! Euler map `κ̂ : Γ(R) -> S`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cox::{CoxData, CoxError, GradedPolynomial};
use crate::fan::anticanonical;
use crate::par::Strategy;
use crate::poly::{Exponent, Polynomial, SparseSpan};
use crate::polyhedral::LinearFormKappa;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error(transparent)]
    Cox(#[from] CoxError),
    #[error("input is not homogeneous")]
    Inhomogeneous,
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("kappa has rank {got}, class group has rank {expected}")]
    KappaRank { expected: usize, got: usize },
    #[error("kappa is not positive on the degree of variable {variable}")]
    KappaNotPositive { variable: usize },
    #[error("candidate {index} is not homogeneous of positive weight")]
    BadCandidate { index: usize },
}

/// An element `Σ p_ρ e_ρ` of the Euler module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerModuleElement {
    pub components: Vec<Polynomial>,
    /// `None` when the components do not fit a single degree.
    pub degree: Option<Vec<i64>>,
}

impl EulerModuleElement {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

/// The free module over the Cox ring with basis `e_ρ` in degree `deg x_ρ`.
#[derive(Clone, Debug)]
pub struct EulerModule {
    cox: CoxData,
    basis_degrees: Vec<Vec<i64>>,
}

pub fn build_euler_module(cd: CoxData) -> EulerModule {
    EulerModule::new(cd)
}

impl EulerModule {
    pub fn new(cox: CoxData) -> Self {
        let basis_degrees = cox.variable_degrees().to_vec();
        let m = Self { cox, basis_degrees };
        debug_assert_eq!(m.degree_sum(), m.anticanonical_class());
        m
    }

    pub fn cox(&self) -> &CoxData {
        &self.cox
    }

    pub fn rank(&self) -> usize {
        self.basis_degrees.len()
    }

    pub fn basis_degrees(&self) -> &[Vec<i64>] {
        &self.basis_degrees
    }

    pub fn degree_sum(&self) -> Vec<i64> {
        let mut s = vec![0; self.cox.cl_rank()];
        for d in &self.basis_degrees {
            for (a, x) in s.iter_mut().zip(d) {
                *a += x;
            }
        }
        s
    }

    pub fn anticanonical_class(&self) -> Vec<i64> {
        self.cox.class_of(&anticanonical(self.cox.fan()))
    }

    fn nvars(&self) -> usize {
        self.rank()
    }

    fn shifted(&self, lambda: &[i64], rho: usize) -> Vec<i64> {
        lambda
            .iter()
            .zip(&self.basis_degrees[rho])
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `Σ_ρ dim S^{λ - deg x_ρ}`.
    pub fn graded_piece_dim(&self, lambda: &[i64]) -> Result<usize, EulerError> {
        let mut total = 0;
        for rho in 0..self.rank() {
            total += self.cox.graded_dimension(&self.shifted(lambda, rho))?;
        }
        Ok(total)
    }

    pub fn basis_element(&self, rho: usize) -> EulerModuleElement {
        let mut components = vec![Polynomial::zero(self.nvars()); self.rank()];
        components[rho] = Polynomial::one(self.nvars());
        EulerModuleElement {
            components,
            degree: Some(self.basis_degrees[rho].clone()),
        }
    }

    /// Builds an element and works out its degree.
    pub fn element(&self, components: Vec<Polynomial>) -> Result<EulerModuleElement, EulerError> {
        if components.len() != self.rank() {
            return Err(EulerError::ComponentCount {
                expected: self.rank(),
                got: components.len(),
            });
        }
        let mut degree: Option<Vec<i64>> = None;
        let mut homogeneous = true;
        for (rho, p) in components.iter().enumerate() {
            let Ok(g) = self.cox.grade(p) else {
                homogeneous = false;
                break;
            };
            if p.is_zero() {
                continue;
            }
            let d: Vec<i64> = g
                .degree
                .iter()
                .zip(&self.basis_degrees[rho])
                .map(|(a, b)| a + b)
                .collect();
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => homogeneous = false,
                _ => {}
            }
        }
        let degree = if homogeneous {
            Some(degree.unwrap_or_else(|| vec![0; self.cox.cl_rank()]))
        } else {
            None
        };
        Ok(EulerModuleElement { components, degree })
    }

    pub fn add(&self, a: &EulerModuleElement, b: &EulerModuleElement) -> EulerModuleElement {
        let components = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.add(y))
            .collect();
        self.element(components).expect("same rank")
    }

    /// `f · ω`.
    pub fn mul_scalar(&self, f: &Polynomial, w: &EulerModuleElement) -> EulerModuleElement {
        let components = w.components.iter().map(|p| f.mul(p)).collect();
        self.element(components).expect("same rank")
    }

    /// `ds = Σ_ρ (∂s/∂x_ρ) e_ρ`.
    pub fn derivation(&self, s: &GradedPolynomial) -> Result<EulerModuleElement, EulerError> {
        let g = self
            .cox
            .grade(&s.poly)
            .map_err(|_| EulerError::Inhomogeneous)?;
        if !s.poly.is_zero() && g.degree != s.degree {
            return Err(EulerError::Inhomogeneous);
        }
        let components = (0..self.rank()).map(|rho| s.poly.partial(rho)).collect();
        Ok(EulerModuleElement {
            components,
            degree: Some(s.degree.clone()),
        })
    }

    /// Derivation of an ungraded polynomial; fails unless it is homogeneous.
    pub fn derivation_of(&self, p: &Polynomial) -> Result<EulerModuleElement, EulerError> {
        let g = self.cox.grade(p).map_err(|_| EulerError::Inhomogeneous)?;
        self.derivation(&g)
    }

    fn kappa_weights(&self, kappa: &LinearFormKappa) -> Result<Vec<BigInt>, EulerError> {
        if kappa.rank() != self.cox.cl_rank() {
            return Err(EulerError::KappaRank {
                expected: self.cox.cl_rank(),
                got: kappa.rank(),
            });
        }
        let w: Vec<BigInt> = self
            .basis_degrees
            .iter()
            .map(|d| kappa.eval_i64(d))
            .collect();
        if let Some(v) = w.iter().position(|x| !x.is_positive()) {
            return Err(EulerError::KappaNotPositive { variable: v });
        }
        Ok(w)
    }

    /// `κ̂(Σ p_ρ e_ρ) = Σ_ρ κ(deg x_ρ) x_ρ p_ρ`.
    pub fn kappa_hat(
        &self,
        w: &EulerModuleElement,
        kappa: &LinearFormKappa,
    ) -> Result<GradedPolynomial, EulerError> {
        let degree = w.degree.clone().ok_or(EulerError::Inhomogeneous)?;
        let weights = self.kappa_weights(kappa)?;
        let mut poly = Polynomial::zero(self.nvars());
        for (rho, p) in w.components.iter().enumerate() {
            poly = poly.add(&p.mul_variable(rho).scale_int(&weights[rho]));
        }
        Ok(GradedPolynomial { poly, degree })
    }

    /// `κ̂(e_ρ) = κ(deg x_ρ) x_ρ` for every basis element.
    pub fn generation_transfer(
        &self,
        kappa: &LinearFormKappa,
    ) -> Result<Vec<GradedPolynomial>, EulerError> {
        (0..self.rank())
            .map(|rho| self.kappa_hat(&self.basis_element(rho), kappa))
            .collect()
    }

    /// The preimage `dm / κ(deg m)` of a monomial under `κ̂`.
    pub fn surjectivity_witness(
        &self,
        m: &[u32],
        kappa: &LinearFormKappa,
    ) -> Result<EulerModuleElement, EulerError> {
        let s = self.cox.grade(&Polynomial::from_exponent(m.to_vec()))?;
        let k = kappa.eval_i64(&s.degree);
        let dm = self.derivation(&s)?;
        if k.is_zero() {
            return Ok(dm);
        }
        let inv = BigRational::new(BigInt::one(), k);
        let components = dm.components.iter().map(|p| p.scale(&inv)).collect();
        Ok(EulerModuleElement {
            components,
            degree: dm.degree,
        })
    }

    /// Checks `κ̂(ds) = κ(deg s)·s` on every monomial of κ-weight at most
    /// `bound` and on `trials` random homogeneous polynomials.
    pub fn verify_euler_identity(
        &self,
        kappa: &LinearFormKappa,
        bound: i64,
        trials: usize,
        seed: u64,
        strategy: Strategy,
    ) -> Result<IdentityReport, EulerError> {
        self.kappa_weights(kappa)?;
        let monomials = self.cox.monomials_up_to_weight(bound);
        let check = |p: &Polynomial| -> Result<bool, EulerError> {
            let s = self.cox.grade(p).map_err(|_| EulerError::Inhomogeneous)?;
            let lhs = self.kappa_hat(&self.derivation(&s)?, kappa)?;
            let rhs = s.poly.scale_int(&kappa.eval_i64(&s.degree));
            Ok(lhs.poly == rhs && lhs.degree == s.degree)
        };
        let polys: Vec<Polynomial> = monomials
            .iter()
            .map(|e| Polynomial::from_exponent(e.clone()))
            .collect();
        let mono_ok = strategy.try_map(&polys, check)?;
        let mut failures: Vec<String> = polys
            .iter()
            .zip(&mono_ok)
            .filter(|(_, ok)| !**ok)
            .map(|(p, _)| p.to_string())
            .collect();
        let randoms = self.random_homogeneous_batch(bound, trials, seed);
        for p in &randoms {
            if !check(p)? {
                failures.push(p.to_string());
            }
        }
        Ok(IdentityReport {
            checked: polys.len() + randoms.len(),
            failures,
        })
    }

    /// Checks `d(st) = s·dt + t·ds` on `trials` random homogeneous pairs.
    pub fn verify_leibniz(
        &self,
        bound: i64,
        trials: usize,
        seed: u64,
    ) -> Result<IdentityReport, EulerError> {
        let ss = self.random_homogeneous_batch(bound, trials, seed);
        let ts = self.random_homogeneous_batch(bound, trials, seed.wrapping_add(1));
        let mut failures = Vec::new();
        for (s, t) in ss.iter().zip(&ts) {
            let lhs = self.derivation_of(&s.mul(t))?;
            let rhs = self.add(
                &self.mul_scalar(s, &self.derivation_of(t)?),
                &self.mul_scalar(t, &self.derivation_of(s)?),
            );
            if lhs.components != rhs.components {
                failures.push(format!("({s}) * ({t})"));
            }
        }
        Ok(IdentityReport {
            checked: ss.len(),
            failures,
        })
    }

    /// Every `κ̂` output over the monomials of weight at most `bound` has no
    /// constant term, and each monomial is hit by its witness.
    pub fn verify_surjectivity(
        &self,
        kappa: &LinearFormKappa,
        bound: i64,
    ) -> Result<SurjectivityReport, EulerError> {
        let monomials = self.cox.monomials_up_to_weight(bound);
        let mut constant_terms = 0;
        let mut missed = Vec::new();
        let mut positive = 0;
        for m in &monomials {
            let image = self.kappa_hat(&self.surjectivity_witness(m, kappa)?, kappa)?;
            if !image.poly.constant_term().is_zero() {
                constant_terms += 1;
            }
            if m.iter().all(|&k| k == 0) {
                // S^0 is not in the image; the witness of 1 is zero
                continue;
            }
            positive += 1;
            if image.poly != Polynomial::from_exponent(m.clone()) {
                missed.push(Polynomial::from_exponent(m.clone()).to_string());
            }
        }
        for rho in 0..self.rank() {
            let image = self.kappa_hat(&self.basis_element(rho), kappa)?;
            if !image.poly.constant_term().is_zero() {
                constant_terms += 1;
            }
        }
        Ok(SurjectivityReport {
            checked: positive,
            constant_terms,
            missed,
        })
    }

    /// Random homogeneous polynomials: a random monomial of weight at most
    /// `bound` fixes the degree, then a few monomials of that degree get
    /// small random coefficients.
    pub fn random_homogeneous_batch(&self, bound: i64, count: usize, seed: u64) -> Vec<Polynomial> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monomials = self.cox.monomials_up_to_weight(bound);
        let mut by_degree: BTreeMap<Vec<i64>, Vec<Exponent>> = BTreeMap::new();
        for m in &monomials {
            by_degree
                .entry(self.cox.degree_of(m))
                .or_default()
                .push(m.clone());
        }
        (0..count)
            .map(|_| {
                let m = monomials.choose(&mut rng).expect("1 has weight 0");
                let pool = &by_degree[&self.cox.degree_of(m)];
                let k = rng.gen_range(1..=pool.len().min(4));
                let terms = pool.choose_multiple(&mut rng, k).map(|e| {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-5i64..=5);
                    }
                    (e.clone(), BigRational::from_integer(BigInt::from(c)))
                });
                Polynomial::from_terms(self.nvars(), terms)
            })
            .collect()
    }

    /// Bookkeeping for the section sequence `0 -> Γ(Ω(λ)) -> Γ(R(λ)) -> Λ⊗S^λ`
    /// at each degree of `window`.
    pub fn tinvariant_decomposition_check(
        &self,
        window: &[Vec<i64>],
    ) -> Result<DecompositionReport, EulerError> {
        let rows = window
            .iter()
            .map(|l| self.decomposition_row(l))
            .collect::<Result<Vec<_>, _>>()?;
        let n = self.cox.fan().dim();
        let r = self.cox.cl_rank();
        Ok(DecompositionReport {
            rank: self.rank(),
            dim: n,
            cl_rank: r,
            rows,
        })
    }

    fn decomposition_row(&self, lambda: &[i64]) -> Result<DecompositionRow, EulerError> {
        let r = self.cox.cl_rank();
        let target_dim = self.cox.graded_dimension(lambda)?;
        let mut span: SparseSpan<(usize, Exponent)> = SparseSpan::new();
        let mut module_dim = 0;
        for rho in 0..self.rank() {
            for m in self.cox.monomial_basis(&self.shifted(lambda, rho))? {
                module_dim += 1;
                let mut e = m.clone();
                e[rho] += 1;
                let v: BTreeMap<(usize, Exponent), BigRational> = self.basis_degrees[rho]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| ((i, e.clone()), BigRational::from_integer(BigInt::from(c))))
                    .collect();
                span.insert(v);
            }
        }
        let image_rank = span.rank();
        Ok(DecompositionRow {
            degree: lambda.to_vec(),
            module_dim,
            target_dim: r * target_dim,
            image_rank,
            omega_dim: module_dim - image_rank,
            cokernel_dim: r * target_dim - image_rank,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub checked: usize,
    /// `κ̂` outputs with a nonzero constant term.
    pub constant_terms: usize,
    pub missed: Vec<String>,
}

impl SurjectivityReport {
    pub fn holds(&self) -> bool {
        self.constant_terms == 0 && self.missed.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRow {
    pub degree: Vec<i64>,
    /// `dim Γ(R)_λ`.
    pub module_dim: usize,
    /// `r · dim S^λ`.
    pub target_dim: usize,
    pub image_rank: usize,
    /// `dim Γ(Ω(λ))`, the kernel.
    pub omega_dim: usize,
    pub cokernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub rank: usize,
    pub dim: usize,
    pub cl_rank: usize,
    pub rows: Vec<DecompositionRow>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.rank == self.dim + self.cl_rank
            && self
                .rows
                .iter()
                .all(|r| r.module_dim == r.omega_dim + r.image_rank && r.image_rank <= r.target_dim)
    }
}

/// Whether `candidates` generate the polynomial ring with variable
/// `weights` in every weighted degree up to `bound`, over the rationals.
pub fn little_hilbert_check(
    weights: &[i64],
    candidates: &[Polynomial],
    bound: i64,
) -> Result<bool, EulerError> {
    let nvars = weights.len();
    let weight_of =
        |e: &[u32]| -> i64 { e.iter().zip(weights).map(|(&k, &w)| i64::from(k) * w).sum() };
    let mut cand = Vec::with_capacity(candidates.len());
    for (i, c) in candidates.iter().enumerate() {
        let ws: Vec<i64> = c.terms().map(|(e, _)| weight_of(e)).collect();
        match ws.first() {
            Some(&w) if w > 0 && ws.iter().all(|&x| x == w) && c.nvars() == nvars => {
                cand.push((w, c))
            }
            _ => return Err(EulerError::BadCandidate { index: i }),
        }
    }
    let Ok(top) = usize::try_from(bound) else {
        return Ok(true);
    };
    // spans[d] = degree-d part of the subalgebra generated so far
    let mut spans: Vec<SparseSpan<Exponent>> = vec![SparseSpan::new(); top + 1];
    spans[0].insert(Polynomial::one(nvars).to_sparse());
    for d in 1..=top {
        let mut span = SparseSpan::new();
        for (w, c) in &cand {
            let Some(prev) = d.checked_sub(*w as usize) else {
                continue;
            };
            for v in spans[prev].vectors() {
                span.insert(
                    c.mul(&Polynomial::from_sparse(nvars, v.clone()))
                        .to_sparse(),
                );
            }
        }
        if span.rank() != count_weighted(weights, d as i64) {
            return Ok(false);
        }
        spans[d] = span;
    }
    Ok(true)
}

/// Number of monomials of weight exactly `d`.
fn count_weighted(weights: &[i64], d: i64) -> usize {
    let mut ways = vec![0usize; d as usize + 1];
    ways[0] = 1;
    for &w in weights {
        for t in w as usize..=d as usize {
            ways[t] += ways[t - w as usize];
        }
    }
    ways[d as usize]
}

/// Positive weights for [`little_hilbert_check`] from a form `κ`.
pub fn kappa_weights(cd: &CoxData, kappa: &LinearFormKappa) -> Vec<i64> {
    cd.variable_degrees()
        .iter()
        .map(|d| kappa.eval_i64(d).to_i64().unwrap_or(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn em(f: crate::fan::Fan) -> EulerModule {
        EulerModule::new(CoxData::new(f).unwrap())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::from_exponent(e.to_vec())
    }

    #[test]
    fn ranks_and_degrees() {
        let p2 = em(corpus::p2());
        assert_eq!(p2.rank(), 3);
        assert_eq!(p2.basis_degrees(), &[vec![1], vec![1], vec![1]]);
        let f1 = em(corpus::hirzebruch(1));
        assert_eq!(
            f1.basis_degrees(),
            &[vec![1, 0], vec![-1, 1], vec![1, 0], vec![0, 1]]
        );
        assert_eq!(f1.degree_sum(), f1.anticanonical_class());
        assert_eq!(em(corpus::p1()).basis_degrees(), &[vec![1], vec![1]]);
    }

    #[test]
    fn graded_pieces() {
        let p2 = em(corpus::p2());
        assert_eq!(p2.graded_piece_dim(&[1]).unwrap(), 3);
        assert_eq!(p2.graded_piece_dim(&[0]).unwrap(), 0);
        assert_eq!(p2.graded_piece_dim(&[2]).unwrap(), 9);
    }

    #[test]
    fn derivations() {
        let p2 = em(corpus::p2());
        let d = p2.derivation_of(&mono(&[1, 0, 0])).unwrap();
        assert_eq!(
            d.components,
            vec![mono(&[0, 0, 0]), Polynomial::zero(3), Polynomial::zero(3)]
        );
        let d = p2.derivation_of(&mono(&[1, 2, 0])).unwrap();
        assert_eq!(
            d.components,
            vec![
                mono(&[0, 2, 0]),
                Polynomial::monomial(vec![1, 1, 0], q(2)),
                Polynomial::zero(3)
            ]
        );
        assert_eq!(d.degree, Some(vec![3]));
        assert!(p2
            .derivation_of(&Polynomial::constant(3, q(5)))
            .unwrap()
            .is_zero());
        let bad = mono(&[1, 0, 0]).add(&mono(&[2, 0, 0]));
        assert_eq!(p2.derivation_of(&bad), Err(EulerError::Inhomogeneous));
    }

    #[test]
    fn kappa_hat_examples() {
        let p2 = em(corpus::p2());
        let k = LinearFormKappa::from_i64(&[1]);
        let s = mono(&[1, 2, 0]);
        let out = p2.kappa_hat(&p2.derivation_of(&s).unwrap(), &k).unwrap();
        assert_eq!(out.poly, s.scale(&q(3)));
        assert_eq!(
            p2.kappa_hat(&p2.basis_element(0), &k).unwrap().poly,
            mono(&[1, 0, 0])
        );

        let f1 = em(corpus::hirzebruch(1));
        let k = LinearFormKappa::from_i64(&[1, 2]);
        let s = mono(&[0, 1, 0, 1]);
        let out = f1.kappa_hat(&f1.derivation_of(&s).unwrap(), &k).unwrap();
        assert_eq!(out.degree, vec![-1, 2]);
        assert_eq!(out.poly, s.scale(&q(3)));
    }

    #[test]
    fn kappa_hat_rejects_inhomogeneous_elements() {
        let p2 = em(corpus::p2());
        let w = p2
            .element(vec![
                mono(&[1, 0, 0]),
                mono(&[0, 0, 0]),
                Polynomial::zero(3),
            ])
            .unwrap();
        assert_eq!(w.degree, None);
        assert_eq!(
            p2.kappa_hat(&w, &LinearFormKappa::from_i64(&[1])),
            Err(EulerError::Inhomogeneous)
        );
        assert!(matches!(
            p2.kappa_hat(&p2.basis_element(0), &LinearFormKappa::from_i64(&[0])),
            Err(EulerError::KappaNotPositive { .. })
        ));
    }

    #[test]
    fn euler_identity_on_small_weights() {
        let p2 = em(corpus::p2());
        let k = p2.cox().kappa().clone();
        let rep = p2
            .verify_euler_identity(&k, 3, 0, 0, Strategy::Sequential)
            .unwrap();
        assert_eq!(rep.checked, 20);
        assert!(rep.holds());
        let f1 = em(corpus::hirzebruch(1));
        let k = LinearFormKappa::from_i64(&[1, 2]);
        for m in f1.cox().monomial_basis(&[1, 1]).unwrap() {
            let s = mono(&m);
            let out = f1.kappa_hat(&f1.derivation_of(&s).unwrap(), &k).unwrap();
            assert_eq!(out.poly, s.scale(&q(3)));
        }
        assert!(f1
            .verify_euler_identity(&k, 4, 10, 7, Strategy::default())
            .unwrap()
            .holds());
    }

    #[test]
    fn generation_transfer_outputs() {
        let f1 = em(corpus::hirzebruch(1));
        let k = LinearFormKappa::from_i64(&[1, 2]);
        let polys: Vec<Polynomial> = f1
            .generation_transfer(&k)
            .unwrap()
            .into_iter()
            .map(|g| g.poly)
            .collect();
        assert_eq!(polys[3], Polynomial::variable(4, 3).scale(&q(2)));
        assert_eq!(polys[0], Polynomial::variable(4, 0));
        assert!(little_hilbert_check(&kappa_weights(f1.cox(), &k), &polys, 6).unwrap());
        let p1 = em(corpus::p1());
        let polys: Vec<Polynomial> = p1
            .generation_transfer(p1.cox().kappa())
            .unwrap()
            .into_iter()
            .map(|g| g.poly)
            .collect();
        assert_eq!(
            polys,
            vec![Polynomial::variable(2, 0), Polynomial::variable(2, 1)]
        );
    }

    #[test]
    fn little_hilbert_examples() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        assert!(little_hilbert_check(&[1, 1], &[x.clone(), y.clone()], 5).unwrap());
        assert!(!little_hilbert_check(&[1, 1], &[x.mul(&x), y.clone()], 3).unwrap());
        assert!(
            !little_hilbert_check(&[1, 1], &[x.clone(), y.mul(&y), y.mul(&y).mul(&y)], 6).unwrap()
        );
        // x + y and x - y still generate
        assert!(little_hilbert_check(&[1, 1], &[x.add(&y), x.sub(&y)], 4).unwrap());
        assert_eq!(
            little_hilbert_check(&[1, 1], &[x.add(&x.mul(&y))], 2),
            Err(EulerError::BadCandidate { index: 0 })
        );
        assert_eq!(count_weighted(&[1, 1, 2], 2), 4);
    }

    #[test]
    fn surjectivity_witnesses() {
        let f1 = em(corpus::hirzebruch(1));
        let rep = f1
            .verify_surjectivity(&LinearFormKappa::from_i64(&[1, 2]), 4)
            .unwrap();
        assert!(rep.holds());
        assert!(rep.checked > 0);
    }

    #[test]
    fn leibniz_on_random_pairs() {
        let q11 = em(corpus::p1xp1());
        let rep = q11.verify_leibniz(4, 20, 3).unwrap();
        assert_eq!(rep.checked, 20);
        assert!(rep.holds());
    }

    #[test]
    fn section_sequence_bookkeeping() {
        let p2 = em(corpus::p2());
        let rep = p2
            .tinvariant_decomposition_check(&[vec![0], vec![1], vec![2]])
            .unwrap();
        assert!(rep.holds());
        let omega: Vec<usize> = rep.rows.iter().map(|r| r.omega_dim).collect();
        // h0(Ω(2)) = 3 on the plane
        assert_eq!(omega, vec![0, 0, 3]);
        let p1 = em(corpus::p1());
        let row = &p1.tinvariant_decomposition_check(&[vec![2]]).unwrap().rows[0];
        assert_eq!((row.module_dim, row.omega_dim, row.target_dim), (4, 1, 3));
    }
}
