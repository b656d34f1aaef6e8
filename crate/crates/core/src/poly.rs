//! Sparse polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// A polynomial in a fixed number of variables. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    /// Variables print as `x0, x1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn monomial(exponent: Exponent, c: BigRational) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { nvars, terms }
    }

    /// The monomial with coefficient 1.
    pub fn from_exponent(exponent: Exponent) -> Self {
        Self::monomial(exponent, BigRational::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_exponent(e)
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.nvars])
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the variable `x_i`.
    pub fn mul_variable(&self, i: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }
}

/// Row space of sparse rational vectors, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SparseSpan<K: Ord + Clone> {
    basis: Vec<(K, BTreeMap<K, BigRational>)>,
}

impl<K: Ord + Clone> Default for SparseSpan<K> {
    fn default() -> Self {
        Self { basis: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, mut v: BTreeMap<K, BigRational>) -> BTreeMap<K, BigRational> {
        for (pivot, b) in &self.basis {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            for (k, x) in b {
                let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, BigRational>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: BTreeMap<K, BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        v.values_mut().for_each(|x| *x *= &inv);
        for (_, b) in self.basis.iter_mut() {
            let Some(c) = b.get(&pivot).cloned() else {
                continue;
            };
            for (k, x) in &v {
                let e = b.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    b.remove(k);
                }
            }
        }
        self.basis.push((pivot, v));
        true
    }

    /// The echelon basis vectors.
    pub fn vectors(&self) -> impl Iterator<Item = &BTreeMap<K, BigRational>> {
        self.basis.iter().map(|(_, b)| b)
    }
}

impl Polynomial {
    /// Coefficients keyed by exponent, for use with [`SparseSpan`].
    pub fn to_sparse(&self) -> BTreeMap<Exponent, BigRational> {
        self.terms.clone()
    }

    pub fn from_sparse(nvars: usize, v: BTreeMap<Exponent, BigRational>) -> Self {
        Self::from_terms(nvars, v)
    }
}
