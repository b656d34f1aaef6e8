//! Exact integer linear algebra over lattices.
//!
//! Everything here works on arbitrary-precision integers. Matrices act on
//! column vectors: an `m x n` matrix is a map `Z^n -> Z^m`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("integer {0} does not fit in 64 bits")]
    Overflow(BigInt),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LatticeError> {
        if data.len() != rows * cols {
            return Err(LatticeError::Shape {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must share one length; an
    /// empty slice gives a `0 x cols` matrix.
    pub fn from_rows_i64(rows: &[Vec<i64>], cols: usize) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::Shape {
                    expected: format!("rows of length {cols}"),
                    got: format!("row of length {}", r.len()),
                });
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self, LatticeError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::Shape {
                    expected: format!("rows of length {cols}"),
                    got: format!("row of length {}", r.len()),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Result<Self, LatticeError> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        (0..self.rows).map(|i| to_i64_vec(self.row(i))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::Shape {
                expected: format!("{} rows on the right factor", self.cols),
                got: format!("{}", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::Shape {
                expected: format!("vector of length {}", self.cols),
                got: format!("{}", v.len()),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::Shape {
                expected: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    pub fn rank(&self) -> usize {
        let h = hermite_normal_form(self);
        (0..h.rows)
            .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// Smith normal form `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(a.rows);
    let mut v = IntegerMatrix::identity(a.cols);
    let limit = a.rows.min(a.cols);
    let mut t = 0;
    'pivots: while t < limit {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivots };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..d.rows)
                .find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                d.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            if pivot.is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
            break;
        }
    }
    SmithForm { u, d, v }
}

/// Row Hermite normal form: upper echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are kept at the bottom.
/// Two matrices have the same row lattice iff their nonzero HNF rows agree.
pub fn hermite_normal_form(a: &IntegerMatrix) -> IntegerMatrix {
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows {
                let x = h.get(i, c);
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &-q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&pivot);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h
}

/// Hermite form taken from the right: pivots sit in the trailing columns
/// and, for a full-row-rank input whose last columns are unimodular, those
/// columns become the identity.
pub fn trailing_hermite_form(a: &IntegerMatrix) -> IntegerMatrix {
    let rev_cols: Vec<usize> = (0..a.cols).rev().collect();
    let h = hermite_normal_form(&a.select_columns(&rev_cols));
    let rev_rows: Vec<usize> = (0..h.rows).rev().collect();
    h.select_columns(&rev_cols).select_rows(&rev_rows)
}

/// Basis of the saturated kernel `{x : A x = 0}`, as the columns of the
/// result. The basis is put in Hermite form (as rows of its transpose) so
/// the output is canonical.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let k = snf.rank();
    let cols: Vec<usize> = (k..a.cols).collect();
    let raw = snf.v.select_columns(&cols);
    let h = hermite_normal_form(&raw.transpose());
    let nonzero: Vec<usize> = (0..h.rows)
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .collect();
    h.select_rows(&nonzero).transpose()
}

/// Integer solution of `A x = b`, if one exists. The returned solution is
/// the particular one read off the Smith form with all free coordinates 0.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if b.len() != a.rows {
        return Err(LatticeError::Shape {
            expected: format!("right-hand side of length {}", a.rows),
            got: format!("{}", b.len()),
        });
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b)?;
    let k = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, rhs) in ub.iter().enumerate() {
        if i < k {
            let d = snf.d.get(i, i);
            let (q, rem) = rhs.div_rem(d);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !rhs.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.apply(&y)?))
}

/// Finitely generated abelian group `Z^free_rank + sum Z/d_i`, presented
/// as a quotient of an ambient `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    /// `(free_rank + #invariant_factors) x m`. The first `free_rank` rows
    /// give free coordinates; row `free_rank + i` is read modulo
    /// `invariant_factors[i]`.
    pub projection: IntegerMatrix,
}

impl AbelianGroupPresentation {
    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Image of an ambient vector, torsion coordinates reduced into `[0, d)`.
    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        let mut y = self.projection.apply(x)?;
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let idx = self.free_rank + i;
            y[idx] = y[idx].mod_floor(d);
        }
        Ok(y)
    }
}

/// Cokernel `Z^rows / im(A)`.
pub fn cokernel(a: &IntegerMatrix) -> AbelianGroupPresentation {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let k = diag.len();
    let free_rows: Vec<usize> = (k..a.rows).collect();
    let torsion: Vec<(usize, BigInt)> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| (i, d.clone()))
        .collect();
    let free_rank = free_rows.len();
    let mut free_part = snf.u.select_rows(&free_rows);
    if torsion.is_empty() {
        // any unimodular change of free coordinates is valid; Hermite form fixes one
        free_part = trailing_hermite_form(&free_part);
    }
    let mut rows = free_part.row_vecs();
    for (i, d) in &torsion {
        rows.push(snf.u.row(*i).iter().map(|x| x.mod_floor(d)).collect());
    }
    let projection = IntegerMatrix::from_rows(&rows, a.rows).expect("rows have ambient length");
    AbelianGroupPresentation {
        free_rank,
        invariant_factors: torsion.into_iter().map(|(_, d)| d).collect(),
        projection,
    }
}

/// A homomorphism `Z^source_rank -> Z^target_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub source_rank: usize,
    pub target_rank: usize,
    pub matrix: IntegerMatrix,
}

impl LatticeMap {
    pub fn new(matrix: IntegerMatrix) -> Self {
        Self {
            source_rank: matrix.cols(),
            target_rank: matrix.rows(),
            matrix,
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap, LatticeError> {
        Ok(LatticeMap::new(self.matrix.mul(&first.matrix)?))
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.matrix.apply(v)
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_of(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_bigint_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(x: &BigInt) -> Result<i64, LatticeError> {
    x.to_i64().ok_or_else(|| LatticeError::Overflow(x.clone()))
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>, LatticeError> {
    v.iter().map(to_i64).collect()
}
