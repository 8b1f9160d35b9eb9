//! Exact linear algebra over the rationals.
//!
//! Everything here is dense and exact. Matrices act on column vectors; a
//! [`Subspace`] stores its basis as the columns of a matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ground field element.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Scalar::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Serde adapter for a single scalar stored as a `"p/q"` string.
pub mod scalar_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&scalar_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_scalar(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => {
                parse_scalar(&n.to_string()).map_err(serde::de::Error::custom)
            }
            other => Err(serde::de::Error::custom(format!(
                "expected rational, got {other}"
            ))),
        }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| scalar_to_string(self.get(i, j)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from integer entries in row-major order.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&x| int(x)).collect())
    }

    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation. All blocks must share the row count `rows`.
    pub fn hstack(rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack: row mismatch");
            m.set_block(0, off, b);
            off += b.cols;
        }
        m
    }

    /// Vertical concatenation. All blocks must share the column count `cols`.
    pub fn vstack(cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack: column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "set_block out of range"
        );
        for i in 0..b.rows {
            for j in 0..b.cols {
                let x = b.get(i, j);
                if !x.is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "add_block out of range"
        );
        for i in 0..b.rows {
            for j in 0..b.cols {
                let x = b.get(i, j);
                if !x.is_zero() {
                    let k = (r0 + i) * self.cols + c0 + j;
                    self.data[k] += x;
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Kronecker product; row `(i, k)` sits at `i * other.rows() + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = other.shape();
        let mut m = Matrix::zeros(self.rows() * r2, self.cols() * c2);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * r2 + k, j * c2 + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form with first-nonzero pivoting, plus pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j);
                if !x.is_zero() {
                    let y = x * &inv;
                    m.set(r, j, y);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in &pivot_row {
                    let k = i * m.cols + j;
                    m.data[k] -= &factor * pv;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one column per free variable.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, Scalar::one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    k.set(p, t, -x.clone());
                }
            }
        }
        k
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn image_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(n, &[self, &Matrix::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `self · X = rhs` for a matrix `X`; `None` if some column of
    /// `rhs` lies outside the image.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows, "solve_matrix: row mismatch");
        let aug = Matrix::hstack(self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                let v = r.get(row, self.cols + j);
                if !v.is_zero() {
                    x.set(p, j, v.clone());
                }
            }
        }
        Some(x)
    }

    /// True when every column is a standard basis vector and no two columns
    /// coincide.
    pub fn is_coordinate_injection(&self) -> bool {
        let mut seen = vec![false; self.rows];
        for j in 0..self.cols {
            let mut hit = None;
            for i in 0..self.rows {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if !x.is_one() || hit.is_some() {
                    return false;
                }
                hit = Some(i);
            }
            match hit {
                Some(i) if !seen[i] => seen[i] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn max_abs_entry(&self) -> Scalar {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(
            self.cols,
            rhs.rows,
            "matrix product shape mismatch {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix difference shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

/// JSON form: a list of rows of `"p/q"` strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(scalar_to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
            for v in r {
                let x = match v {
                    serde_json::Value::String(s) => parse_scalar(s),
                    serde_json::Value::Number(n) => parse_scalar(&n.to_string()),
                    other => Err(Error::Parse(format!("expected rational, got {other}"))),
                }
                .map_err(serde::de::Error::custom)?;
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }
}

/// Result of [`decompose`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn decompose(m: &Matrix) -> Decomposition {
    let (_, pivots) = m.rref();
    Decomposition {
        rank: pivots.len(),
        kernel: Subspace::from_independent(m.cols(), m.kernel_basis()),
        image: Subspace::from_independent(m.rows(), m.select_columns(&pivots)),
    }
}

/// Solves `m · x = b`. `Ok(None)` when `b` is outside the image.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: rhs has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let rhs = Matrix::from_columns(m.rows(), &[b.to_vec()]);
    Ok(m.solve_matrix(&rhs).map(|x| x.column(0)))
}

/// A linear subspace of `Q^ambient`, stored by a basis of independent columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Spans the columns of `generators`, dropping dependent ones.
    pub fn span(ambient: usize, generators: &Matrix) -> Self {
        assert_eq!(generators.rows(), ambient, "span: ambient mismatch");
        Subspace {
            ambient,
            basis: generators.image_basis(),
        }
    }

    fn from_independent(ambient: usize, basis: Matrix) -> Self {
        debug_assert_eq!(basis.rows(), ambient);
        Subspace { ambient, basis }
    }

    /// Builds a subspace from columns that the caller asserts independent.
    pub fn from_basis(ambient: usize, basis: Matrix) -> Result<Self> {
        if basis.rows() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows, ambient is {ambient}",
                basis.rows()
            )));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::Invalid(
                "subspace basis columns are dependent".into(),
            ));
        }
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in this subspace's basis, if `v` lies in it.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "coordinates: ambient mismatch");
        if self.dim() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve(&self.basis, v).expect("shape checked")
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        if other.dim() == 0 {
            return true;
        }
        self.basis.solve_matrix(&other.basis).is_some()
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient,
            &Matrix::hstack(self.ambient, &[&self.basis, &other.basis]),
        ))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked = Matrix::hstack(self.ambient, &[&self.basis, &(-&other.basis)]);
        let k = stacked.kernel_basis();
        let top = k.block(0, 0, self.dim(), k.cols());
        Ok(Subspace::span(self.ambient, &(&self.basis * &top)))
    }

    /// `{x : m·x ∈ self}` inside the source space of `m`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "preimage: map lands in dimension {}, subspace ambient is {}",
                m.rows(),
                self.ambient
            )));
        }
        let q = self.quotient_projection();
        let composed = &q * m;
        Ok(Subspace::from_independent(
            m.cols(),
            composed.kernel_basis(),
        ))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(
                "image_under: source dimension mismatch".into(),
            ));
        }
        Ok(Subspace::span(m.rows(), &(m * &self.basis)))
    }

    /// A full-row-rank matrix whose kernel is exactly this subspace.
    pub fn quotient_projection(&self) -> Matrix {
        self.basis.transpose().kernel_basis().transpose()
    }

    /// Columns completing a basis of `sub` to a basis of `self`, in the
    /// order the standard greedy extension finds them.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Matrix> {
        self.check_ambient(sub)?;
        let stacked = Matrix::hstack(self.ambient, &[&sub.basis, &self.basis]);
        let (_, pivots) = stacked.rref();
        let picked: Vec<usize> = pivots.into_iter().filter(|&p| p >= sub.dim()).collect();
        Ok(stacked.select_columns(&picked))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces live in dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Output of [`subspace_algebra`].
#[derive(Clone, Debug)]
pub struct SubspaceAlgebra {
    pub intersection: Subspace,
    pub preimage: Subspace,
    pub quotient_projection: Matrix,
}

/// Intersection `a ∩ b`, preimage `m⁻¹(b)`, and a projection killing `a`.
pub fn subspace_algebra(a: &Subspace, b: &Subspace, m: &Matrix) -> Result<SubspaceAlgebra> {
    Ok(SubspaceAlgebra {
        intersection: a.intersection(b)?,
        preimage: b.preimage(m)?,
        quotient_projection: a.quotient_projection(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn decompose_identity_zero_and_rank_one() {
        let d = decompose(&Matrix::identity(3));
        assert_eq!((d.rank, d.kernel.dim(), d.image.dim()), (3, 0, 3));

        let d = decompose(&Matrix::zeros(2, 4));
        assert_eq!((d.rank, d.kernel.dim(), d.image.dim()), (0, 4, 0));

        let m = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        let d = decompose(&m);
        assert_eq!((d.rank, d.kernel.dim(), d.image.dim()), (1, 1, 1));
        assert!((&m * d.kernel.basis()).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1, 2]);
        assert_eq!(solve(&Matrix::identity(3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(3, 3), &b).unwrap(), None);
        let x = solve(&Matrix::from_i64(1, 1, &[2]), &v(&[1]))
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![frac(1, 2)]);
        assert!(solve(&Matrix::identity(2), &b).is_err());
    }

    #[test]
    fn subspace_examples() {
        let full = Subspace::full(2);
        assert!(full.intersection(&full).unwrap().is_full());

        let e1 = Subspace::span(2, &Matrix::from_i64(2, 1, &[1, 0]));
        let e2 = Subspace::span(2, &Matrix::from_i64(2, 1, &[0, 1]));
        assert_eq!(e1.intersection(&e2).unwrap().dim(), 0);

        let m = Matrix::from_i64(2, 2, &[1, 0, 0, 0]);
        let pre = Subspace::zero(2).preimage(&m).unwrap();
        assert!(pre.same_as(&e2));

        let alg = subspace_algebra(&e1, &e2, &m).unwrap();
        assert_eq!(alg.quotient_projection.shape(), (1, 2));
        assert!((&alg.quotient_projection * e1.basis()).is_zero());
    }

    #[test]
    fn complement_extends_basis() {
        let full = Subspace::full(3);
        let line = Subspace::span(3, &Matrix::from_i64(3, 1, &[1, 1, 0]));
        let c = full.complement_of(&line).unwrap();
        assert_eq!(c.cols(), 2);
        let all = Matrix::hstack(3, &[line.basis(), &c]);
        assert!(all.is_invertible());
    }

    #[test]
    fn scalar_strings() {
        assert_eq!(scalar_to_string(&frac(6, -4)), "-3/2");
        assert_eq!(scalar_to_string(&int(7)), "7");
        assert_eq!(parse_scalar("-3/2").unwrap(), frac(-3, 2));
        assert!(parse_scalar("1/0").is_err());
        let m = Matrix::from_vec(1, 2, vec![frac(1, 3), int(-2)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/3","-2"]]"#);
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), m);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
