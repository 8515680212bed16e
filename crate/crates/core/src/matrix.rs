//! Dense matrices over [`GaussianRational`] with exact elimination.
//!
//! Operator impls (`&a * &b`, `&a + &b`, ...) panic on shape mismatch, the
//! way slice indexing does; the `try_*` methods return
//! [`Error::DimensionMismatch`] instead and are what input-facing code uses.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixDoc", into = "MatrixDoc")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries; `data.len()` must be `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidDocument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Integer matrix from fixed-width rows, mostly for tests and fixtures.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |i, j| GaussianRational::from_integer(rows[i][j]))
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Largest bit size of any entry; a rough measure of coefficient growth.
    pub fn max_bit_size(&self) -> u64 {
        self.data.iter().map(GaussianRational::bit_size).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &GaussianRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { op, rows: self.rows, cols: self.cols })
        }
    }

    fn same_shape(&self, rhs: &Matrix, op: &'static str) -> Result<()> {
        if self.shape() == rhs.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { op, left: self.shape(), right: rhs.shape() })
        }
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "add")?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "sub")?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: rhs.shape() });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `self^e` by repeated squaring; `self^0` is the identity.
    pub fn pow(&self, e: u32) -> Result<Matrix> {
        self.require_square("pow")?;
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Product of a chain of conformable matrices, left to right.
    pub fn product(factors: &[&Matrix]) -> Matrix {
        let (first, rest) = factors.split_first().expect("empty product");
        rest.iter().fold((*first).clone(), |acc, m| &acc * *m)
    }

    /// Sub-matrix of `rows x cols` starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if let Some(bad) = parts.iter().find(|m| m.rows != rows) {
            return Err(Error::DimensionMismatch { op: "hstack", left: parts[0].shape(), right: bad.shape() });
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if let Some(bad) = parts.iter().find(|m| m.cols != cols) {
            return Err(Error::DimensionMismatch { op: "vstack", left: parts[0].shape(), right: bad.shape() });
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        Ok(out)
    }

    /// `[[a, b], [c, d]]` as one matrix.
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        let top = Matrix::hstack(&[a, b])?;
        let bottom = Matrix::hstack(&[c, d])?;
        Matrix::vstack(&[&top, &bottom])
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(a.rows, a.cols, b);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[target] -= factor * row[source]`, for columns `from..`.
    fn eliminate(&mut self, target: usize, source: usize, factor: &GaussianRational, from: usize) {
        for j in from..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.data[target * self.cols + j] -= &delta;
        }
    }

    /// Row echelon form in place. Pivots are chosen column by column among
    /// the remaining rows, preferring the candidate with the fewest bits.
    /// With `reduced` the result is the reduced row echelon form.
    /// Returns the pivot columns.
    fn echelon_in_place(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let best = (row..self.rows)
                .filter(|&r| !self[(r, col)].is_zero())
                .min_by_key(|&r| self[(r, col)].bit_size());
            let Some(best) = best else { continue };
            self.swap_rows(row, best);
            if reduced {
                let inv = self[(row, col)].recip().expect("pivot is nonzero");
                for j in col..self.cols {
                    let v = &self.data[row * self.cols + j] * &inv;
                    self.data[row * self.cols + j] = v;
                }
            }
            let pivot = self[(row, col)].clone();
            let targets: Vec<usize> =
                if reduced { (0..self.rows).filter(|&r| r != row).collect() } else { (row + 1..self.rows).collect() };
            for r in targets {
                if self[(r, col)].is_zero() {
                    continue;
                }
                let factor = &self[(r, col)] / &pivot;
                self.eliminate(r, row, &factor, col);
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.echelon_in_place(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon_in_place(false).len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut aug = Matrix::hstack(&[self, &Matrix::identity(n)])?;
        let pivots = aug.echelon_in_place(true);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::Singular);
        }
        Ok(aug.submatrix(0, n, n, n))
    }

    /// Columns of `self` at the pivot positions: a basis of the image.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Basis of the kernel, one column per free variable of the RREF.
    pub fn null_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = GaussianRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -&r[(row, f)];
            }
        }
        basis
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;

    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range for {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range for {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        f.write_str("]")
    }
}

/// Wire form: `{"rows": n, "cols": m, "entries": [["1/2", "3i"], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixDoc> for Matrix {
    type Error = Error;

    fn try_from(doc: MatrixDoc) -> Result<Matrix> {
        if doc.entries.len() != doc.rows {
            return Err(Error::InvalidDocument(format!(
                "rows is {} but entries has {} rows",
                doc.rows,
                doc.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(doc.rows * doc.cols);
        for (i, row) in doc.entries.iter().enumerate() {
            if row.len() != doc.cols {
                return Err(Error::InvalidDocument(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    doc.cols
                )));
            }
            for s in row {
                data.push(s.parse()?);
            }
        }
        Matrix::from_vec(doc.rows, doc.cols, data)
    }
}

impl From<Matrix> for MatrixDoc {
    fn from(m: Matrix) -> MatrixDoc {
        let entries = (0..m.rows).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect();
        MatrixDoc { rows: m.rows, cols: m.cols, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn identity_is_neutral() {
        let x = Matrix::from_ints(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(&Matrix::identity(2) * &x, x);
        assert_eq!(&x * &Matrix::identity(3), x);
        assert_eq!(x.transpose().transpose(), x);
    }

    #[test]
    fn reciprocal_diagonal() {
        let d = Matrix::diag(&[q(1, 2), q(1, 3)]);
        assert_eq!(&d * &Matrix::from_ints(&[[2, 0], [0, 3]]), Matrix::identity(2));
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch { op: "mul", .. })));
        assert!(matches!(a.try_add(&Matrix::zeros(3, 2)), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.pow(2), Err(Error::NotSquare { .. })));
        assert!(matches!(a.inverse(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn powers() {
        let j = Matrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(j.pow(0).unwrap(), Matrix::identity(2));
        assert!(j.pow(2).unwrap().is_zero());
        let a = Matrix::from_ints(&[[1, 1], [0, 1]]);
        assert_eq!(a.pow(5).unwrap(), Matrix::from_ints(&[[1, 5], [0, 1]]));
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(Matrix::from_ints(&[[1, 2], [2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn inverse_and_singularity() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        assert_eq!(Matrix::from_ints(&[[2, 0], [0, 3]]).inverse().unwrap(), Matrix::diag(&[q(1, 2), q(1, 3)]));
        assert!(matches!(Matrix::from_ints(&[[1, 2], [2, 4]]).inverse(), Err(Error::Singular)));
        let z = Matrix::from_fn(2, 2, |i, j| if i == j { GaussianRational::i() } else { q(1, 2) });
        assert_eq!(&z * &z.inverse().unwrap(), Matrix::identity(2));
    }

    #[test]
    fn bases() {
        let id = Matrix::identity(3);
        assert_eq!(id.column_space_basis().cols(), 3);
        assert_eq!(id.null_space_basis().cols(), 0);
        let z = Matrix::zeros(3, 3);
        assert_eq!(z.column_space_basis().cols(), 0);
        assert_eq!(z.null_space_basis().cols(), 3);
        let j = Matrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(j.null_space_basis(), Matrix::from_ints(&[[1], [0]]));
    }

    #[test]
    fn blocks() {
        let a = Matrix::from_ints(&[[1]]);
        let b = Matrix::from_ints(&[[2, 3]]);
        let c = Matrix::from_ints(&[[4], [5]]);
        let d = Matrix::from_ints(&[[6, 7], [8, 9]]);
        let m = Matrix::block2(&a, &b, &c, &d).unwrap();
        assert_eq!(m, Matrix::from_ints(&[[1, 2, 3], [4, 6, 7], [5, 8, 9]]));
        assert_eq!(m.submatrix(1, 1, 2, 2), d);
        assert!(Matrix::block2(&a, &d, &c, &b).is_err());
    }

    #[test]
    fn json_document() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { q(1, 2) } else { GaussianRational::i() });
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[["1/2","1i"],["1i","1/2"]]}"#);
        assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), m);
        let bad = [
            r#"{"rows":1,"cols":1,"entries":[["1/0"]]}"#,
            r#"{"rows":2,"cols":1,"entries":[["1"]]}"#,
            r#"{"rows":1,"cols":2,"entries":[["1"]]}"#,
            r#"{"rows":1,"cols":1,"entries":[[1]]}"#,
        ];
        for b in bad {
            assert!(serde_json::from_str::<Matrix>(b).is_err(), "{b}");
        }
    }
}
