//! Dense row-major matrices and shape-tagged triangular factors.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: (n_rows, n_cols),
                    found: (n_rows, row.len()),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(values: &[S]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, rhs.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map(|x| x.clone() * factor.clone())
    }

    /// Largest absolute entry (zero for an empty matrix).
    pub fn max_abs(&self) -> S {
        self.entries.iter().fold(S::zero(), |best, x| {
            let a = x.abs();
            if a > best {
                a
            } else {
                best
            }
        })
    }

    /// `max |self - rhs|` entrywise, as `f64`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        Ok(self.sub(rhs)?.max_abs().to_f64())
    }

    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self
                .entries
                .iter()
                .zip(&rhs.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Row `k` of the result is row `order[k]` of `self`.
    pub fn select_rows(&self, order: &[usize]) -> Self {
        Self::from_fn(order.len(), self.cols, |i, j| self[(order[i], j)].clone())
    }

    /// Column `k` of the result is column `order[k]` of `self`.
    pub fn select_cols(&self, order: &[usize]) -> Self {
        Self::from_fn(self.rows, order.len(), |i, j| self[(i, order[j])].clone())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    ///
    /// Exact scalars take the first nonzero pivot; floats take the
    /// largest in magnitude.
    pub fn determinant(&self) -> Result<S> {
        let n = self.order()?;
        let mut work = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot_row = pick_pivot(&work, col);
            let Some(p) = pivot_row else {
                return Ok(S::zero());
            };
            if p != col {
                work.swap_rows(p, col);
                det = -det;
            }
            let pivot = work[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].checked_div(&pivot)?;
                for c in col..n {
                    let v = work[(r, c)].clone() - factor.clone() * work[(col, c)].clone();
                    work[(r, c)] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn pick_pivot<S: Scalar>(m: &DenseMatrix<S>, col: usize) -> Option<usize> {
    let candidates = (col..m.rows).filter(|&r| !m[(r, col)].is_zero());
    if S::EXACT {
        return candidates.into_iter().next();
    }
    let mut best: Option<(usize, f64)> = None;
    for r in candidates {
        let mag = m[(r, col)].abs().to_f64();
        if best.is_none_or(|(_, b)| mag > b) {
            best = Some((r, mag));
        }
    }
    best.map(|(r, _)| r)
}

/// Standard matrix product; fails when `a.cols() != b.rows()`.
pub fn mat_mul<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    a.mat_mul(b)
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for DenseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Lower,
    Upper,
    Diagonal,
}

impl Shape {
    pub fn allows(self, i: usize, j: usize) -> bool {
        match self {
            Shape::Lower => i >= j,
            Shape::Upper => i <= j,
            Shape::Diagonal => i == j,
        }
    }
}

/// A square matrix whose entries outside `shape` are exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularFactor<S> {
    shape: Shape,
    matrix: DenseMatrix<S>,
}

impl<S: Scalar> TriangularFactor<S> {
    /// Wraps `matrix`, scanning that every entry outside the triangle is zero.
    pub fn new(shape: Shape, matrix: DenseMatrix<S>) -> Result<Self> {
        let n = matrix.order()?;
        for i in 0..n {
            for j in 0..n {
                if !shape.allows(i, j) && !matrix[(i, j)].is_zero() {
                    return Err(Error::NotTriangular { row: i, col: j });
                }
            }
        }
        Ok(Self { shape, matrix })
    }

    /// Builds a factor from its in-triangle entries; everything else is zero.
    pub fn from_fn(shape: Shape, n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let matrix = DenseMatrix::from_fn(n, n, |i, j| {
            if shape.allows(i, j) {
                f(i, j)
            } else {
                S::zero()
            }
        });
        Self { shape, matrix }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix<S> {
        self.matrix
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.order()).all(|i| self.matrix[(i, i)] == S::one())
    }
}

impl<S> Index<(usize, usize)> for TriangularFactor<S> {
    type Output = S;

    fn index(&self, idx: (usize, usize)) -> &S {
        &self.matrix[idx]
    }
}
