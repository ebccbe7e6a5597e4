//! Brute-force ground truth for the structured routines.
//!
//! Nothing in here calls into `vander`, `factor`, or `matfunc`; the only
//! shared code is the scalar field and the matrix container. Costs are
//! deliberately naive.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

struct Elimination<S> {
    inverse: DenseMatrix<S>,
    determinant: S,
}

fn gauss_jordan<S: Scalar>(m: &DenseMatrix<S>) -> Result<Elimination<S>> {
    let n = m.order()?;
    let width = 2 * n;
    // augmented [m | I], one Vec per row
    let mut rows: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            row
        })
        .collect();
    let mut det = S::one();

    for col in 0..n {
        let pivot_row = if S::EXACT {
            (col..n).find(|&r| !rows[r][col].is_zero())
        } else {
            (col..n)
                .filter(|&r| !rows[r][col].is_zero())
                .max_by(|&a, &b| {
                    rows[a][col]
                        .abs()
                        .to_f64()
                        .total_cmp(&rows[b][col].abs().to_f64())
                })
        };
        let p = pivot_row.ok_or(Error::SingularMatrix)?;
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det = det * pivot.clone();
        let inv = pivot.recip()?;
        for x in rows[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_vals = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let factor = row[col].clone();
            for c in 0..width {
                row[c] = row[c].clone() - factor.clone() * pivot_vals[c].clone();
            }
        }
    }

    let entries = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
    Ok(Elimination {
        inverse: DenseMatrix::new(n, n, entries)?,
        determinant: det,
    })
}

/// Inverse by Gauss–Jordan elimination on `[m | I]`.
///
/// Exact scalars pivot on the first nonzero entry; floats on the largest
/// magnitude in the column.
pub fn gauss_jordan_invert<S: Scalar>(m: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    gauss_jordan(m).map(|e| e.inverse)
}

/// Product of the Gauss–Jordan pivots (with swap signs); zero when singular.
pub fn gauss_jordan_determinant<S: Scalar>(m: &DenseMatrix<S>) -> Result<S> {
    match gauss_jordan(m) {
        Ok(e) => Ok(e.determinant),
        Err(Error::SingularMatrix) => Ok(S::zero()),
        Err(e) => Err(e),
    }
}

/// Laplace expansion along successive rows.
///
/// Minors are keyed by their column set and memoized, so the cost is
/// `O(2^n · n)` rather than `O(n!)`; the expansion itself is unchanged.
pub fn cofactor_det<S: Scalar>(m: &DenseMatrix<S>) -> Result<S> {
    let n = m.order()?;
    if n == 0 {
        return Ok(S::one());
    }
    if n > 20 {
        return Err(Error::UnsupportedSpectrum("cofactor expansion limited to order 20"));
    }
    let mut memo: BTreeMap<u32, S> = BTreeMap::new();
    Ok(minor_det(m, n, (1u32 << n) - 1, &mut memo))
}

// Determinant of the minor formed by the last popcount(cols) rows and the columns in `cols`.
fn minor_det<S: Scalar>(m: &DenseMatrix<S>, n: usize, cols: u32, memo: &mut BTreeMap<u32, S>) -> S {
    let k = cols.count_ones() as usize;
    if k == 0 {
        return S::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = n - k;
    let mut acc = S::zero();
    let mut sign_positive = true;
    for col in 0..n {
        if cols & (1 << col) == 0 {
            continue;
        }
        let entry = &m[(row, col)];
        if !entry.is_zero() {
            let sub = minor_det(m, n, cols & !(1 << col), memo);
            let term = entry.clone() * sub;
            acc = if sign_positive { acc + term } else { acc - term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Truncated exponential series `Σ_{k<terms} A^k / k!`.
pub fn series_exp(a: &DenseMatrix<f64>, terms: usize) -> Result<DenseMatrix<f64>> {
    let n = a.order()?;
    let mut sum = DenseMatrix::<f64>::zeros(n, n);
    let mut term = DenseMatrix::<f64>::identity(n);
    for k in 0..terms {
        if k > 0 {
            term = term.mat_mul(a)?.scale(&(1.0 / k as f64));
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// `e_r(vals)`: the sum of all products of `r` distinct entries.
pub fn elementary_symmetric<S: Scalar>(vals: &[S], r: usize) -> Result<S> {
    if r > vals.len() {
        return Err(Error::IndexOutOfRange {
            index: r,
            len: vals.len(),
        });
    }
    // e[k] after processing a prefix; update from high k down
    let mut e = vec![S::zero(); r + 1];
    e[0] = S::one();
    for v in vals {
        for k in (1..=r).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    Ok(e.swap_remove(r))
}

/// Factors of `m⁻¹ = U·L` from an unpivoted LU split `m = L′U′` with unit
/// diagonal on `L′`; returns `(U, L) = (U′⁻¹, L′⁻¹)`, each inverted by
/// Gauss–Jordan.
pub fn inverse_triangular_factors<S: Scalar>(
    m: &DenseMatrix<S>,
) -> Result<(DenseMatrix<S>, DenseMatrix<S>)> {
    let n = m.order()?;
    let mut upper = m.clone();
    let mut lower = DenseMatrix::<S>::identity(n);
    for col in 0..n {
        let pivot = upper[(col, col)].clone();
        if pivot.is_zero() {
            return Err(Error::SingularMatrix);
        }
        for r in col + 1..n {
            let factor = upper[(r, col)].checked_div(&pivot)?;
            lower[(r, col)] = factor.clone();
            for c in 0..n {
                let v = upper[(r, c)].clone() - factor.clone() * upper[(col, c)].clone();
                upper[(r, c)] = v;
            }
            upper[(r, col)] = S::zero();
        }
    }
    Ok((gauss_jordan_invert(&upper)?, gauss_jordan_invert(&lower)?))
}
