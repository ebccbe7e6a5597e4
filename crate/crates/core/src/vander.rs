//! Vandermonde and confluent Vandermonde matrices.
//!
//! Rows carry powers and columns carry nodes: entry `(i, j)` of the simple
//! matrix is `λ_j^i` (0-based). A node of multiplicity `m` owns `m`
//! adjacent columns; column `k` of its block is the `k`-th derivative of the
//! power column with respect to the node.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VandermondeKind {
    Simple,
    Confluent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeMatrix<S> {
    pub spectrum: Spectrum<S>,
    pub matrix: DenseMatrix<S>,
    pub kind: VandermondeKind,
}

/// Entry at 0-based `row` of the `order`-th derivative column at `node`:
/// `row! / (row - order)! * node^(row - order)`, or zero when `row < order`.
pub fn derivative_column_entry<S: Scalar>(node: &S, row: usize, order: usize) -> S {
    if row < order {
        return S::zero();
    }
    let power = node.powi((row - order) as u32);
    if order == 0 {
        return power;
    }
    S::falling_factorial(row as u32, order as u32) * power
}

pub fn build_vandermonde<S: Scalar>(s: &Spectrum<S>) -> Result<VandermondeMatrix<S>> {
    if s.is_confluent() {
        return Err(Error::ConfluentSpectrum);
    }
    let n = s.size();
    let nodes = s.nodes();
    let matrix = DenseMatrix::from_fn(n, n, |i, j| nodes[j].value.powi(i as u32));
    Ok(VandermondeMatrix {
        spectrum: s.clone(),
        matrix,
        kind: VandermondeKind::Simple,
    })
}

/// Confluent Vandermonde matrix; a simple spectrum yields the ordinary one.
pub fn build_confluent<S: Scalar>(s: &Spectrum<S>) -> Result<VandermondeMatrix<S>> {
    if s.is_simple() {
        return build_vandermonde(s);
    }
    let n = s.size();
    let layout = s.column_layout();
    let nodes = s.nodes();
    let matrix = DenseMatrix::from_fn(n, n, |row, col| {
        let (node, order) = layout[col];
        derivative_column_entry(&nodes[node].value, row, order)
    });
    Ok(VandermondeMatrix {
        spectrum: s.clone(),
        matrix,
        kind: VandermondeKind::Confluent,
    })
}

/// `∏_{i<j} (λ_j − λ_i)` over a simple spectrum.
pub fn det_product_formula<S: Scalar>(s: &Spectrum<S>) -> Result<S> {
    if s.is_confluent() {
        return Err(Error::ConfluentSpectrum);
    }
    let nodes = s.nodes();
    let mut det = S::one();
    for j in 0..nodes.len() {
        for i in 0..j {
            det = det * (nodes[j].value.clone() - nodes[i].value.clone());
        }
    }
    Ok(det)
}
