//! Functions of matrices through Hermite interpolation on the spectrum.
//!
//! If `p` interpolates `f` and its first `m_i − 1` derivatives at every
//! eigenvalue `λ_i` (with `m_i` at least the size of the largest Jordan
//! block for `λ_i`), then `f(A) = p(A)`. The interpolation conditions are
//! the columns of the confluent Vandermonde matrix `C`, so the monomial
//! coefficients of `p` solve `Cᵀ·c = values`, i.e. `c = (C⁻¹)ᵀ·values`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::invert_confluent;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

/// Function values and derivatives at each node, flattened in block order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteData<S> {
    spectrum: Spectrum<S>,
    values: Vec<S>,
}

impl<S: Scalar> HermiteData<S> {
    /// `values` lists `f(λ), f′(λ), …, f^(m−1)(λ)` for each node in turn.
    pub fn new(spectrum: Spectrum<S>, values: Vec<S>) -> Result<Self> {
        if values.len() != spectrum.size() {
            return Err(Error::DimensionMismatch {
                expected: (spectrum.size(), 1),
                found: (values.len(), 1),
            });
        }
        Ok(Self { spectrum, values })
    }

    pub fn spectrum(&self) -> &Spectrum<S> {
        &self.spectrum
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Coefficients `c_0 … c_{N−1}` of `p(x) = Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCoefficients<S>(pub Vec<S>);

impl<S: Scalar> PolynomialCoefficients<S> {
    pub fn coefficients(&self) -> &[S] {
        &self.0
    }

    pub fn eval(&self, x: &S) -> S {
        self.0
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

pub fn hermite_coefficients<S: Scalar>(h: &HermiteData<S>) -> Result<PolynomialCoefficients<S>> {
    let inv = invert_confluent(&h.spectrum)?.inverse;
    let n = h.values.len();
    let coeffs = (0..n)
        .map(|k| {
            (0..n).fold(S::zero(), |acc, r| {
                acc + inv[(r, k)].clone() * h.values[r].clone()
            })
        })
        .collect();
    Ok(PolynomialCoefficients(coeffs))
}

/// `p(A)` by Horner's scheme.
pub fn apply_polynomial<S: Scalar>(
    p: &PolynomialCoefficients<S>,
    a: &DenseMatrix<S>,
) -> Result<DenseMatrix<S>> {
    let n = a.order()?;
    let identity = DenseMatrix::<S>::identity(n);
    let mut coeffs = p.0.iter().rev();
    let Some(lead) = coeffs.next() else {
        return Ok(DenseMatrix::zeros(n, n));
    };
    let mut acc = identity.scale(lead);
    for c in coeffs {
        acc = acc.mat_mul(a)?.add(&identity.scale(c))?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFunction {
    Exp,
    Log,
}

impl MatrixFunction {
    /// `f^(order)(x)` from the closed-form derivative table.
    pub fn derivative(self, x: f64, order: usize) -> f64 {
        match self {
            MatrixFunction::Exp => libm::exp(x),
            MatrixFunction::Log if order == 0 => libm::log(x),
            MatrixFunction::Log => {
                // (−1)^(r−1) (r−1)! / x^r
                let r = order as i32;
                let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
                sign * f64::factorial(order as u32 - 1) / libm::pow(x, r as f64)
            }
        }
    }
}

/// Hermite data for `f` on `s`.
pub fn hermite_data_for(f: MatrixFunction, s: &Spectrum<f64>) -> Result<HermiteData<f64>> {
    if f == MatrixFunction::Log {
        if let Some(index) = s.nodes().iter().position(|n| n.value <= 0.0) {
            return Err(Error::NonpositiveEigenvalue { index });
        }
    }
    let values = s
        .nodes()
        .iter()
        .flat_map(|n| (0..n.multiplicity).map(move |k| f.derivative(n.value, k)))
        .collect();
    HermiteData::new(s.clone(), values)
}

/// Relative slack in the determinant-versus-spectrum consistency check.
pub const SPECTRUM_CHECK_TOL: f64 = 1e-6;

/// Compares `det(A)` with `∏ λ_i^{m_i}` when the multiplicities sum to the
/// order of `A`. Smaller multiplicities (a minimal-polynomial spectrum) skip
/// the check.
pub fn check_spectrum(a: &DenseMatrix<f64>, s: &Spectrum<f64>) -> Result<()> {
    let n = a.order()?;
    if s.size() != n {
        return Ok(());
    }
    let det = a.determinant()?;
    let product = s
        .nodes()
        .iter()
        .fold(1.0, |acc, node| acc * Scalar::powi(&node.value, node.multiplicity as u32));
    let scale = 1.0f64.max(libm::fabs(det)).max(libm::fabs(product));
    if libm::fabs(det - product) > SPECTRUM_CHECK_TOL * scale {
        return Err(Error::SpectrumMismatch {
            determinant: det,
            spectral_product: product,
        });
    }
    Ok(())
}

/// `f(A)` for a matrix whose eigenvalues (with multiplicities at least the
/// Jordan block sizes) are given by `s`.
pub fn matrix_function(
    a: &DenseMatrix<f64>,
    s: &Spectrum<f64>,
    f: MatrixFunction,
) -> Result<DenseMatrix<f64>> {
    a.order()?;
    let data = hermite_data_for(f, s)?;
    check_spectrum(a, s)?;
    let p = hermite_coefficients(&data)?;
    apply_polynomial(&p, a)
}
