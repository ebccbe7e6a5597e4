//! Explicit triangular factors of Vandermonde inverses.
//!
//! For distinct nodes `λ_1 … λ_N` the Vandermonde matrix splits as
//! `V = L′U′` with `L′` unit lower triangular, and its inverse is
//! `V⁻¹ = U·L = D·W·L` where every factor has a closed form:
//!
//! * `D_ii  = ∏_{k≠i} 1/(λ_i − λ_k)`
//! * `W_ij  = ∏_{k>j} (λ_i − λ_k)` for `i ≤ j`
//! * `L_ij  = L_{i−1,j−1} − λ_{i−1}·L_{i−1,j}` (unit diagonal, `L_{k,0} = 0`)
//!
//! `U = D·W` is upper triangular with `U_ij = ∏_{k≤j, k≠i} 1/(λ_i − λ_k)`.
//! Each of `D`, `W`, `L` costs `O(N²)` multiplications.
//!
//! A repeated node placed first, with multiplicity `m`, gives the confluent
//! analogue `C⁻¹ = U_c·L_c`, where `L_c` is the same recurrence run over the
//! node list expanded by multiplicity and `U_c` has three closed-form
//! regions (see [`factor_uc`]). Spectra with several repeated nodes are
//! inverted through an unpivoted LU split followed by triangular
//! substitution, which produces factors of the same shape.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Shape, TriangularFactor};
use crate::scalar::Scalar;
use crate::spectrum::{Node, Spectrum};
use crate::vander::{build_confluent, build_vandermonde};

/// Residual threshold, per unit of matrix order, above which a float inverse is flagged.
pub const DEFAULT_RESIDUAL_WARN_PER_ORDER: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct InversionConfig {
    /// Absolute override for the ill-conditioning threshold; the default is `1e-8·N`.
    pub residual_warn_tol: Option<f64>,
}

impl InversionConfig {
    pub fn warn_tol(&self, order: usize) -> f64 {
        self.residual_warn_tol
            .unwrap_or(DEFAULT_RESIDUAL_WARN_PER_ORDER * order as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseFactorization<S> {
    pub spectrum: Spectrum<S>,
    pub d: TriangularFactor<S>,
    pub w: TriangularFactor<S>,
    pub l: TriangularFactor<S>,
    pub inverse: DenseMatrix<S>,
    /// `max |V·inverse − I|`; exactly zero for rationals.
    pub residual_norm: S,
    /// Float residual exceeded the configured threshold.
    pub ill_conditioned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfluentMethod {
    /// No repeated node; factors come from the simple closed forms.
    Simple,
    /// One repeated node; closed-form `U_c`, `L_c`.
    ClosedForm,
    /// Several repeated nodes; LU split plus triangular substitution.
    Elimination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfluentInverseFactorization<S> {
    pub spectrum: Spectrum<S>,
    pub uc: TriangularFactor<S>,
    pub lc: TriangularFactor<S>,
    /// Column `k` of the factored matrix is column `column_order[k]` of the
    /// caller's matrix. `inverse` row `column_order[k]` is row `k` of `uc·lc`.
    pub column_order: Vec<usize>,
    pub inverse: DenseMatrix<S>,
    pub residual_norm: S,
    pub ill_conditioned: bool,
    pub method: ConfluentMethod,
}

fn values<S: Scalar>(s: &Spectrum<S>) -> Vec<S> {
    s.nodes().iter().map(|n| n.value.clone()).collect()
}

fn require_simple<S: Scalar>(s: &Spectrum<S>) -> Result<Vec<S>> {
    if s.is_confluent() {
        return Err(Error::ConfluentSpectrum);
    }
    Ok(values(s))
}

/// `U = (U′)⁻¹`: `U_ij = ∏_{k≤j, k≠i} 1/(λ_i − λ_k)` for `i ≤ j`.
pub fn factor_u<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    let lambda = require_simple(s)?;
    let n = lambda.len();
    let mut m = DenseMatrix::<S>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let den = (0..=j)
                .filter(|&k| k != i)
                .fold(S::one(), |acc, k| acc * (lambda[i].clone() - lambda[k].clone()));
            m[(i, j)] = den.recip()?;
        }
    }
    TriangularFactor::new(Shape::Upper, m)
}

pub fn factor_d<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    let lambda = require_simple(s)?;
    let n = lambda.len();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let den = (0..n)
            .filter(|&k| k != i)
            .fold(S::one(), |acc, k| acc * (lambda[i].clone() - lambda[k].clone()));
        diag.push(den.recip()?);
    }
    TriangularFactor::new(Shape::Diagonal, DenseMatrix::diagonal(&diag))
}

/// Row `i` is built right to left: `W_{i,N} = 1`, `W_{i,j} = W_{i,j+1}·(λ_i − λ_{j+1})`.
pub fn factor_w<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    let lambda = require_simple(s)?;
    let n = lambda.len();
    let mut m = DenseMatrix::<S>::zeros(n, n);
    for i in 0..n {
        let mut acc = S::one();
        m[(i, n - 1)] = acc.clone();
        for j in (i..n - 1).rev() {
            acc = acc * (lambda[i].clone() - lambda[j + 1].clone());
            m[(i, j)] = acc.clone();
        }
    }
    TriangularFactor::new(Shape::Upper, m)
}

pub fn factor_l<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    let lambda = require_simple(s)?;
    Ok(unit_lower_recurrence(&lambda))
}

/// `L_{i,j} = L_{i−1,j−1} − μ_{i−1}·L_{i−1,j}` with unit diagonal and a zero
/// column to the left of column one. Row `i` holds the coefficients of
/// `∏_{k<i} (x − μ_k)`.
pub(crate) fn unit_lower_recurrence<S: Scalar>(mu: &[S]) -> TriangularFactor<S> {
    let n = mu.len();
    let mut m = DenseMatrix::<S>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = S::one();
        if i == 0 {
            continue;
        }
        for j in 0..i {
            let left = if j == 0 {
                S::zero()
            } else {
                m[(i - 1, j - 1)].clone()
            };
            let v = left - mu[i - 1].clone() * m[(i - 1, j)].clone();
            m[(i, j)] = v;
        }
    }
    TriangularFactor::from_fn(Shape::Lower, n, |i, j| m[(i, j)].clone())
}

/// `max |m·minv − I|`.
pub fn residual<S: Scalar>(m: &DenseMatrix<S>, minv: &DenseMatrix<S>) -> Result<S> {
    let n = m.order()?;
    if minv.rows() != n || minv.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: (minv.rows(), minv.cols()),
        });
    }
    Ok(m.mat_mul(minv)?.sub(&DenseMatrix::identity(n))?.max_abs())
}

fn flag<S: Scalar>(residual: &S, cfg: &InversionConfig, order: usize) -> bool {
    !S::EXACT && residual.to_f64() > cfg.warn_tol(order)
}

pub fn invert_simple<S: Scalar>(s: &Spectrum<S>) -> Result<InverseFactorization<S>> {
    invert_simple_with(s, &InversionConfig::default())
}

/// `V⁻¹ = D·(W·L)`, with the residual measured against the freshly built `V`.
pub fn invert_simple_with<S: Scalar>(
    s: &Spectrum<S>,
    cfg: &InversionConfig,
) -> Result<InverseFactorization<S>> {
    let d = factor_d(s)?;
    let w = factor_w(s)?;
    let l = factor_l(s)?;
    let inverse = d.matrix().mat_mul(&w.matrix().mat_mul(l.matrix())?)?;
    let v = build_vandermonde(s)?;
    let residual_norm = residual(&v.matrix, &inverse)?;
    let ill_conditioned = flag(&residual_norm, cfg, s.size());
    Ok(InverseFactorization {
        spectrum: s.clone(),
        d,
        w,
        l,
        inverse,
        residual_norm,
        ill_conditioned,
    })
}

/// Repeated node of a closed-form-ready spectrum: exactly one repeated node, placed first.
fn closed_form_block<S: Scalar>(s: &Spectrum<S>) -> Result<usize> {
    if s.is_simple() {
        return Err(Error::SimpleSpectrum);
    }
    if s.repeated_count() > 1 {
        return Err(Error::UnsupportedSpectrum(
            "closed-form confluent factors need exactly one repeated node",
        ));
    }
    let m = s.nodes()[0].multiplicity;
    if m < 2 {
        return Err(Error::UnsupportedSpectrum(
            "closed-form confluent factors need the repeated node first",
        ));
    }
    Ok(m)
}

/// Upper factor `U_c = (U_c′)⁻¹` of a confluent inverse.
///
/// With `μ` the node list expanded by multiplicity (`μ_1 = … = μ_m`), in
/// 1-based indices:
///
/// * `i, j ≤ m`: `δ_ij / (i−1)!`
/// * `i ≤ m < j`: `−1/(i−1)! · Σ_{α=m+1}^{j} ∏_{β=i, β≠α}^{j} 1/(μ_α − μ_β)`
/// * `m < i ≤ j`: `∏_{β=1, β≠i}^{j} 1/(μ_i − μ_β)`
///
/// Requires exactly one repeated node, in first position.
pub fn factor_uc<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    let m = closed_form_block(s)?;
    let mu = s.expanded_values();
    let n = mu.len();
    let mut out = DenseMatrix::<S>::zeros(n, n);

    for i in 0..m {
        out[(i, i)] = S::factorial(i as u32).recip()?;
    }

    for i in 0..m {
        let scale = S::factorial(i as u32).recip()?;
        for j in m..n {
            let mut sum = S::zero();
            for alpha in m..=j {
                let den = (i..=j)
                    .filter(|&beta| beta != alpha)
                    .fold(S::one(), |acc, beta| acc * (mu[alpha].clone() - mu[beta].clone()));
                sum = sum + den.recip()?;
            }
            out[(i, j)] = -(scale.clone() * sum);
        }
    }

    for i in m..n {
        for j in i..n {
            let den = (0..=j)
                .filter(|&beta| beta != i)
                .fold(S::one(), |acc, beta| acc * (mu[i].clone() - mu[beta].clone()));
            out[(i, j)] = den.recip()?;
        }
    }

    TriangularFactor::new(Shape::Upper, out)
}

/// Lower factor `L_c`: the unit lower recurrence over the expanded node list.
pub fn factor_lc<S: Scalar>(s: &Spectrum<S>) -> Result<TriangularFactor<S>> {
    closed_form_block(s)?;
    Ok(unit_lower_recurrence(&s.expanded_values()))
}

pub fn invert_confluent<S: Scalar>(s: &Spectrum<S>) -> Result<ConfluentInverseFactorization<S>> {
    invert_confluent_with(s, &InversionConfig::default())
}

/// Inverse of the confluent Vandermonde matrix for any node order and any
/// number of repeated nodes.
pub fn invert_confluent_with<S: Scalar>(
    s: &Spectrum<S>,
    cfg: &InversionConfig,
) -> Result<ConfluentInverseFactorization<S>> {
    let n = s.size();
    if s.is_simple() {
        let f = invert_simple_with(s, cfg)?;
        let u = f.d.matrix().mat_mul(f.w.matrix())?;
        return Ok(ConfluentInverseFactorization {
            spectrum: f.spectrum,
            uc: TriangularFactor::new(Shape::Upper, u)?,
            lc: f.l,
            column_order: (0..n).collect(),
            inverse: f.inverse,
            residual_norm: f.residual_norm,
            ill_conditioned: f.ill_conditioned,
            method: ConfluentMethod::Simple,
        });
    }

    let c = build_confluent(s)?.matrix;
    let (uc, lc, column_order, method) = if s.repeated_count() == 1 {
        let (canonical, column_order) = repeated_node_first(s)?;
        (
            factor_uc(&canonical)?,
            factor_lc(&canonical)?,
            column_order,
            ConfluentMethod::ClosedForm,
        )
    } else {
        let (uc, lc) = eliminate(&c)?;
        (uc, lc, (0..n).collect(), ConfluentMethod::Elimination)
    };

    let permuted_inverse = uc.matrix().mat_mul(lc.matrix())?;
    let mut placement = alloc::vec![0; n];
    for (k, &col) in column_order.iter().enumerate() {
        placement[col] = k;
    }
    let inverse = permuted_inverse.select_rows(&placement);
    let residual_norm = residual(&c, &inverse)?;
    let ill_conditioned = flag(&residual_norm, cfg, n);
    Ok(ConfluentInverseFactorization {
        spectrum: s.clone(),
        uc,
        lc,
        column_order,
        inverse,
        residual_norm,
        ill_conditioned,
        method,
    })
}

// Moves the single repeated node to the front, keeping the others in caller order.
fn repeated_node_first<S: Scalar>(s: &Spectrum<S>) -> Result<(Spectrum<S>, Vec<usize>)> {
    let nodes = s.nodes();
    let rep = nodes
        .iter()
        .position(|n| n.multiplicity > 1)
        .ok_or(Error::SimpleSpectrum)?;
    let mut starts = Vec::with_capacity(nodes.len());
    let mut offset = 0;
    for n in nodes {
        starts.push(offset);
        offset += n.multiplicity;
    }
    let order: Vec<usize> = core::iter::once(rep)
        .chain((0..nodes.len()).filter(|&k| k != rep))
        .collect();
    let reordered: Vec<Node<S>> = order.iter().map(|&k| nodes[k].clone()).collect();
    let column_order = order
        .iter()
        .flat_map(|&k| starts[k]..starts[k] + nodes[k].multiplicity)
        .collect();
    Ok((Spectrum::with_separation(reordered, 0.0)?, column_order))
}

// Unpivoted LU split `c = L′U′` (unit diagonal on `L′`), then `(U′⁻¹, L′⁻¹)`
// by back and forward substitution.
fn eliminate<S: Scalar>(c: &DenseMatrix<S>) -> Result<(TriangularFactor<S>, TriangularFactor<S>)> {
    let n = c.order()?;
    let mut upper = c.clone();
    let mut lower = DenseMatrix::<S>::identity(n);
    for k in 0..n {
        let pivot = upper[(k, k)].clone();
        if pivot.is_zero() {
            return Err(Error::SingularMatrix);
        }
        for r in k + 1..n {
            if upper[(r, k)].is_zero() {
                continue;
            }
            let factor = upper[(r, k)].checked_div(&pivot)?;
            for col in k..n {
                let v = upper[(r, col)].clone() - factor.clone() * upper[(k, col)].clone();
                upper[(r, col)] = v;
            }
            lower[(r, k)] = factor;
        }
    }
    for r in 1..n {
        for col in 0..r {
            upper[(r, col)] = S::zero();
        }
    }

    // U′⁻¹ column by column: solve U′x = e_j from the bottom up
    let mut u_inv = DenseMatrix::<S>::zeros(n, n);
    for j in 0..n {
        for i in (0..=j).rev() {
            let mut acc = if i == j { S::one() } else { S::zero() };
            for k in i + 1..=j {
                acc = acc - upper[(i, k)].clone() * u_inv[(k, j)].clone();
            }
            u_inv[(i, j)] = acc.checked_div(&upper[(i, i)])?;
        }
    }

    // L′⁻¹: unit diagonal, forward substitution
    let mut l_inv = DenseMatrix::<S>::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut acc = S::zero();
            for k in j..i {
                acc = acc - lower[(i, k)].clone() * l_inv[(k, j)].clone();
            }
            l_inv[(i, j)] = acc;
        }
    }

    Ok((
        TriangularFactor::new(Shape::Upper, u_inv)?,
        TriangularFactor::new(Shape::Lower, l_inv)?,
    ))
}
