//! Vandermonde and confluent Vandermonde matrices, their inverses in
//! explicit triangular-factor form, and matrix functions evaluated through
//! those inverses.
//!
//! The crate is `no_std` and needs only `alloc`. All routines are generic
//! over [`Scalar`], with exact [`Rational`] and `f64` implementations
//! provided.
//!
//! ```
//! use vanderkit_core::{factor, Rational, Scalar, Spectrum};
//!
//! let s = Spectrum::simple(vec![1, 2, 3].into_iter().map(Rational::from_i64).collect()).unwrap();
//! let inv = factor::invert_simple(&s).unwrap();
//! assert!(inv.residual_norm.is_zero());
//! ```

#![no_std]

extern crate alloc;

pub mod agreement;
pub mod error;
pub mod factor;
pub mod matfunc;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod spectrum;
pub mod vander;

pub use error::{Error, Result};
pub use matrix::{mat_mul, DenseMatrix, Shape, TriangularFactor};
pub use scalar::{parse_rational, Rational, Scalar};
pub use spectrum::{Node, Spectrum, SpectrumKind, DEFAULT_SEPARATION_TOL};
