//! Sparse multivariate polynomials: parsing, evaluation, Laplacians,
//! harmonic extensions, negativity classification and least-squares fits.

mod classify;
mod extension;
mod fit;
mod parse;
mod polynomial;

pub use classify::{negativity_bounded, ClassStatus, ClassVerdict};
pub use extension::{build_p2k, harmonic_extension, laplacian_in, laplacian_poly, p2k_value, Parity};
pub use fit::{fit_distance_poly, monomial_basis, FitResult};
pub use parse::parse_poly;
pub use polynomial::{Exponent, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("exponent at offset {position} is not a nonnegative integer")]
    BadExponent { position: usize },
    #[error("variable x{index} at offset {position} is outside x1..x{dim}")]
    VariableOutOfRange { index: usize, dim: usize, position: usize },
    #[error("dimension mismatch: polynomial has {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Evaluate `p` at `x`.
pub fn eval_poly(p: &Polynomial, x: &[f64]) -> Result<f64, PolyError> {
    p.eval(x)
}
