//! Dense numerical kernel: symmetric eigenproblems, real polynomials and
//! their real roots, null vectors and determinants.

mod eigen;
mod linsolve;
mod matrix;
mod poly;

pub use eigen::{sym_eig, sym_eigvals, EigResult};
pub use linsolve::{determinant, null_vector, NULL_RESIDUAL_TOL, RANK_TOL};
pub use matrix::{dot, norm2, Matrix, SymMatrix};
pub use poly::{
    poly_eval, poly_real_roots, poly_real_roots_expecting, sign_change_roots, tridiag_det_poly,
    tridiag_det_poly_real, Polynomial, RealRoots, BISECTION_WIDTH, NEAR_DOUBLE_TOL,
    SCAN_INTERVALS,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("QL iteration did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is numerically full rank (smallest pivot {smallest_pivot:e}, threshold {threshold:e})")]
    FullRank { smallest_pivot: f64, threshold: f64 },
    #[error("null vector residual {residual:e} exceeds {bound:e}")]
    NullResidual { residual: f64, bound: f64 },
    #[error("root search needs a polynomial of degree at least one")]
    ConstantPolynomial,
    #[error("invalid bracket ({lo}, {hi})")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("bracket endpoint {x} is itself a root; perturb the bracket")]
    RootAtEndpoint { x: f64 },
    #[error("found {} real roots, expected {expected}", found.len())]
    RootShortfall { expected: usize, found: Vec<f64> },
}
