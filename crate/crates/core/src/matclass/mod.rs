//! Polynomials and matrices over finite fields, invariant factors, and the
//! cyclic / almost cyclic classification.
//!
//! A square matrix A over F is cyclic when its minimal and characteristic
//! polynomials agree. It is almost cyclic when A is similar to diag(α·I_h, M_1)
//! with M_1 cyclic and h ≥ 1. Both are read off the invariant factor chain of
//! xI − A; an independent check through Jordan blocks over a splitting field
//! is provided for matrices of prime power order modulo scalars.

mod classify;
mod crosscheck;
mod field;
mod io;
mod matrix;
mod poly;
pub mod sample;
mod screen;
mod smith;

pub use classify::{
    class_report, classify, classify_factors, classify_from_polys, report_from_factors,
    ClassReport, CyclicityClass,
};
pub use crosscheck::{
    classify_blocks, jordan_crosscheck, roots, splitting_degree, Crosscheck, EigenBlocks,
    DEFAULT_SPLIT_CAP,
};
pub use field::{is_irreducible, ExtField, FiniteField, PrimeField};
pub use io::{format_matrix, parse_factor_spec, parse_matrix, parse_poly, AnyMatrix};
pub use matrix::Matrix;
pub use poly::Poly;
pub use screen::{parse_bounds, screen, Ell, Outcome, ScreenInput, ScreenResult};
pub use smith::{invariant_factors, InvariantFactorList};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatclassError {
    #[error("field: {0}")]
    Field(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("invariant factors: {0}")]
    Factors(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("screen: {0}")]
    Screen(String),
}
