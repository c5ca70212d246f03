//! Structure constants and the generation verdicts built on them.
//!
//! For a tuple of classes (C_1, …, C_k) with g_k ∈ C_k fixed, Δ counts the
//! tuples (g_1, …, g_{k-1}) ∈ C_1 × … × C_{k-1} with g_1⋯g_{k-1} = g_k.
//! Subtracting, for each maximal subgroup H, h(g_k, H) times the number of such
//! tuples inside H gives a lower bound Θ for the generating tuples.

mod alpha;
mod constants;
mod restrict;
mod verdict;

pub use alpha::{alpha_bounds, AlphaBound, AlphaWitness, LowerRule, DEFAULT_MAX_K};
pub use constants::{delta, delta_rational, h_count, sigma_h, sigma_h_terms, ClassTuple};
pub use restrict::{
    feasible_restrictions, parse_restriction_spec, Candidate, Constraint, Decomposition, Term,
    RestrictionSpec,
};
pub use verdict::{theta, Correction, GenerationVerdict, Verdict};

use thiserror::Error;

use crate::chartab::ChartabError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructgenError {
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("a class tuple needs at least 3 classes, got {0}")]
    TupleLength(usize),
    #[error("class index {0} is out of range")]
    ClassIndex(usize),
    #[error("structure constant for ({tuple}) evaluates to {value}, not a nonnegative integer; the table data is corrupt")]
    NonIntegral { tuple: String, value: String },
    #[error("h({class}, {subgroup}): element order {element_order} is not coprime to the normalizer index {index}; the subgroup record needs an h_override entry for {class}")]
    GcdPrecondition {
        subgroup: String,
        class: String,
        element_order: u64,
        index: u64,
    },
    #[error("h({class}, {subgroup}): summand {numerator}/{denominator} is not an integer")]
    NonIntegralSummand {
        subgroup: String,
        class: String,
        numerator: u64,
        denominator: u64,
    },
    #[error("the identity class has no generation number")]
    IdentityClass,
    #[error("group {0} is abelian, so conjugates of g only generate <g>")]
    Abelian(String),
    #[error("max_k must be at least 3, got {0}")]
    MaxK(usize),
    #[error("restriction spec: {0}")]
    Restriction(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}
