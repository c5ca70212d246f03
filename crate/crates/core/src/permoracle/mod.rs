//! Brute-force counts on permutation groups, used as ground truth for the
//! character-theoretic formulas.

mod chain;
mod count;
mod fixture;
mod group;
mod perm;

pub use count::{
    delta_brute, delta_brute_at, delta_star_brute, find_generating_tuple, h_brute, sigma_brute,
    DEFAULT_BUDGET,
};
pub use fixture::{parse_fixture, Fixture, FixtureSubgroup};
pub use group::{ConjClass, PermGroup, DEFAULT_SMALL_LIMIT};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("group order {order} exceeds the small-mode limit {limit}")]
    NotSmall { order: u64, limit: u64 },
    #[error("group order does not fit in 64 bits")]
    OrderOverflow,
    #[error("incomplete: {0}")]
    Incomplete(String),
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("unknown subgroup {0}")]
    UnknownSubgroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("a class tuple needs at least 3 classes, got {0}")]
    TupleLength(usize),
    #[error("enumeration needs {needed} candidate tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}
