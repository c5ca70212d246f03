//! Character tables: exact cyclotomic values, the JSON interchange format,
//! invariant checks and power-map queries.

mod cyclotomic;
mod subgroup;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use subgroup::{parse_subgroup, Normalizer, NormalizerRecord, SubgroupRecord};
pub use table::{parse_table, CharacterTable, ClassInfo};

pub(crate) use cyclotomic::bigint_json;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartabError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("table is not square: {classes} classes but {characters} characters")]
    NotSquare { classes: usize, characters: usize },
    #[error("character {row} has {len} values, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("the first class must be the identity (element order 1, size 1) and no other class may have order 1")]
    IdentityClass,
    #[error("class {class}: size {size} times centralizer order {centralizer} is not the group order {order}")]
    SizeCentralizer {
        class: String,
        size: u64,
        centralizer: u64,
        order: u64,
    },
    #[error("class sizes do not sum to group order (sum {sum}, order {order})")]
    ClassSizeSum { sum: u64, order: u64 },
    #[error("class {class}: element order {element_order} does not divide {what} {value}")]
    ElementOrder {
        class: String,
        element_order: u64,
        what: &'static str,
        value: u64,
    },
    #[error("exponent {exponent} is not the lcm {lcm} of the element orders")]
    Exponent { exponent: u64, lcm: u64 },
    #[error("missing power map for prime {0}")]
    MissingPowerMap(u64),
    #[error("power map for {prime}: {message}")]
    PowerMap { prime: u64, message: String },
    #[error("character {row}: value at the identity must be a positive integer, found {value}")]
    Degree { row: usize, value: String },
    #[error("character {row}, class {class}: value {value} is not an algebraic integer")]
    NonIntegralValue {
        row: usize,
        class: String,
        value: String,
    },
    #[error("row orthogonality fails for characters {a} and {b}")]
    RowOrthogonality { a: usize, b: usize },
    #[error("column orthogonality fails for classes {a} and {b}")]
    ColumnOrthogonality { a: String, b: String },
    #[error("`centerless` is {flag} but the class sizes say {actual}")]
    CenterFlag { flag: bool, actual: bool },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("fusion {what}: {message}")]
    Fusion { what: String, message: String },
    #[error("cannot resolve table reference `{reference}`: {message}")]
    Reference { reference: String, message: String },
}

impl ChartabError {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        ChartabError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn from_json_error(e: &serde_json::Error) -> Self {
        ChartabError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
