//! Generation of finite groups by conjugate elements, decided with exact
//! structure constants, plus the cyclic / almost cyclic classification of
//! matrices over finite fields.
//!
//! - [`chartab`]: cyclotomic numbers, character tables, subgroup records.
//! - [`structgen`]: structure constants, subgroup corrections, verdicts, α bounds,
//!   restriction decompositions.
//! - [`matclass`]: polynomials and matrices over finite fields, invariant factors,
//!   classification and the dimension screen.
//! - [`permoracle`]: brute-force permutation group counts used as ground truth.
//! - [`corpus`]: the embedded data files.

pub mod chartab;
pub mod corpus;
pub mod matclass;
pub mod permoracle;
pub mod structgen;
