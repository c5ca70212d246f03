use serde::Serialize;

use super::field::FiniteField;
use super::matrix::Matrix;
use super::poly::Poly;
use super::smith::{invariant_factors, InvariantFactorList};
use super::MatclassError;

/// Cyclicity class of a square matrix. Scalar matrices of size ≥ 2 are kept
/// apart from the almost cyclic ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CyclicityClass<E> {
    Scalar,
    Cyclic,
    /// Similar to diag(α·I_h, M_1) with M_1 cyclic, non-scalar, h ≥ 1.
    AlmostCyclic { alpha: E, h: usize },
    Neither,
}

impl<E> CyclicityClass<E> {
    pub fn name(&self) -> &'static str {
        match self {
            CyclicityClass::Scalar => "SCALAR",
            CyclicityClass::Cyclic => "CYCLIC",
            CyclicityClass::AlmostCyclic { .. } => "ALMOST_CYCLIC",
            CyclicityClass::Neither => "NEITHER",
        }
    }

    pub fn map<G>(self, g: impl FnOnce(E) -> G) -> CyclicityClass<G> {
        match self {
            CyclicityClass::Scalar => CyclicityClass::Scalar,
            CyclicityClass::Cyclic => CyclicityClass::Cyclic,
            CyclicityClass::AlmostCyclic { alpha, h } => CyclicityClass::AlmostCyclic { alpha: g(alpha), h },
            CyclicityClass::Neither => CyclicityClass::Neither,
        }
    }
}

/// Classification from an invariant factor chain: CYCLIC for one factor;
/// otherwise all but the last factor must be one linear x − α.
pub fn classify_factors<F: FiniteField>(inv: &InvariantFactorList<F>) -> CyclicityClass<F::Elem> {
    let fs = inv.factors();
    let s = fs.len();
    if s <= 1 {
        return CyclicityClass::Cyclic;
    }
    let penult = &fs[s - 2];
    if penult.degree() != Some(1) {
        return CyclicityClass::Neither;
    }
    let alpha = penult.field().neg(&penult.coeff(0));
    if fs[s - 1] == *penult {
        CyclicityClass::Scalar
    } else {
        CyclicityClass::AlmostCyclic { alpha, h: s - 1 }
    }
}

pub fn classify<F: FiniteField>(a: &Matrix<F>) -> CyclicityClass<F::Elem> {
    classify_factors(&invariant_factors(a))
}

/// Classification from the minimal and characteristic polynomials alone.
/// None when the pair does not decide (e.g. (x − α)^2 | m and p/m = (x − α)^h, h ≥ 2).
pub fn classify_from_polys<F: FiniteField>(
    min_poly: &Poly<F>,
    char_poly: &Poly<F>,
) -> Result<Option<CyclicityClass<F::Elem>>, MatclassError> {
    let m = min_poly.monic();
    let p = char_poly.monic();
    if m.is_zero() || p.is_zero() {
        return Err(MatclassError::Factors("polynomials must be nonzero".into()));
    }
    let (q, r) = p.divrem(&m);
    if !r.is_zero() {
        return Err(MatclassError::Factors(format!("{m} does not divide {p}")));
    }
    if q.degree() == Some(0) {
        return Ok(Some(CyclicityClass::Cyclic));
    }
    let Some((alpha, h)) = q.as_linear_power() else {
        return Ok(Some(CyclicityClass::Neither));
    };
    let f = m.field().clone();
    let lin = Poly::linear(f, &alpha);
    if !lin.divides(&m) {
        return Err(MatclassError::Factors(format!(
            "{p} and {m} cannot both be attained: {lin} divides p/m but not m"
        )));
    }
    if m == lin {
        return Ok(Some(CyclicityClass::Scalar));
    }
    if h == 1 || !lin.mul(&lin).divides(&m) {
        return Ok(Some(CyclicityClass::AlmostCyclic { alpha, h }));
    }
    Ok(None)
}

/// JSON-friendly classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub field: serde_json::Value,
    pub n: usize,
    pub char_poly: String,
    pub min_poly: String,
    pub invariant_factors: Vec<String>,
    pub class: String,
    pub alpha: Option<String>,
    pub h: Option<usize>,
}

pub fn class_report<F: FiniteField>(a: &Matrix<F>) -> ClassReport {
    let inv = invariant_factors(a);
    report_from_factors(a.field(), &inv)
}

pub fn report_from_factors<F: FiniteField>(field: &F, inv: &InvariantFactorList<F>) -> ClassReport {
    let class = classify_factors(inv);
    let (alpha, h) = match &class {
        CyclicityClass::AlmostCyclic { alpha, h } => (Some(field.format(alpha)), Some(*h)),
        _ => (None, None),
    };
    ClassReport {
        field: field.descriptor(),
        n: inv.dimension(),
        char_poly: inv.char_poly(field).to_string(),
        min_poly: inv
            .min_poly()
            .map_or_else(|| "1".to_string(), ToString::to_string),
        invariant_factors: inv.to_strings(),
        class: class.name().to_string(),
        alpha,
        h,
    }
}
