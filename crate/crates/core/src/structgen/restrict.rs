use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use super::StructgenError;
use crate::chartab::Cyclotomic;

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub name: String,
    pub degree: u64,
    /// One value per listed class; None where the value is not known.
    pub values: Vec<Option<Cyclotomic>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Constraint {
    /// The summed character takes one value on all these classes (indices into `classes`).
    Equal(Vec<usize>),
    /// The summed character takes `value` on `class`.
    Fixed { class: usize, value: Cyclotomic },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionSpec {
    pub name: String,
    pub target_dim: u64,
    pub classes: Vec<String>,
    pub candidates: Vec<Candidate>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    pub label: String,
}

impl Decomposition {
    fn new(spec: &RestrictionSpec, mult: &[u64]) -> Self {
        let terms: Vec<Term> = spec
            .candidates
            .iter()
            .zip(mult)
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| Term {
                name: c.name.clone(),
                multiplicity: m,
            })
            .collect();
        let label = if terms.is_empty() {
            "0".to_string()
        } else {
            terms
                .iter()
                .map(|t| match t.multiplicity {
                    1 => t.name.clone(),
                    m => format!("{m}*{}", t.name),
                })
                .collect::<Vec<_>>()
                .join("+")
        };
        Decomposition { terms, label }
    }
}

fn err(msg: impl Into<String>) -> StructgenError {
    StructgenError::Restriction(msg.into())
}

fn class_pos(classes: &[String], name: &str) -> Result<usize, StructgenError> {
    classes
        .iter()
        .position(|c| c.eq_ignore_ascii_case(name))
        .ok_or_else(|| err(format!("constraint names unknown class `{name}`")))
}

pub fn parse_restriction_spec(text: &str) -> Result<RestrictionSpec, StructgenError> {
    let v: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let str_field = |v: &Value, k: &str| -> Result<String, StructgenError> {
        v.get(k)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| err(format!("missing string `{k}`")))
    };
    let name = str_field(&v, "name")?;
    let target_dim = v
        .get("target_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("missing integer `target_dim`"))?;
    let classes: Vec<String> = v
        .get("classes")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing array `classes`"))?
        .iter()
        .map(|c| c.as_str().map(str::to_string).ok_or_else(|| err("class names must be strings")))
        .collect::<Result<_, _>>()?;
    let mut candidates = Vec::new();
    for c in v
        .get("candidates")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing array `candidates`"))?
    {
        let cname = str_field(c, "name")?;
        let degree = c
            .get("degree")
            .and_then(Value::as_u64)
            .filter(|&d| d > 0)
            .ok_or_else(|| err(format!("{cname}: degree must be a positive integer")))?;
        let raw = c
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| err(format!("{cname}: missing `values`")))?;
        if raw.len() != classes.len() {
            return Err(err(format!(
                "{cname}: {} values for {} classes",
                raw.len(),
                classes.len()
            )));
        }
        let values = raw
            .iter()
            .map(|x| match x {
                Value::Null => Ok(None),
                x => Cyclotomic::from_json(x)
                    .map(Some)
                    .map_err(|m| err(format!("{cname}: {m}"))),
            })
            .collect::<Result<_, _>>()?;
        candidates.push(Candidate {
            name: cname,
            degree,
            values,
        });
    }
    let mut constraints = Vec::new();
    if let Some(list) = v.get("constraints") {
        for c in list.as_array().ok_or_else(|| err("`constraints` must be an array"))? {
            if let Some(eq) = c.get("equal") {
                let idx = eq
                    .as_array()
                    .ok_or_else(|| err("`equal` must list class names"))?
                    .iter()
                    .map(|n| {
                        let n = n.as_str().ok_or_else(|| err("`equal` must list class names"))?;
                        class_pos(&classes, n)
                    })
                    .collect::<Result<_, _>>()?;
                constraints.push(Constraint::Equal(idx));
            } else {
                let class = class_pos(&classes, &str_field(c, "class")?)?;
                let value = Cyclotomic::from_json(
                    c.get("value").ok_or_else(|| err("fixed constraint needs `value`"))?,
                )
                .map_err(err)?;
                constraints.push(Constraint::Fixed { class, value });
            }
        }
    }
    Ok(RestrictionSpec {
        name,
        target_dim,
        classes,
        candidates,
        constraints,
    })
}

/// Summed values of a multiset on each class; None where some summand is unknown.
fn sums(spec: &RestrictionSpec, mult: &[u64]) -> Vec<Option<Cyclotomic>> {
    (0..spec.classes.len())
        .map(|j| {
            let mut acc = Cyclotomic::zero();
            for (c, &m) in spec.candidates.iter().zip(mult) {
                if m == 0 {
                    continue;
                }
                let v = c.values[j].as_ref()?;
                acc = &acc + &v.scale(&BigRational::from_integer(m.into()));
            }
            Some(acc)
        })
        .collect()
}

fn satisfies(spec: &RestrictionSpec, mult: &[u64]) -> bool {
    let s = sums(spec, mult);
    spec.constraints.iter().all(|c| match c {
        Constraint::Fixed { class, value } => s[*class].as_ref().is_none_or(|v| v == value),
        Constraint::Equal(classes) => {
            let mut known = classes.iter().filter_map(|&j| s[j].as_ref());
            match known.next() {
                None => true,
                Some(first) => known.all(|v| v == first),
            }
        }
    })
}

fn search(spec: &RestrictionSpec, i: usize, left: u64, mult: &mut Vec<u64>, out: &mut Vec<Decomposition>) {
    if left == 0 {
        let full: Vec<u64> = mult.iter().copied().chain(std::iter::repeat(0)).take(spec.candidates.len()).collect();
        if satisfies(spec, &full) {
            out.push(Decomposition::new(spec, &full));
        }
        return;
    }
    if i == spec.candidates.len() {
        return;
    }
    let deg = spec.candidates[i].degree;
    for m in (0..=left / deg).rev() {
        mult.push(m);
        search(spec, i + 1, left - m * deg, mult, out);
        mult.pop();
    }
}

/// All multisets of candidates with total degree `target_dim` meeting every
/// constraint. Unknown values never exclude a multiset.
pub fn feasible_restrictions(spec: &RestrictionSpec) -> Result<Vec<Decomposition>, StructgenError> {
    if let Some(c) = spec.candidates.iter().find(|c| c.degree == 0) {
        return Err(err(format!("{}: degree must be positive", c.name)));
    }
    let mut out = Vec::new();
    search(spec, 0, spec.target_dim, &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn spec(name: &str) -> RestrictionSpec {
        parse_restriction_spec(&Corpus::embedded().restriction_spec(name).unwrap()).unwrap()
    }

    #[test]
    fn zero_dimension_has_the_empty_sum() {
        let mut s = spec("H7");
        s.target_dim = 0;
        s.constraints.clear();
        let r = feasible_restrictions(&s).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].terms.is_empty());
    }

    #[test]
    fn embedded_specs_have_unique_survivors() {
        let labels = |n: &str| -> Vec<String> {
            feasible_restrictions(&spec(n))
                .unwrap()
                .into_iter()
                .map(|d| d.label)
                .collect()
        };
        assert_eq!(labels("H7"), vec!["chi12+chi13"]);
        assert_eq!(labels("H12"), vec!["chi9"]);
        assert_eq!(labels("H6"), vec!["2*chi2+chi3"]);
    }

    #[test]
    fn infeasible_spec_is_empty() {
        let mut s = spec("H12");
        s.target_dim = 5;
        s.constraints.push(Constraint::Fixed {
            class: 0,
            value: Cyclotomic::from_int(1000),
        });
        assert!(feasible_restrictions(&s).unwrap().is_empty());
    }

    #[test]
    fn unknown_constraint_class_is_rejected() {
        let text = r#"{"name":"x","target_dim":1,"classes":["1a"],
            "candidates":[{"name":"a","degree":1,"values":[1]}],
            "constraints":[{"equal":["1a","9z"]}]}"#;
        assert!(matches!(parse_restriction_spec(text), Err(StructgenError::Restriction(_))));
    }
}
