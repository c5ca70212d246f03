use num_bigint::BigUint;
use serde::Serialize;

use super::constants::{delta, ClassTuple};
use super::verdict::{theta, GenerationVerdict, Verdict};
use super::StructgenError;
use crate::chartab::{CharacterTable, SubgroupRecord};

pub const DEFAULT_MAX_K: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum LowerRule {
    /// A nonabelian group needs at least two generators.
    Nonabelian,
    /// Two involutions generate a dihedral group, and the table has an
    /// irreducible of degree above 2, so the group is not dihedral.
    Involution,
    /// In a centerless group, Δ(c, …, c, T) < |C_G(T)| for every T with m copies of c.
    CenterSweep { m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaWitness {
    pub k: usize,
    pub target: String,
    pub verdict: GenerationVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBound {
    pub class: String,
    pub lower: usize,
    /// None when no k up to `max_k` gave a GENERATED verdict.
    pub upper: Option<usize>,
    pub lower_rules: Vec<LowerRule>,
    pub witness: Option<AlphaWitness>,
    pub max_k: usize,
}

impl AlphaBound {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

/// Non-identity targets, largest element order first, then by class index.
fn target_order(table: &CharacterTable) -> Vec<usize> {
    let mut t: Vec<usize> = (1..table.num_classes()).collect();
    t.sort_by(|&a, &b| {
        table
            .class(b)
            .element_order
            .cmp(&table.class(a).element_order)
            .then(a.cmp(&b))
    });
    t
}

/// True when Δ(c^m, T) < |C_G(T)| for every class T, in a centerless group.
fn center_sweep(table: &CharacterTable, class: usize, m: usize) -> Result<bool, StructgenError> {
    if !table.is_centerless() {
        return Ok(false);
    }
    for t in 0..table.num_classes() {
        let mut idx = vec![class; m];
        idx.push(t);
        let d = delta(&ClassTuple::new(table, idx)?)?;
        if d >= BigUint::from(table.class(t).centralizer_order) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounds on the number of conjugates of an element of `class` needed to generate G.
pub fn alpha_bounds(
    table: &CharacterTable,
    subs: &[SubgroupRecord],
    class: usize,
    max_k: usize,
) -> Result<AlphaBound, StructgenError> {
    if class >= table.num_classes() {
        return Err(StructgenError::ClassIndex(class));
    }
    if class == 0 {
        return Err(StructgenError::IdentityClass);
    }
    if table.is_abelian() {
        return Err(StructgenError::Abelian(table.name().to_string()));
    }
    if max_k < 3 {
        return Err(StructgenError::MaxK(max_k));
    }

    let targets = target_order(table);
    let mut upper = None;
    let mut witness = None;
    'search: for k in 3..=max_k {
        for &t in &targets {
            let mut idx = vec![class; k - 1];
            idx.push(t);
            let v = theta(&ClassTuple::new(table, idx)?, subs)?;
            if v.verdict == Verdict::Generated {
                upper = Some(k - 1);
                witness = Some(AlphaWitness {
                    k,
                    target: table.class(t).name.clone(),
                    verdict: v,
                });
                break 'search;
            }
        }
    }

    let mut lower = 2;
    let mut lower_rules = vec![LowerRule::Nonabelian];
    if table.class(class).element_order == 2 && table.degrees().iter().any(|&d| d > 2) {
        lower = 3;
        lower_rules.push(LowerRule::Involution);
    }
    let cap = upper.map_or(max_k - 1, |u: usize| u.min(max_k - 1));
    for m in 2..=cap {
        if !center_sweep(table, class, m)? {
            break;
        }
        lower_rules.push(LowerRule::CenterSweep { m });
        lower = lower.max(m + 1);
    }
    if let Some(u) = upper {
        if lower > u {
            return Err(StructgenError::Inconsistent(format!(
                "class {}: lower bound {lower} exceeds the generated witness {u}",
                table.class(class).name
            )));
        }
    }
    Ok(AlphaBound {
        class: table.class(class).name.clone(),
        lower,
        upper,
        lower_rules,
        witness,
        max_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn bound(g: &str, class: &str) -> AlphaBound {
        let c = Corpus::embedded();
        let t = c.table(g).unwrap();
        let subs = c.maximal_subgroups(g).unwrap();
        alpha_bounds(&t, &subs, t.resolve_class(class).unwrap(), DEFAULT_MAX_K).unwrap()
    }

    #[test]
    fn s3_transpositions_generate_in_pairs() {
        let b = bound("S3", "2a");
        assert_eq!((b.lower, b.upper), (2, Some(2)));
    }

    #[test]
    fn a5_classes() {
        let b = bound("A5", "2a");
        assert_eq!((b.lower, b.upper), (3, Some(3)));
        let b = bound("A5", "5a");
        assert_eq!((b.lower, b.upper), (2, Some(2)));
        let b = bound("A5", "3a");
        assert_eq!(b.upper, Some(2));
    }

    #[test]
    fn rejects_identity_small_k_and_abelian() {
        let c = Corpus::embedded();
        let t = c.table("A5").unwrap();
        assert_eq!(alpha_bounds(&t, &[], 0, 5).unwrap_err(), StructgenError::IdentityClass);
        assert_eq!(alpha_bounds(&t, &[], 1, 2).unwrap_err(), StructgenError::MaxK(2));
    }
}
