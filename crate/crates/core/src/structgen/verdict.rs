use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::constants::{delta, h_count, sigma_h, ClassTuple};
use super::StructgenError;
use crate::chartab::{bigint_json, SubgroupRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Θ > 0.
    Generated,
    /// Centerless group with Δ < |C_G(g_k)|: no tuple can generate.
    NotGenerated,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Generated => "GENERATED",
            Verdict::NotGenerated => "NOT_GENERATED",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

pub(crate) fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    bigint_json(&BigInt::from(x.clone())).serialize(s)
}

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    bigint_json(x).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub subgroup: String,
    pub h: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub sigma: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationVerdict {
    pub tuple: Vec<String>,
    #[serde(serialize_with = "ser_biguint")]
    pub delta: BigUint,
    pub corrections: Vec<Correction>,
    #[serde(serialize_with = "ser_bigint")]
    pub theta: BigInt,
    pub verdict: Verdict,
    /// |C_G(g_k)|.
    pub centralizer: u64,
    pub centerless: bool,
    /// Every subgroup record supplied, including those with Σ_H = 0.
    pub subgroups_considered: Vec<String>,
}

/// Θ = Δ − Σ h(g_k, H)·Σ_H over the supplied subgroup classes, and the verdict
/// it supports. The list is trusted to hold one representative per class of
/// maximal subgroups.
pub fn theta(tuple: &ClassTuple, subs: &[SubgroupRecord]) -> Result<GenerationVerdict, StructgenError> {
    let table = tuple.table();
    let d = delta(tuple)?;
    let target = tuple.target();
    let mut corrections = Vec::new();
    let mut theta = BigInt::from(d.clone());
    for sub in subs {
        let sigma = sigma_h(sub, tuple)?;
        if sigma.is_zero() {
            continue;
        }
        let h = h_count(sub, table, target)?;
        theta -= BigInt::from(h) * BigInt::from(sigma.clone());
        corrections.push(Correction {
            subgroup: sub.name.clone(),
            h,
            sigma,
        });
    }
    let centralizer = table.class(target).centralizer_order;
    let verdict = if theta.is_positive() {
        Verdict::Generated
    } else if table.is_centerless() && d < BigUint::from(centralizer) {
        Verdict::NotGenerated
    } else {
        Verdict::Undecided
    };
    Ok(GenerationVerdict {
        tuple: tuple.names(),
        delta: d,
        corrections,
        theta,
        verdict,
        centralizer,
        centerless: table.is_centerless(),
        subgroups_considered: subs.iter().map(|s| s.name.clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    #[test]
    fn empty_subgroup_list_gives_theta_equal_delta() {
        let c = Corpus::embedded();
        let t = c.table("A5").unwrap();
        let tuple = ClassTuple::from_names(&t, &["2a", "3a", "5a"]).unwrap();
        let v = theta(&tuple, &[]).unwrap();
        assert_eq!(BigInt::from(v.delta.clone()), v.theta);
        assert!(v.corrections.is_empty());
        assert_eq!(v.verdict, Verdict::Generated);
    }

    #[test]
    fn dihedral_pairs_are_never_generating() {
        let c = Corpus::embedded();
        let t = c.table("A5").unwrap();
        let subs = c.maximal_subgroups("A5").unwrap();
        for target in 1..t.num_classes() {
            let tuple = ClassTuple::new(&t, vec![1, 1, target]).unwrap();
            let v = theta(&tuple, &subs).unwrap();
            assert_ne!(v.verdict, Verdict::Generated, "{:?}", v.tuple);
            assert!(v.theta <= BigInt::from(v.delta.clone()));
        }
    }

    #[test]
    fn report_shape() {
        let c = Corpus::embedded();
        let t = c.table("M11").unwrap();
        let subs = c.maximal_subgroups("M11").unwrap();
        let tuple = ClassTuple::from_names(&t, &["5a", "5a", "11a"]).unwrap();
        let v = theta(&tuple, &subs).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "GENERATED");
        assert_eq!(j["tuple"][2], "11a");
        assert_eq!(j["subgroups_considered"].as_array().unwrap().len(), 5);
        assert!(j["delta"].is_u64());
    }
}
