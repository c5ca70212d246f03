use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::StructgenError;
use crate::chartab::{CharacterTable, Cyclotomic, Normalizer, SubgroupRecord};

/// Classes (C_1, …, C_k) of one table; the last one holds the fixed g_k.
#[derive(Clone, Debug)]
pub struct ClassTuple<'t> {
    table: &'t CharacterTable,
    indices: Vec<usize>,
}

impl<'t> ClassTuple<'t> {
    pub fn new(table: &'t CharacterTable, indices: Vec<usize>) -> Result<Self, StructgenError> {
        if indices.len() < 3 {
            return Err(StructgenError::TupleLength(indices.len()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= table.num_classes()) {
            return Err(StructgenError::ClassIndex(bad));
        }
        Ok(ClassTuple { table, indices })
    }

    pub fn from_names<S: AsRef<str>>(table: &'t CharacterTable, names: &[S]) -> Result<Self, StructgenError> {
        let indices = names
            .iter()
            .map(|n| table.resolve_class(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(table, indices)
    }

    pub fn table(&self) -> &'t CharacterTable {
        self.table
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn target(&self) -> usize {
        *self.indices.last().expect("tuple is nonempty")
    }

    pub fn names(&self) -> Vec<String> {
        self.indices
            .iter()
            .map(|&i| self.table.class(i).name.clone())
            .collect()
    }

    pub fn label(&self) -> String {
        self.names().join(",")
    }
}

/// The structure constant as an exact rational, before the integrality check.
pub fn delta_rational(table: &CharacterTable, indices: &[usize]) -> BigRational {
    let k = indices.len();
    let (head, target) = indices.split_at(k - 1);
    let target = target[0];
    let mut sum = Cyclotomic::zero();
    for (i, row) in table.characters().iter().enumerate() {
        let mut prod = row[head[0]].clone();
        for &c in &head[1..] {
            if prod.is_zero() {
                break;
            }
            prod = &prod * &row[c];
        }
        if prod.is_zero() {
            continue;
        }
        prod = &prod * &row[target].conj();
        let deg = BigInt::from(table.degrees()[i]).pow((k - 2) as u32);
        sum = &sum + &prod.scale(&BigRational::new(BigInt::one(), deg));
    }
    let sizes: BigInt = head
        .iter()
        .map(|&c| BigInt::from(table.class(c).size))
        .product();
    let factor = BigRational::new(sizes, BigInt::from(table.order()));
    match sum.to_rational() {
        Some(q) => q * factor,
        // An irrational sum cannot come from a valid table; report it as a
        // non-integral value with a marker denominator of zero numerator.
        None => BigRational::new(BigInt::from(-1), BigInt::from(2)),
    }
}

fn checked_count(q: BigRational, tuple: impl FnOnce() -> String) -> Result<BigUint, StructgenError> {
    if q.is_integer() && !q.is_negative() {
        return Ok(q.to_integer().to_biguint().expect("nonnegative"));
    }
    Err(StructgenError::NonIntegral {
        tuple: tuple(),
        value: q.to_string(),
    })
}

/// Δ_G(C_1, …, C_k).
pub fn delta(tuple: &ClassTuple) -> Result<BigUint, StructgenError> {
    let q = delta_rational(tuple.table(), tuple.indices());
    checked_count(q, || tuple.label())
}

/// H-classes fusing into each class of the tuple.
fn candidates(sub: &SubgroupRecord, indices: &[usize]) -> Vec<Vec<usize>> {
    indices
        .iter()
        .map(|&c| {
            (0..sub.fusion.len())
                .filter(|&i| sub.fusion[i] == c)
                .collect()
        })
        .collect()
}

/// Σ_H: the sum of Δ_H(c_1, …, c_k) over H-class tuples with c_i fusing into C_i.
///
/// The sum over tuples factors through the characters of H, so each position
/// contributes one class-size-weighted character sum.
pub fn sigma_h(sub: &SubgroupRecord, tuple: &ClassTuple) -> Result<BigUint, StructgenError> {
    let cands = candidates(sub, tuple.indices());
    if cands.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero());
    }
    let h = &sub.table;
    let k = tuple.len();
    let mut sum = Cyclotomic::zero();
    for (i, row) in h.characters().iter().enumerate() {
        let mut prod = Cyclotomic::one();
        for cs in &cands[..k - 1] {
            let a: Cyclotomic = cs
                .iter()
                .map(|&c| row[c].scale(&BigRational::from_integer(h.class(c).size.into())))
                .sum();
            prod = &prod * &a;
            if prod.is_zero() {
                break;
            }
        }
        if prod.is_zero() {
            continue;
        }
        let b: Cyclotomic = cands[k - 1].iter().map(|&c| row[c].conj()).sum();
        prod = &prod * &b;
        let deg = BigInt::from(h.degrees()[i]).pow((k - 2) as u32);
        sum = &sum + &prod.scale(&BigRational::new(BigInt::one(), deg));
    }
    let q = match sum.to_rational() {
        Some(q) => q / BigRational::from_integer(h.order().into()),
        None => BigRational::new(BigInt::from(-1), BigInt::from(2)),
    };
    checked_count(q, || format!("{} in {}", tuple.label(), sub.name))
}

/// Σ_H computed term by term: one Δ_H per H-class tuple.
pub fn sigma_h_terms(sub: &SubgroupRecord, tuple: &ClassTuple) -> Result<BigUint, StructgenError> {
    let cands = candidates(sub, tuple.indices());
    if cands.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::zero();
    let mut pick = vec![0usize; cands.len()];
    loop {
        let idx: Vec<usize> = pick.iter().zip(&cands).map(|(&p, c)| c[p]).collect();
        let q = delta_rational(&sub.table, &idx);
        total += checked_count(q, || format!("{:?} in {}", idx, sub.name))?;
        let mut pos = 0;
        loop {
            if pos == pick.len() {
                return Ok(total);
            }
            pick[pos] += 1;
            if pick[pos] < cands[pos].len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

/// h(x, H): the number of conjugates of H containing a fixed x in G-class `class`.
pub fn h_count(sub: &SubgroupRecord, parent: &CharacterTable, class: usize) -> Result<u64, StructgenError> {
    let info = parent
        .classes()
        .get(class)
        .ok_or(StructgenError::ClassIndex(class))?;
    if let Some(&v) = sub.h_override.get(&info.name) {
        return Ok(v);
    }
    if info.element_order.gcd(&sub.normalizer_index) != 1 {
        return Err(StructgenError::GcdPrecondition {
            subgroup: sub.name.clone(),
            class: info.name.clone(),
            element_order: info.element_order,
            index: sub.normalizer_index,
        });
    }
    let (ntable, nfusion) = match &sub.normalizer {
        Normalizer::SelfNormalizing => (&sub.table, &sub.fusion),
        Normalizer::Proper(n) => (&n.table, &n.fusion),
    };
    let mut total = 0u64;
    for (i, &f) in nfusion.iter().enumerate() {
        if f != class {
            continue;
        }
        let cn = ntable.class(i).centralizer_order;
        if info.centralizer_order % cn != 0 {
            return Err(StructgenError::NonIntegralSummand {
                subgroup: sub.name.clone(),
                class: info.name.clone(),
                numerator: info.centralizer_order,
                denominator: cn,
            });
        }
        total += info.centralizer_order / cn;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;

    fn table(name: &str) -> CharacterTable {
        Corpus::embedded().table(name).unwrap()
    }

    fn d(t: &CharacterTable, names: &[&str]) -> u64 {
        let tuple = ClassTuple::from_names(t, names).unwrap();
        u64::try_from(delta(&tuple).unwrap()).unwrap()
    }

    #[test]
    fn s3_transposition_pairs() {
        let s3 = table("S3");
        assert_eq!(d(&s3, &["2a", "2a", "3a"]), 3);
        assert_eq!(d(&s3, &["1a", "3a", "3a"]), 1);
        assert_eq!(d(&s3, &["2a", "2a", "1a"]), 3);
    }

    #[test]
    fn tuples_need_three_classes() {
        let s3 = table("S3");
        assert_eq!(
            ClassTuple::new(&s3, vec![1, 1]).unwrap_err(),
            StructgenError::TupleLength(2)
        );
        assert!(matches!(
            ClassTuple::new(&s3, vec![1, 1, 7]).unwrap_err(),
            StructgenError::ClassIndex(7)
        ));
    }

    #[test]
    fn h_count_examples() {
        let c = Corpus::embedded();
        let s4 = c.table("S4").unwrap();
        let subs = c.subgroups("S4").unwrap();
        let s3 = subs.iter().find(|s| s.name == "S3").unwrap();
        let two_a = s4.resolve_class("2a").unwrap();
        let two_b = s4.resolve_class("2b").unwrap();
        // Transpositions are the 6-element class here; a fixed one lies in 2 point stabilizers.
        let transposition = if s4.class(two_a).size == 6 { two_a } else { two_b };
        assert_eq!(h_count(s3, &s4, transposition).unwrap(), 2);
        assert_eq!(h_count(s3, &s4, 0).unwrap(), 4);
        let four_a = s4.resolve_class("4a").unwrap();
        assert_eq!(h_count(s3, &s4, four_a).unwrap(), 0);
        // A4 is normal of index 2: the 2-elements need the recorded override.
        let a4 = subs.iter().find(|s| s.name == "A4").unwrap();
        let mut stripped = a4.clone();
        stripped.h_override.clear();
        let double = if s4.class(two_a).size == 3 { two_a } else { two_b };
        assert!(matches!(
            h_count(&stripped, &s4, double),
            Err(StructgenError::GcdPrecondition { .. })
        ));
        assert_eq!(h_count(a4, &s4, double).unwrap(), 1);
        assert_eq!(h_count(a4, &s4, 0).unwrap(), 1);
    }

    #[test]
    fn factored_sigma_matches_term_sum() {
        let c = Corpus::embedded();
        for g in ["S4", "A5", "S5", "L2(7)", "M11"] {
            let t = c.table(g).unwrap();
            let subs = c.subgroups(g).unwrap();
            let r = t.num_classes();
            for sub in &subs {
                for a in 1..r {
                    for b in a..r {
                        for target in 0..r {
                            let tuple = ClassTuple::new(&t, vec![a, b, target]).unwrap();
                            assert_eq!(
                                sigma_h(sub, &tuple).unwrap(),
                                sigma_h_terms(sub, &tuple).unwrap(),
                                "{g} {} {}",
                                sub.name,
                                tuple.label()
                            );
                        }
                    }
                }
            }
        }
    }
}
