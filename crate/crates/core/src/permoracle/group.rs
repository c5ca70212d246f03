use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use super::chain::StabChain;
use super::perm::Perm;
use super::PermError;

/// Largest order for which the element set is materialised.
pub const DEFAULT_SMALL_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    pub label: String,
    pub element_order: u64,
    pub size: u64,
    pub centralizer_order: u64,
    /// Lexicographically least image array in the class.
    pub representative: Perm,
}

#[derive(Debug)]
struct SmallData {
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    class_of: Vec<u32>,
    classes: Vec<ConjClass>,
    members: Vec<Vec<u32>>,
}

/// A permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: u64,
    transitive: bool,
    small_limit: u64,
    small: OnceLock<Result<SmallData, PermError>>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, PermError> {
        Self::with_small_limit(degree, gens, DEFAULT_SMALL_LIMIT)
    }

    pub fn with_small_limit(degree: usize, gens: Vec<Perm>, small_limit: u64) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::InvalidPerm(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order().ok_or(PermError::OrderOverflow)?;
        let transitive = orbit(degree, &gens, 0).len() == degree;
        Ok(PermGroup {
            degree,
            gens,
            chain,
            order,
            transitive,
            small_limit,
            small: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn is_small(&self) -> bool {
        self.order <= self.small_limit
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Perm {
        self.chain.random(rng)
    }

    /// True when the given elements generate the whole group.
    pub fn is_generated_by(&self, elems: &[Perm]) -> bool {
        if self.transitive && self.degree > 1 && orbit(self.degree, elems, 0).len() != self.degree {
            return false;
        }
        StabChain::new(self.degree, elems).order() == Some(self.order)
    }

    /// The subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(PermError::NotSubgroup(format!("{g} is not in the group")));
        }
        PermGroup::with_small_limit(self.degree, gens, self.small_limit)
    }

    fn small(&self) -> Result<&SmallData, PermError> {
        self.small
            .get_or_init(|| self.build_small())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_small(&self) -> Result<SmallData, PermError> {
        if !self.is_small() {
            return Err(PermError::NotSmall {
                order: self.order,
                limit: self.small_limit,
            });
        }
        let id = Perm::identity(self.degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::with_capacity(self.order as usize);
        index.insert(id, 0u32);
        let mut i = 0;
        while i < elements.len() {
            for s in &self.gens {
                let y = elements[i].mul(s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            i += 1;
        }
        if elements.len() as u64 != self.order {
            return Err(PermError::Incomplete(format!(
                "closure has {} elements but the chain order is {}",
                elements.len(),
                self.order
            )));
        }
        let gen_inv: Vec<(Perm, Perm)> = self.gens.iter().map(|s| (s.clone(), s.inv())).collect();
        let none = u32::MAX;
        let mut raw_of = vec![none; elements.len()];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..elements.len() {
            if raw_of[start] != none {
                continue;
            }
            let c = raw.len() as u32;
            raw_of[start] = c;
            let mut orbit = vec![start as u32];
            let mut j = 0;
            while j < orbit.len() {
                let y = &elements[orbit[j] as usize];
                for (s, _) in &gen_inv {
                    let z = index[&y.conj(s)];
                    if raw_of[z as usize] == none {
                        raw_of[z as usize] = c;
                        orbit.push(z);
                    }
                }
                j += 1;
            }
            raw.push(orbit);
        }
        let mut keyed: Vec<(u64, u64, Perm, Vec<u32>)> = raw
            .into_iter()
            .map(|mut orbit| {
                orbit.sort_by(|a, b| elements[*a as usize].cmp(&elements[*b as usize]));
                let rep = elements[orbit[0] as usize].clone();
                (rep.order(), orbit.len() as u64, rep, orbit)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let mut class_of = vec![0u32; elements.len()];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut members = Vec::with_capacity(keyed.len());
        let mut letter = 0usize;
        for (ci, (ord, size, rep, orbit)) in keyed.into_iter().enumerate() {
            letter = match classes.last() {
                Some(ConjClass { element_order, .. }) if *element_order == ord => letter + 1,
                _ => 0,
            };
            for &e in &orbit {
                class_of[e as usize] = ci as u32;
            }
            classes.push(ConjClass {
                label: format!("{ord}{}", letters(letter)),
                element_order: ord,
                size,
                centralizer_order: self.order / size,
                representative: rep,
            });
            members.push(orbit);
        }
        Ok(SmallData {
            elements,
            index,
            class_of,
            classes,
            members,
        })
    }

    pub fn elements(&self) -> Result<&[Perm], PermError> {
        Ok(&self.small()?.elements)
    }

    /// Classes ordered by element order, then size, then representative.
    pub fn classes(&self) -> Result<&[ConjClass], PermError> {
        Ok(&self.small()?.classes)
    }

    pub fn class_members(&self, class: usize) -> Result<&[u32], PermError> {
        self.small()?
            .members
            .get(class)
            .map(Vec::as_slice)
            .ok_or_else(|| PermError::UnknownClass(format!("#{class}")))
    }

    pub fn class_of(&self, g: &Perm) -> Result<usize, PermError> {
        let s = self.small()?;
        let i = s
            .index
            .get(g)
            .ok_or_else(|| PermError::NotSubgroup(format!("{g} is not in the group")))?;
        Ok(s.class_of[*i as usize] as usize)
    }

    /// Index of g in [`elements`](Self::elements).
    pub fn element_index(&self, g: &Perm) -> Result<Option<u32>, PermError> {
        Ok(self.small()?.index.get(g).copied())
    }

    /// Class of the element with the given index.
    pub fn class_of_index(&self, i: u32) -> Result<usize, PermError> {
        Ok(self.small()?.class_of[i as usize] as usize)
    }

    pub fn class_by_label(&self, label: &str) -> Result<usize, PermError> {
        self.classes()?
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| PermError::UnknownClass(label.to_string()))
    }

    /// A uniformly random element of a class.
    pub fn random_in_class(&self, class: usize, rng: &mut impl Rng) -> Result<Perm, PermError> {
        let rep = &self.classes()?[class].representative;
        Ok(rep.conj(&self.random_element(rng)))
    }

    pub fn is_centerless(&self) -> Result<bool, PermError> {
        Ok(self.classes()?.iter().filter(|c| c.size == 1).count() == 1)
    }
}

fn letters(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

/// Orbit of a point under a set of permutations.
pub(crate) fn orbit(n: usize, gens: &[Perm], start: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut out = vec![start];
    let mut j = 0;
    while j < out.len() {
        for g in gens {
            let y = g.at(out[j]);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        j += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sym(n: usize) -> PermGroup {
        let c: Vec<u32> = (0..n as u32).collect();
        PermGroup::new(
            n,
            vec![
                Perm::from_cycles(n, &[&c]).unwrap(),
                Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s3_classes() {
        let g = sym(3);
        let cs = g.classes().unwrap();
        let got: Vec<(&str, u64)> = cs.iter().map(|c| (c.label.as_str(), c.size)).collect();
        assert_eq!(got, vec![("1a", 1), ("2a", 3), ("3a", 2)]);
        assert_eq!(cs[1].representative.images(), &[0, 2, 1]);
        assert!(g.is_centerless().unwrap());
    }

    #[test]
    fn a5_class_sizes() {
        let g = PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        let sizes: Vec<u64> = g.classes().unwrap().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
        let labels: Vec<&str> = g.classes().unwrap().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1a", "2a", "3a", "5a", "5b"]);
    }

    #[test]
    fn small_mode_limit() {
        let g = PermGroup::with_small_limit(5, sym(5).generators().to_vec(), 100).unwrap();
        assert_eq!(g.order(), 120);
        assert!(matches!(g.classes(), Err(PermError::NotSmall { .. })));
        assert!(g.contains(&Perm::from_cycles(5, &[&[1, 3]]).unwrap()));
    }

    #[test]
    fn generation_test() {
        let g = sym(4);
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let c = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let c3 = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert!(g.is_generated_by(&[t.clone(), c.clone()]));
        assert!(!g.is_generated_by(&[t, c3]));
        assert!(!g.is_generated_by(&[c]));
    }

    #[test]
    fn letter_sequence() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "aa");
    }
}
