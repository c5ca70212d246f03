use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::group::PermGroup;
use super::perm::Perm;
use super::PermError;

/// Default cap on enumerated candidate tuples.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

fn check_tuple(g: &PermGroup, classes: &[usize]) -> Result<(), PermError> {
    if classes.len() < 3 {
        return Err(PermError::TupleLength(classes.len()));
    }
    let n = g.classes()?.len();
    if let Some(&c) = classes.iter().find(|&&c| c >= n) {
        return Err(PermError::UnknownClass(format!("#{c}")));
    }
    Ok(())
}

/// Enumerates g_1, …, g_{k−2} from their classes, solves for g_{k−1} and calls
/// `visit` on each tuple whose last element lands in C_{k−1}. Returns the sum
/// of the visit results.
fn enumerate<V>(g: &PermGroup, classes: &[usize], target: &Perm, budget: u64, visit: V) -> Result<u64, PermError>
where
    V: Fn(&[Perm]) -> u64 + Sync,
{
    check_tuple(g, classes)?;
    let k = classes.len();
    let free = &classes[..k - 2];
    let last = classes[k - 2];
    let needed = free.iter().try_fold(1u128, |acc, &c| {
        g.class_members(c).map(|m| acc * m.len() as u128)
    })?;
    if needed > budget as u128 {
        return Err(PermError::BudgetExceeded { needed, budget });
    }
    let elements = g.elements()?;
    let first = g.class_members(free[0])?;
    let total = first
        .par_iter()
        .map(|&i| -> Result<u64, PermError> {
            let mut tuple = vec![elements[i as usize].clone()];
            rec(g, elements, &free[1..], last, target, &mut tuple, &elements[i as usize], &visit)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn rec<V>(
    g: &PermGroup,
    elements: &[Perm],
    rest: &[usize],
    last: usize,
    target: &Perm,
    tuple: &mut Vec<Perm>,
    prefix: &Perm,
    visit: &V,
) -> Result<u64, PermError>
where
    V: Fn(&[Perm]) -> u64,
{
    match rest.split_first() {
        None => {
            let need = prefix.inv().mul(target);
            let i = g.element_index(&need)?.expect("products stay in the group");
            if g.class_of_index(i)? != last {
                return Ok(0);
            }
            tuple.push(need);
            let v = visit(tuple);
            tuple.pop();
            Ok(v)
        }
        Some((&c, more)) => {
            let mut sum = 0;
            for &i in g.class_members(c)? {
                let e = &elements[i as usize];
                tuple.push(e.clone());
                sum += rec(g, elements, more, last, target, tuple, &prefix.mul(e), visit)?;
                tuple.pop();
            }
            Ok(sum)
        }
    }
}

/// Δ by enumeration, with g_k the class representative of the last class.
pub fn delta_brute(g: &PermGroup, classes: &[usize], budget: u64) -> Result<u64, PermError> {
    check_tuple(g, classes)?;
    let target = g.classes()?[*classes.last().unwrap()].representative.clone();
    enumerate(g, classes, &target, budget, |_| 1)
}

/// Δ by enumeration for an explicit g_k, which must lie in the last class.
pub fn delta_brute_at(g: &PermGroup, classes: &[usize], target: &Perm, budget: u64) -> Result<u64, PermError> {
    check_tuple(g, classes)?;
    if g.class_of(target)? != *classes.last().unwrap() {
        return Err(PermError::UnknownClass(format!("{target} is not in the target class")));
    }
    enumerate(g, classes, target, budget, |_| 1)
}

/// Δ*: tuples counted by Δ that also generate the group.
pub fn delta_star_brute(g: &PermGroup, classes: &[usize], budget: u64) -> Result<u64, PermError> {
    check_tuple(g, classes)?;
    let target = g.classes()?[*classes.last().unwrap()].representative.clone();
    enumerate(g, classes, &target, budget, |t| u64::from(g.is_generated_by(t)))
}

/// Σ_H by enumeration inside H: for each H-class fusing into the last G-class,
/// the tuples of H-elements from the given G-classes multiplying to its representative.
pub fn sigma_brute(g: &PermGroup, h: &PermGroup, classes: &[usize], budget: u64) -> Result<u64, PermError> {
    check_tuple(g, classes)?;
    let k = classes.len();
    // H-classes grouped by the G-class they fuse into.
    let hc = h.classes()?;
    let fusion: Vec<usize> = hc
        .iter()
        .map(|c| g.class_of(&c.representative))
        .collect::<Result<_, _>>()?;
    let pools: Vec<Vec<u32>> = classes[..k - 1]
        .iter()
        .map(|&c| {
            let mut v = Vec::new();
            for (j, &f) in fusion.iter().enumerate() {
                if f == c {
                    v.extend_from_slice(h.class_members(j)?);
                }
            }
            Ok(v)
        })
        .collect::<Result<_, PermError>>()?;
    let needed = pools[..k - 2].iter().map(|p| p.len() as u128).product::<u128>();
    if needed > budget as u128 {
        return Err(PermError::BudgetExceeded { needed, budget });
    }
    let last_pool: HashSet<u32> = pools[k - 2].iter().copied().collect();
    let elements = h.elements()?;
    let mut total = 0;
    for (j, &f) in fusion.iter().enumerate() {
        if f != classes[k - 1] {
            continue;
        }
        let target = &hc[j].representative;
        let mut idx = vec![0usize; k - 2];
        if pools[..k - 2].iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let mut prod = Perm::identity(h.degree());
            for (p, &i) in pools.iter().zip(&idx) {
                prod = prod.mul(&elements[p[i] as usize]);
            }
            let need = prod.inv().mul(target);
            if let Some(e) = h.element_index(&need)? {
                if last_pool.contains(&e) {
                    total += 1;
                }
            }
            let mut pos = 0;
            loop {
                if pos == k - 2 {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < pools[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k - 2 {
                break;
            }
        }
    }
    Ok(total)
}

/// Number of distinct conjugates of H (as sets) that contain x.
pub fn h_brute(g: &PermGroup, h_gens: &[Perm], x: &Perm) -> Result<u64, PermError> {
    let h = g.subgroup(h_gens.to_vec())?;
    if !g.contains(x) {
        return Err(PermError::NotSubgroup(format!("{x} is not in the group")));
    }
    let hel = h.elements()?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut count = 0;
    for c in g.elements()? {
        let mut set: Vec<u32> = hel
            .iter()
            .map(|e| Ok(g.element_index(&e.conj(c))?.expect("conjugate lies in G")))
            .collect::<Result<_, PermError>>()?;
        set.sort_unstable();
        if seen.contains(&set) {
            continue;
        }
        let xi = g.element_index(x)?.expect("checked membership");
        if set.binary_search(&xi).is_ok() {
            count += 1;
        }
        seen.insert(set);
    }
    Ok(count)
}

/// Draws random tuples g_1, …, g_{k−2} from their classes, solves for g_{k−1},
/// and returns the first tuple that lands in C_{k−1} and generates the group.
pub fn find_generating_tuple(
    g: &PermGroup,
    classes: &[usize],
    tries: u64,
    seed: u64,
) -> Result<Option<Vec<Perm>>, PermError> {
    check_tuple(g, classes)?;
    let k = classes.len();
    let target = g.classes()?[classes[k - 1]].representative.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut tuple = Vec::with_capacity(k - 1);
        let mut prod = Perm::identity(g.degree());
        for &c in &classes[..k - 2] {
            let e = g.random_in_class(c, &mut rng)?;
            prod = prod.mul(&e);
            tuple.push(e);
        }
        let need = prod.inv().mul(&target);
        if g.class_of(&need)? != classes[k - 2] {
            continue;
        }
        tuple.push(need);
        if g.is_generated_by(&tuple) {
            return Ok(Some(tuple));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::new(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s3_counts() {
        let g = s3();
        assert_eq!(delta_brute(&g, &[1, 1, 2], DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(delta_star_brute(&g, &[1, 1, 2], DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(delta_brute(&g, &[0, 2, 2], DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(delta_star_brute(&g, &[0, 2, 2], DEFAULT_BUDGET).unwrap(), 0);
        assert!(matches!(
            delta_brute(&g, &[1, 1, 1, 2], 2),
            Err(PermError::BudgetExceeded { needed: 9, budget: 2 })
        ));
        assert!(matches!(delta_brute(&g, &[1, 2], 10), Err(PermError::TupleLength(2))));
    }

    #[test]
    fn h_in_s4() {
        let g = s4();
        let s3 = vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
        ];
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(h_brute(&g, &s3, &t).unwrap(), 2);
        assert_eq!(h_brute(&g, &s3, &Perm::identity(4)).unwrap(), 4);
        let four = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(h_brute(&g, &s3, &four).unwrap(), 0);
        assert!(h_brute(&g, &[Perm::identity(5)], &t).is_err());
    }

    #[test]
    fn sigma_inside_point_stabilizer() {
        let g = s4();
        let h = g
            .subgroup(vec![
                Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
            ])
            .unwrap();
        let t = g.class_by_label("2b").unwrap();
        let c3 = g.class_by_label("3a").unwrap();
        // Inside S3: 3 ordered pairs of transpositions multiply to a fixed 3-cycle.
        assert_eq!(sigma_brute(&g, &h, &[t, t, c3], DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn sampling_finds_witness() {
        let g = s4();
        let t = g.class_by_label("2b").unwrap();
        let c4 = g.class_by_label("4a").unwrap();
        let c3 = g.class_by_label("3a").unwrap();
        let w = find_generating_tuple(&g, &[t, c3, c4], 200, 1).unwrap().unwrap();
        assert!(g.is_generated_by(&w));
        assert_eq!(find_generating_tuple(&g, &[t, t, c3], 200, 1).unwrap(), None);
    }
}
