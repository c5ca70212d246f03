use genconj::chartab::CharacterTable;
use genconj::corpus::Corpus;
use genconj::structgen::{delta, ClassTuple};
use num_bigint::BigUint;
use proptest::prelude::*;

fn tables() -> Vec<CharacterTable> {
    let c = Corpus::embedded();
    c.group_names().iter().map(|n| c.table(n).unwrap()).collect()
}

fn d(t: &CharacterTable, idx: &[usize]) -> BigUint {
    delta(&ClassTuple::new(t, idx.to_vec()).unwrap()).unwrap()
}

#[test]
fn integrality_and_mass_balance_at_k3() {
    for t in tables() {
        let n = t.num_classes();
        for a in 0..n {
            for b in 0..n {
                let mut mass = BigUint::from(0u32);
                for c in 0..n {
                    mass += d(&t, &[a, b, c]) * t.class(c).size;
                }
                assert_eq!(mass, BigUint::from(t.class(a).size) * t.class(b).size, "{} {a} {b}", t.name());
            }
        }
    }
}

#[test]
fn identity_target_counts_the_class() {
    for t in tables() {
        for c in 0..t.num_classes() {
            let inv = t.inverse_class(c).unwrap();
            assert_eq!(d(&t, &[c, inv, 0]), BigUint::from(t.class(c).size), "{} {c}", t.name());
        }
    }
}

fn table_and_tuple(k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, Vec<usize>)> {
    let sizes: Vec<usize> = tables().iter().map(CharacterTable::num_classes).collect();
    (0..sizes.len(), k).prop_flat_map(move |(ti, k)| {
        (Just(ti), proptest::collection::vec(0..sizes[ti], k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integral_at_k4_and_k5((ti, idx) in table_and_tuple(4..=5)) {
        let t = &tables()[ti];
        prop_assert!(delta(&ClassTuple::new(t, idx).unwrap()).is_ok());
    }

    #[test]
    fn symmetric_in_the_free_classes((ti, idx) in table_and_tuple(3..=5), seed in any::<u64>()) {
        let t = &tables()[ti];
        let k = idx.len();
        let mut perm = idx[..k - 1].to_vec();
        // Deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        perm.push(idx[k - 1]);
        prop_assert_eq!(d(t, &idx), d(t, &perm));
    }
}
