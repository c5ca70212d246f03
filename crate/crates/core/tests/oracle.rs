mod common;

use common::{load, SMALL};
use genconj::corpus::Corpus;
use genconj::permoracle::{
    delta_brute, delta_brute_at, delta_star_brute, h_brute, sigma_brute, DEFAULT_BUDGET,
};
use genconj::structgen::{delta, h_count, sigma_h, theta, ClassTuple, StructgenError, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn oracle_classes_match_tables() {
    for name in SMALL.iter().chain(&["M11", "M12"]) {
        let l = load(name);
        let oc = l.fixture.group.classes().unwrap();
        assert_eq!(oc.len(), l.table.num_classes(), "{name}");
        assert_eq!(l.fixture.group.order(), l.table.order(), "{name}");
        for (i, c) in l.table.classes().iter().enumerate() {
            let o = &oc[l.to_oracle[i]];
            assert_eq!((o.element_order, o.size), (c.element_order, c.size), "{name} {}", c.name);
        }
    }
}

#[test]
fn delta_matches_enumeration_on_small_groups() {
    for name in SMALL {
        let l = load(name);
        for t in l.triples() {
            let d = delta(&ClassTuple::new(&l.table, t.to_vec()).unwrap()).unwrap();
            let b = delta_brute(&l.fixture.group, &l.oracle(&t), DEFAULT_BUDGET).unwrap();
            assert_eq!(d, b.into(), "{name} {t:?}");
        }
    }
}

#[test]
fn delta_at_k4_matches_enumeration() {
    let l = load("A5");
    let n = l.table.num_classes();
    for a in 1..n {
        for b in 1..n {
            for c in 0..n {
                let t = [a, b, a, c];
                let d = delta(&ClassTuple::new(&l.table, t.to_vec()).unwrap()).unwrap();
                let e = delta_brute(&l.fixture.group, &l.oracle(&t), DEFAULT_BUDGET).unwrap();
                assert_eq!(d, e.into(), "{t:?}");
            }
        }
    }
}

#[test]
fn delta_does_not_depend_on_the_target_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["S4", "A5", "L2(7)"] {
        let l = load(name);
        let g = &l.fixture.group;
        for t in l.triples().into_iter().step_by(3) {
            let o = l.oracle(&t);
            let other = g.random_in_class(o[2], &mut rng).unwrap();
            assert_eq!(
                delta_brute(g, &o, DEFAULT_BUDGET).unwrap(),
                delta_brute_at(g, &o, &other, DEFAULT_BUDGET).unwrap(),
                "{name} {t:?}"
            );
        }
    }
}

#[test]
fn sigma_matches_enumeration_inside_subgroups() {
    let corpus = Corpus::embedded();
    for name in SMALL {
        let l = load(name);
        for rec in corpus.subgroups(name).unwrap() {
            let fs = l.fixture.subgroup(&rec.name).unwrap();
            let h = l.fixture.group.subgroup(fs.generators.clone()).unwrap();
            assert_eq!(h.order(), rec.order(), "{name} {}", rec.name);
            for t in l.triples() {
                let tuple = ClassTuple::new(&l.table, t.to_vec()).unwrap();
                let s = sigma_h(&rec, &tuple).unwrap();
                let b = sigma_brute(&l.fixture.group, &h, &l.oracle(&t), DEFAULT_BUDGET).unwrap();
                assert_eq!(s, b.into(), "{name} {} {t:?}", rec.name);
            }
        }
    }
}

#[test]
fn h_count_matches_conjugate_enumeration() {
    let corpus = Corpus::embedded();
    for (name, subs) in [("S4", &["S3", "A4", "D8"][..]), ("A5", &["A4", "D10", "S3"][..])] {
        let l = load(name);
        let recs = corpus.subgroups(name).unwrap();
        for sub in subs {
            let rec = recs.iter().find(|r| r.name == *sub).unwrap();
            let fs = l.fixture.subgroup(sub).unwrap();
            for (i, c) in l.table.classes().iter().enumerate() {
                let x = &l.fixture.group.classes().unwrap()[l.to_oracle[i]].representative;
                let brute = h_brute(&l.fixture.group, &fs.generators, x).unwrap();
                match h_count(rec, &l.table, i) {
                    Ok(h) => assert_eq!(h, brute, "{name} ⊃ {sub}, {}", c.name),
                    Err(StructgenError::GcdPrecondition { .. }) => {}
                    Err(e) => panic!("{name} ⊃ {sub}, {}: {e}", c.name),
                }
            }
        }
    }
}

#[test]
fn verdicts_agree_with_generation_counts() {
    let corpus = Corpus::embedded();
    for name in SMALL {
        let l = load(name);
        let subs = corpus.maximal_subgroups(name).unwrap();
        for t in l.triples() {
            let tuple = ClassTuple::new(&l.table, t.to_vec()).unwrap();
            let v = theta(&tuple, &subs).unwrap();
            let o = l.oracle(&t);
            let d = delta_brute(&l.fixture.group, &o, DEFAULT_BUDGET).unwrap();
            let ds = delta_star_brute(&l.fixture.group, &o, DEFAULT_BUDGET).unwrap();
            assert!(ds <= d);
            assert!(v.theta <= num_bigint::BigInt::from(ds), "{name} {t:?}: theta exceeds delta*");
            match v.verdict {
                Verdict::Generated => assert!(ds > 0, "{name} {t:?}"),
                Verdict::NotGenerated => assert_eq!(ds, 0, "{name} {t:?}"),
                Verdict::Undecided => {}
            }
        }
    }
}
