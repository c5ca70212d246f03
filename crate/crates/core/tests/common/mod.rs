#![allow(dead_code)]

use genconj::chartab::CharacterTable;
use genconj::corpus::Corpus;
use genconj::permoracle::{parse_fixture, Fixture};

pub const SMALL: [&str; 6] = ["S3", "S4", "A4", "A5", "S5", "L2(7)"];

/// Table, fixture, and the oracle class index of each table class.
pub struct Loaded {
    pub table: CharacterTable,
    pub fixture: Fixture,
    pub to_oracle: Vec<usize>,
}

pub fn load(name: &str) -> Loaded {
    let corpus = Corpus::embedded();
    let table = corpus.table(name).unwrap();
    let fixture = parse_fixture(&corpus.perm_fixture(name).unwrap()).unwrap();
    fixture.check_labels().unwrap();
    let to_oracle = table
        .classes()
        .iter()
        .map(|c| fixture.class_index(&c.name).unwrap())
        .collect();
    Loaded {
        table,
        fixture,
        to_oracle,
    }
}

impl Loaded {
    pub fn oracle(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&i| self.to_oracle[i]).collect()
    }

    pub fn triples(&self) -> Vec<[usize; 3]> {
        let n = self.table.num_classes();
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}
