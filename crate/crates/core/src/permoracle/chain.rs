use super::perm::Perm;

/// Stabilizer chain on the base 0, 1, …, n − 1, built by Schreier–Sims.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
struct Level {
    gens: Vec<Perm>,
    /// trans[x] maps the base point of this level to x.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl StabChain {
    pub(crate) fn new(n: usize, gens: &[Perm]) -> Self {
        let levels = (0..n)
            .map(|b| {
                let mut trans = vec![None; n];
                trans[b] = Some(Perm::identity(n));
                Level {
                    gens: Vec::new(),
                    trans,
                    orbit: vec![b],
                }
            })
            .collect();
        let mut c = StabChain { levels };
        for g in gens {
            if !c.contains_from(0, g.clone()) {
                c.add(0, g.clone());
            }
        }
        c
    }

    fn add(&mut self, i: usize, g: Perm) {
        self.levels[i].gens.push(g.clone());
        let orbit = self.levels[i].orbit.clone();
        for x in orbit {
            let t = self.levels[i].trans[x].clone().unwrap();
            self.update(i, t.mul(&g));
        }
    }

    fn update(&mut self, i: usize, g: Perm) {
        let x = g.at(i);
        match &self.levels[i].trans[x] {
            Some(t) => {
                let h = g.mul(&t.inv());
                if !self.contains_from(i + 1, h.clone()) {
                    self.add(i + 1, h);
                }
            }
            None => {
                self.levels[i].trans[x] = Some(g.clone());
                self.levels[i].orbit.push(x);
                let gens = self.levels[i].gens.clone();
                for s in gens {
                    self.update(i, g.mul(&s));
                }
            }
        }
    }

    fn contains_from(&self, from: usize, mut g: Perm) -> bool {
        for i in from..self.levels.len() {
            let x = g.at(i);
            match &self.levels[i].trans[x] {
                Some(t) => g = g.mul(&t.inv()),
                None => return false,
            }
        }
        true
    }

    pub(crate) fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.levels.len() && self.contains_from(0, g.clone())
    }

    /// Group order, or None on u64 overflow.
    pub(crate) fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    /// Uniform random element: a product of random transversal elements, deepest level first.
    pub(crate) fn random(&self, rng: &mut impl rand::Rng) -> Perm {
        let n = self.levels.len();
        let mut g = Perm::identity(n);
        for l in self.levels.iter().rev() {
            let x = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.trans[x].as_ref().unwrap());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn orders_of_small_groups() {
        let s5 = [
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
        ];
        assert_eq!(StabChain::new(5, &s5).order(), Some(120));
        let a5 = [
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
        ];
        let c = StabChain::new(5, &a5);
        assert_eq!(c.order(), Some(60));
        assert!(!c.contains(&s5[1]));
        assert!(c.contains(&a5[0].mul(&a5[1])));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert!(c.contains(&c.random(&mut rng)));
        }
        assert_eq!(StabChain::new(6, &[]).order(), Some(1));
    }
}
