use super::field::FiniteField;
use super::matrix::Matrix;
use super::poly::Poly;
use super::MatclassError;

/// Monic invariant factors f_1 | f_2 | … | f_s of a matrix, units dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactorList<F: FiniteField> {
    factors: Vec<Poly<F>>,
}

impl<F: FiniteField> InvariantFactorList<F> {
    /// Checks that every factor is monic of positive degree and the chain divides.
    pub fn from_factors(factors: Vec<Poly<F>>) -> Result<Self, MatclassError> {
        for (i, f) in factors.iter().enumerate() {
            if !f.is_monic() || f.degree() == Some(0) {
                return Err(MatclassError::Factors(format!(
                    "factor {} ({f}) must be monic of positive degree",
                    i + 1
                )));
            }
        }
        for w in factors.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(MatclassError::Factors(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(InvariantFactorList { factors })
    }

    pub fn factors(&self) -> &[Poly<F>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Σ deg f_i.
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.degree().unwrap()).sum()
    }

    pub fn min_poly(&self) -> Option<&Poly<F>> {
        self.factors.last()
    }

    pub fn char_poly(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::one(field.clone()), |acc, f| acc.mul(f))
    }

    /// The rational canonical form: companion blocks of f_1, …, f_s.
    pub fn block_companion(&self, field: &F) -> Matrix<F> {
        let blocks: Vec<Matrix<F>> = self
            .factors
            .iter()
            .map(|f| Matrix::companion(f).expect("factors are monic of positive degree"))
            .collect();
        Matrix::block_diag(field.clone(), &blocks)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.factors.iter().map(ToString::to_string).collect()
    }
}

/// Invariant factors from the Smith normal form of xI − A over F[x].
///
/// Pivots are chosen of minimal degree, ties going to the lowest row and then
/// the lowest column, so the reduction is deterministic.
pub fn invariant_factors<F: FiniteField>(a: &Matrix<F>) -> InvariantFactorList<F> {
    assert!(a.is_square(), "invariant factors need a square matrix");
    let n = a.rows();
    let f = a.field().clone();
    let mut m: Vec<Vec<Poly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f.clone(), f.neg(a.get(i, j)));
                    if i == j {
                        c.add(&Poly::x(f.clone()))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();

    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                // The remaining block is zero; xI − A is nonsingular so this
                // only happens for an empty block.
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let piv = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].divrem(&piv).0;
                for j in t..n {
                    let v = m[i][j].sub(&q.mul(&m[t][j]));
                    m[i][j] = v;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].divrem(&piv).0;
                for row in m.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !piv.divides(&m[i][j])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = m[t][j].add(&m[i][j]);
                        m[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].monic());
    }
    let factors = diag.into_iter().filter(|d| d.degree() != Some(0)).collect();
    InvariantFactorList::from_factors(factors).expect("Smith form yields a divisibility chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclass::field::PrimeField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jordan(f: PrimeField, alpha: u64, k: usize) -> Matrix<PrimeField> {
        let mut m = Matrix::scalar(f, k, &alpha);
        for i in 0..k.saturating_sub(1) {
            m.set(i, i + 1, 1);
        }
        m
    }

    #[test]
    fn distinct_eigenvalues_give_one_factor() {
        let f = PrimeField::new(5).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 0], &[0, 2]]).unwrap();
        assert_eq!(invariant_factors(&a).to_strings(), vec!["x^2 + 2*x + 2"]);
    }

    #[test]
    fn two_unipotent_jordan_blocks() {
        let f = PrimeField::new(2).unwrap();
        let a = Matrix::block_diag(f, &[jordan(f, 1, 2), jordan(f, 1, 8)]);
        let x1 = Poly::from_i64(f, &[1, 1]);
        let inv = invariant_factors(&a);
        assert_eq!(inv.factors(), &[x1.pow(2), x1.pow(8)]);
        assert_eq!(a.min_poly(), x1.pow(8));
    }

    #[test]
    fn order_23_block_sum() {
        let f = PrimeField::new(2).unwrap();
        let x1 = Poly::from_i64(f, &[1, 1]);
        let mut c = vec![0i64; 24];
        c[0] = 1;
        c[23] = 1;
        let x23 = Poly::from_i64(f, &c);
        let a = Matrix::block_diag(f, &[Matrix::companion(&x1).unwrap(), Matrix::companion(&x23).unwrap()]);
        let inv = invariant_factors(&a);
        assert_eq!(inv.factors(), &[x1, x23]);
    }

    #[test]
    fn rejects_broken_chains() {
        let f = PrimeField::new(3).unwrap();
        let a = Poly::from_i64(f, &[1, 1]);
        let b = Poly::from_i64(f, &[2, 1]);
        assert!(InvariantFactorList::from_factors(vec![a, b]).is_err());
    }

    /// Invariant factors of A ⊕ B from those of A and B: pool the prime-power
    /// parts (the elementary divisors) and rebuild the chain.
    fn merge(fs: &[Poly<PrimeField>], gs: &[Poly<PrimeField>], n: usize) -> Vec<Poly<PrimeField>> {
        // Layered gcd/lcm: pad both chains with ones to length n, then repeatedly
        // replace pairs (a, b) by (gcd, lcm) until the pooled list is a chain.
        let f = PrimeField::new(fs.iter().chain(gs).next().map_or(2, |p| p.field().p())).unwrap();
        let mut pool: Vec<Poly<PrimeField>> = fs.iter().chain(gs).cloned().collect();
        pool.resize(n.max(pool.len()), Poly::one(f));
        let k = pool.len();
        for i in 0..k {
            for j in i + 1..k {
                let g = pool[i].gcd(&pool[j]);
                let l = pool[i].lcm(&pool[j]);
                pool[i] = g;
                pool[j] = l;
            }
        }
        pool.into_iter().filter(|p| p.degree() != Some(0)).collect()
    }

    fn structured(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
        use rand::Rng;
        // Block sums of small Jordan blocks with repeated eigenvalues, conjugated.
        let mut blocks = Vec::new();
        let mut left = n;
        while left > 0 {
            let k = rng.gen_range(1..=left.min(3));
            blocks.push(jordan(f, rng.gen_range(0..2), k));
            left -= k;
        }
        let a = Matrix::block_diag(f, &blocks);
        let (p, pi) = Matrix::random_invertible(f, n, rng);
        a.conjugate(&p, &pi)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn chain_invariants(seed in any::<u64>(), n in 1usize..=8, p in prop::sample::select(vec![2u64, 3, 5])) {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = if seed % 2 == 0 { Matrix::random(f, n, n, &mut rng) } else { structured(f, n, &mut rng) };
            let inv = invariant_factors(&a);
            prop_assert_eq!(inv.dimension(), n);
            prop_assert_eq!(inv.char_poly(&f), a.char_poly());
            prop_assert_eq!(inv.min_poly().unwrap(), &a.min_poly());
        }

        #[test]
        fn direct_sum_law(seed in any::<u64>(), n1 in 1usize..=5, n2 in 1usize..=5, p in prop::sample::select(vec![2u64, 3])) {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = structured(f, n1, &mut rng);
            let b = structured(f, n2, &mut rng);
            let ia = invariant_factors(&a);
            let ib = invariant_factors(&b);
            let sum = invariant_factors(&Matrix::block_diag(f, &[a, b]));
            prop_assert_eq!(sum.factors().to_vec(), merge(ia.factors(), ib.factors(), n1 + n2));
        }
    }
}
