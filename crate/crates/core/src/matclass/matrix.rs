use rand::RngCore;

use super::field::FiniteField;
use super::poly::Poly;
use super::MatclassError;

/// A dense matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: FiniteField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: FiniteField> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self, MatclassError> {
        if data.len() != rows * cols {
            return Err(MatclassError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self, MatclassError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatclassError::Shape("rows have different lengths".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Result<Self, MatclassError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn scalar(field: F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        Self::scalar(field, n, &one)
    }

    /// Companion matrix of a monic f of degree d: ones below the diagonal and
    /// −a_0, …, −a_{d−1} down the last column.
    pub fn companion(f: &Poly<F>) -> Result<Self, MatclassError> {
        let field = f.field().clone();
        let d = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => {
                return Err(MatclassError::Shape(format!(
                    "companion matrix needs a monic polynomial of positive degree, got {f}"
                )))
            }
        };
        let mut m = Self::zero(field.clone(), d, d);
        for i in 0..d - 1 {
            m.set(i + 1, i, field.one());
        }
        for j in 0..d {
            m.set(j, d - 1, field.neg(&f.coeff(j)));
        }
        Ok(m)
    }

    pub fn block_diag(field: F, blocks: &[Matrix<F>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zero(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn random(field: F, rows: usize, cols: usize, rng: &mut dyn RngCore) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A uniformly random invertible matrix with its inverse.
    pub fn random_invertible(field: F, n: usize, rng: &mut dyn RngCore) -> (Self, Self) {
        loop {
            let m = Self::random(field.clone(), n, n, rng);
            if let Some(inv) = m.inverse() {
                return (m, inv);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, o.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    /// self − c·I.
    pub fn sub_scalar(&self, c: &F::Elem) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = self.field.sub(m.get(i, i), c);
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// P·self·P⁻¹.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Self {
        p.mul(self).mul(p_inv)
    }

    /// The scalar c when self = c·I.
    pub fn scalar_value(&self) -> Option<F::Elem> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            self.field.one()
        } else {
            self.get(0, 0).clone()
        };
        let zero = self.field.zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &zero };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let t = self.get(i, c).clone();
                if f.is_zero(&t) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&t, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zero(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let piv = aug.echelon();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zero(f.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solves self·x = b; None when inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let mut aug = Self::zero(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let piv = aug.echelon();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn map<G: FiniteField>(&self, to: &G, g: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: to.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(g).collect(),
        }
    }

    /// Characteristic polynomial det(xI − A) by reduction to Hessenberg form.
    pub fn char_poly(&self) -> Poly<F> {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        let f = self.field.clone();
        let mut h = self.clone();
        // Similarity transforms to upper Hessenberg form.
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            h.swap_rows(i, j + 1);
            h.swap_cols(i, j + 1);
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for r in j + 2..n {
                let u = f.mul(h.get(r, j), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), &f.mul(&u, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, j + 1), &f.mul(&u, h.get(rr, r)));
                    h.set(rr, j + 1, v);
                }
            }
        }
        // p_m = (x − h_mm)·p_{m−1} − Σ_{i<m} h_im·(h_{i+1,i}⋯h_{m,m−1})·p_{i−1}
        let mut p: Vec<Poly<F>> = vec![Poly::one(f.clone())];
        for m in 1..=n {
            let mut pm = Poly::linear(f.clone(), h.get(m - 1, m - 1)).mul(&p[m - 1]);
            let mut t = f.one();
            for i in (1..m).rev() {
                t = f.mul(&t, h.get(i, i - 1));
                if f.is_zero(&t) {
                    break;
                }
                let coef = f.mul(h.get(i - 1, m - 1), &t);
                pm = pm.sub(&p[i - 1].scale(&coef));
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }

    /// Minimal polynomial as the lcm of the local minimal polynomials of the
    /// standard basis vectors, skipping vectors already in the span covered.
    pub fn min_poly(&self) -> Poly<F> {
        assert!(self.is_square(), "min_poly needs a square matrix");
        let n = self.rows;
        let f = self.field.clone();
        let mut acc = Poly::one(f.clone());
        // Echelon basis of the A-invariant span built so far.
        let mut span: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        let reduce = |span: &[(usize, Vec<F::Elem>)], v: &mut Vec<F::Elem>| {
            for (pc, b) in span {
                let t = v[*pc].clone();
                if !f.is_zero(&t) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = f.sub(x, &f.mul(&t, y));
                    }
                }
            }
        };
        let insert = |span: &mut Vec<(usize, Vec<F::Elem>)>, mut v: Vec<F::Elem>| {
            reduce(span, &mut v);
            let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
                return;
            };
            let inv = f.inv(&v[pc]).unwrap();
            for x in v.iter_mut() {
                *x = f.mul(x, &inv);
            }
            for (_, b) in span.iter_mut() {
                let t = b[pc].clone();
                if !f.is_zero(&t) {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = f.sub(x, &f.mul(&t, y));
                    }
                }
            }
            span.push((pc, v));
        };
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let mut probe = e.clone();
            reduce(&span, &mut probe);
            if probe.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            // Krylov sequence of e with coordinates tracked against the iterates.
            let mut basis: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
            let mut v = e;
            let local = loop {
                let k = basis.len();
                let mut w = v.clone();
                let mut comb = vec![f.zero(); k + 1];
                comb[k] = f.one();
                for (pc, b, bc) in &basis {
                    let t = w[*pc].clone();
                    if f.is_zero(&t) {
                        continue;
                    }
                    for (x, y) in w.iter_mut().zip(b) {
                        *x = f.sub(x, &f.mul(&t, y));
                    }
                    for (x, y) in comb.iter_mut().zip(bc) {
                        *x = f.sub(x, &f.mul(&t, y));
                    }
                }
                match w.iter().position(|x| !f.is_zero(x)) {
                    None => break Poly::new(f.clone(), comb),
                    Some(pc) => {
                        let inv = f.inv(&w[pc]).unwrap();
                        for x in w.iter_mut() {
                            *x = f.mul(x, &inv);
                        }
                        for x in comb.iter_mut() {
                            *x = f.mul(x, &inv);
                        }
                        insert(&mut span, v.clone());
                        basis.push((pc, w, comb));
                    }
                }
                v = self.mul_vec(&v);
            };
            acc = acc.lcm(&local.monic());
        }
        acc
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| self.field.format(a)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclass::field::{ExtField, PrimeField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// det(xI − A) by expansion along rows with memoised column subsets.
    fn det_oracle<F: FiniteField>(a: &Matrix<F>) -> Poly<F> {
        use std::collections::HashMap;
        let n = a.rows();
        let f = a.field().clone();
        let entry = |i: usize, j: usize| -> Poly<F> {
            let c = Poly::constant(f.clone(), f.neg(a.get(i, j)));
            if i == j {
                c.add(&Poly::x(f.clone()))
            } else {
                c
            }
        };
        fn go<F: FiniteField>(
            row: usize,
            used: u32,
            n: usize,
            entry: &dyn Fn(usize, usize) -> Poly<F>,
            memo: &mut HashMap<u32, Poly<F>>,
            f: &F,
        ) -> Poly<F> {
            if row == n {
                return Poly::one(f.clone());
            }
            if let Some(p) = memo.get(&used) {
                return p.clone();
            }
            let mut acc = Poly::zero(f.clone());
            let mut sign_neg = false;
            for j in 0..n {
                if used & (1 << j) != 0 {
                    continue;
                }
                let term = entry(row, j).mul(&go(row + 1, used | (1 << j), n, entry, memo, f));
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
                sign_neg = !sign_neg;
            }
            memo.insert(used, acc.clone());
            acc
        }
        go(0, 0, n, &entry, &mut HashMap::new(), &f)
    }

    #[test]
    fn identity_char_poly() {
        let f = PrimeField::new(2).unwrap();
        let i3 = Matrix::identity(f, 3);
        assert_eq!(i3.char_poly().to_string(), "x^3 + x^2 + x + 1");
        assert_eq!(i3.min_poly().to_string(), "x + 1");
    }

    #[test]
    fn companion_recovers_polynomial() {
        let f = PrimeField::new(2).unwrap();
        let p = Poly::from_i64(f, &[1, 1, 0, 0, 0, 1]);
        let c = Matrix::companion(&p).unwrap();
        assert_eq!(c.char_poly(), p);
        assert_eq!(c.min_poly(), p);
    }

    #[test]
    fn inverse_and_solve() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (p, pi) = Matrix::random_invertible(f, 6, &mut rng);
        assert_eq!(p.mul(&pi), Matrix::identity(f, 6));
        let b: Vec<u64> = (0..6).map(|i| i % 5).collect();
        let x = p.solve(&b).unwrap();
        assert_eq!(p.mul_vec(&x), b);
        let singular = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn char_poly_matches_cofactor_oracle_over_extension() {
        let k = ExtField::generate(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=6 {
            let a = Matrix::random(k.clone(), n, n, &mut rng);
            assert_eq!(a.char_poly(), det_oracle(&a));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn char_poly_matches_cofactor_oracle(seed in any::<u64>(), n in 1usize..=8, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let f = PrimeField::new(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Matrix::random(f, n, n, &mut rng);
            prop_assert_eq!(a.char_poly(), det_oracle(&a));
        }

        #[test]
        fn min_poly_annihilates_and_divides(seed in any::<u64>(), n in 1usize..=7) {
            let f = PrimeField::new(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Sparse-ish matrices give nontrivial minimal polynomials more often.
            let mut a = Matrix::random(f, n, n, &mut rng);
            for i in 0..n {
                for j in 0..n {
                    if !(i * 7 + j * 3 + seed as usize).is_multiple_of(3) {
                        a.set(i, j, 0);
                    }
                }
            }
            let m = a.min_poly();
            let cp = a.char_poly();
            prop_assert!(m.is_monic());
            prop_assert!(m.divides(&cp));
            // m(A) = 0, evaluated by Horner.
            let mut acc = Matrix::zero(f, n, n);
            for c in m.coeffs().iter().rev() {
                acc = acc.mul(&a).add(&Matrix::scalar(f, n, c));
            }
            prop_assert_eq!(acc, Matrix::zero(f, n, n));
            // No proper divisor m/(irreducible factor) annihilates: checked through degree
            // minimality against the Krylov dimension bound.
            prop_assert!(m.degree().unwrap() <= n);
        }
    }
}
