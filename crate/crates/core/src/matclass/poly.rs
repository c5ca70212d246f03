use std::fmt;

use num_bigint::BigUint;

use super::field::FiniteField;

/// A polynomial over a finite field, coefficients lowest degree first with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: FiniteField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: FiniteField> Poly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field.clone(), field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: F) -> Self {
        Self::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut v = vec![field.zero(); deg];
        v.push(c);
        Self::new(field, v)
    }

    /// x − a.
    pub fn linear(field: F, a: &F::Elem) -> Self {
        let c = vec![field.neg(a), field.one()];
        Self::new(field, c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &o.coeff(i)))
            .collect();
        Self::new(self.field.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Poly {
            field: self.field.clone(),
            coeffs: c,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &F::Elem) -> Self {
        let c = self.coeffs.iter().map(|x| self.field.mul(x, a)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.field.one())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let li = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = f.mul(&r[i], &li);
            if f.is_zero(&t) {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(&r[k], &f.mul(&t, c));
            }
            q[i - dd] = t;
        }
        r.truncate(dd);
        (Self::new(f.clone(), q), Self::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn divides(&self, o: &Self) -> bool {
        o.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (d, s, t) with s·self + t·o = d, d = gcd up to a unit.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        (r0, s0, t0)
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field.clone());
        }
        self.mul(o).divrem(&self.gcd(o)).0.monic()
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field.clone()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_big(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.field.clone()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, a: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    /// Some((α, t)) when self = c·(x − α)^t with t ≥ 1.
    pub fn as_linear_power(&self) -> Option<(F::Elem, usize)> {
        let t = self.degree()?;
        if t == 0 {
            return None;
        }
        let f = &self.field;
        let m = self.monic();
        // With t = p^k·u, p ∤ u: (x − α)^t = (x^{p^k} − α^{p^k})^u, whose
        // x^{p^k(u−1)} coefficient is −u·α^{p^k}.
        let p = f.characteristic() as usize;
        let (mut pk, mut u) = (1usize, t);
        while u % p == 0 {
            pk *= p;
            u /= p;
        }
        let c = m.coeff(pk * (u - 1));
        let mut alpha = f.neg(&f.div(&c, &f.from_i64((u % p) as i64))?);
        // p-th roots: β ↦ β^{q/p}.
        let q_over_p = f.size()? / p as u128;
        let mut r = pk;
        while r > 1 {
            alpha = f.pow(&alpha, q_over_p);
            r /= p;
        }
        (Poly::linear(f.clone(), &alpha).pow(t as u64) == m).then_some((alpha, t))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64((i as u64 % f.characteristic()) as i64)))
            .collect();
        Self::new(f.clone(), c)
    }

    /// Human-readable form, e.g. `x^3 + 2*x + 1`.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let one = f.one();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = if i == 0 {
                f.format(c)
            } else if *c == one {
                mono
            } else {
                format!("{}*{mono}", f.format(c))
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl<F: FiniteField> fmt::Display for Poly<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(&self.to_string_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclass::field::{ExtField, PrimeField};
    use proptest::prelude::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn display_and_division() {
        let f = PrimeField::new(2).unwrap();
        let p = Poly::from_i64(f, &[1, 0, 0, 1]);
        assert_eq!(p.to_string(), "x^3 + 1");
        let (q, r) = p.divrem(&Poly::from_i64(f, &[1, 1]));
        assert_eq!(q.to_string(), "x^2 + x + 1");
        assert!(r.is_zero());
    }

    #[test]
    fn linear_powers() {
        let f = PrimeField::new(2).unwrap();
        let p = Poly::from_i64(f, &[1, 1]).pow(8);
        assert_eq!(p.as_linear_power(), Some((1, 8)));
        let f5 = PrimeField::new(5).unwrap();
        let p = Poly::from_i64(f5, &[-2, 1]).pow(7);
        assert_eq!(p.as_linear_power(), Some((2, 7)));
        let q = Poly::from_i64(f5, &[-2, 1]).mul(&Poly::from_i64(f5, &[-3, 1]));
        assert_eq!(q.as_linear_power(), None);
        let k = ExtField::generate(2, 2).unwrap();
        let a = vec![0, 1];
        let p = Poly::linear(k.clone(), &a).pow(4);
        assert_eq!(p.as_linear_power(), Some((a, 4)));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..3, 0..8)
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(), b in arb_poly()) {
            let a = Poly::from_i64(f3(), &a);
            let b = Poly::from_i64(f3(), &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn bezout(a in arb_poly(), b in arb_poly()) {
            let a = Poly::from_i64(f3(), &a);
            let b = Poly::from_i64(f3(), &b);
            let (d, s, t) = a.ext_gcd(&b);
            prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), d.clone());
            prop_assert_eq!(d.monic(), a.gcd(&b));
        }

        #[test]
        fn pow_mod_matches_naive(a in arb_poly(), m in arb_poly(), e in 0u64..20) {
            let a = Poly::from_i64(f3(), &a);
            let m = Poly::from_i64(f3(), &m);
            prop_assume!(m.degree().unwrap_or(0) > 0);
            let naive = a.pow(e).rem(&m);
            prop_assert_eq!(a.pow_mod(e as u128, &m), naive.clone());
            prop_assert_eq!(a.pow_mod_big(&BigUint::from(e), &m), naive);
        }
    }
}
