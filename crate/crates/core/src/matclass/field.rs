use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde_json::{json, Value};

use super::poly::Poly;
use super::MatclassError;

/// A finite field F_{p^e} with elements of type `Elem`.
pub trait FiniteField: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Coordinates over F_p in the power basis of the defining polynomial.
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coords(&self, c: &[u64]) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn descriptor(&self) -> Value;
    /// Monic defining polynomial over F_p, lowest degree first.
    fn defining_poly(&self) -> Vec<u64>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// p^e, when it fits.
    fn size(&self) -> Option<u128> {
        (self.characteristic() as u128).checked_pow(self.degree())
    }

    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// F_p, elements stored as residues in 0..p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, MatclassError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(MatclassError::Field(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, (self.p - 2) as u128))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn from_coords(&self, c: &[u64]) -> u64 {
        c.first().copied().unwrap_or(0) % self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> Value {
        json!({ "p": self.p, "e": 1 })
    }
    fn defining_poly(&self) -> Vec<u64> {
        vec![0, 1]
    }
}

/// F_{p^e} as F_p[y]/(f), f monic irreducible of degree e. Elements are
/// coefficient vectors of length e, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeField,
    /// Monic defining polynomial, e + 1 coefficients, lowest degree first.
    modulus: Arc<[u64]>,
}

impl ExtField {
    /// Uses the given monic polynomial; irreducibility is checked.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, MatclassError> {
        let base = PrimeField::new(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(MatclassError::Field(
                "defining polynomial must be monic of degree at least 1".into(),
            ));
        }
        let f = Poly::new(base, modulus.clone());
        if !is_irreducible(&f) {
            return Err(MatclassError::Field(format!("{f} is not irreducible over F_{p}")));
        }
        Ok(ExtField {
            base,
            modulus: modulus.into(),
        })
    }

    /// Deterministic choice: the first monic irreducible of degree e when the
    /// lower coefficients are read as base-p digits of 0, 1, 2, ….
    pub fn generate(p: u64, e: u32) -> Result<Self, MatclassError> {
        let base = PrimeField::new(p)?;
        if e == 0 {
            return Err(MatclassError::Field("extension degree must be positive".into()));
        }
        let e = e as usize;
        let mut digits = vec![0u64; e];
        loop {
            let mut c = digits.clone();
            c.push(1);
            let f = Poly::new(base, c.clone());
            if (e == 1 || digits[0] != 0) && is_irreducible(&f) {
                return Ok(ExtField {
                    base,
                    modulus: c.into(),
                });
            }
            let mut i = 0;
            loop {
                if i == e {
                    unreachable!("irreducible polynomials exist in every degree");
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn e(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces a product of length ≤ 2e − 1 modulo the defining polynomial.
    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let e = self.e();
        let p = self.base.p;
        for i in (e..c.len()).rev() {
            let t = c[i];
            if t == 0 {
                continue;
            }
            c[i] = 0;
            for j in 0..e {
                let m = self.modulus[j];
                if m != 0 {
                    let k = i - e + j;
                    c[k] = (c[k] + (p - t) * m) % p;
                }
            }
        }
        c.truncate(e);
        c.resize(e, 0);
        c
    }
}

/// Rabin's test over a prime field.
pub fn is_irreducible(f: &Poly<PrimeField>) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = *f.field();
    let p = field.p;
    let x = Poly::x(field);
    let frob = |g: &Poly<PrimeField>, times: usize| -> Poly<PrimeField> {
        let mut h = g.clone();
        for _ in 0..times {
            h = h.pow_mod(p as u128, f);
        }
        h
    };
    if frob(&x, n) != x.rem(f) {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes.into_iter().all(|r| {
        let h = frob(&x, n / r).sub(&x);
        f.gcd(&h).degree() == Some(0)
    })
}

impl FiniteField for ExtField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn degree(&self) -> u32 {
        self.e() as u32
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.e()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        let mut out = self.zero();
        out[0] = self.base.from_i64(v);
        out
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.base.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let e = self.e();
        let p = self.base.p;
        let mut c = vec![0u64; 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        self.reduce(c)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        // Extended Euclid in F_p[y] against the modulus.
        let f = Poly::new(self.base, self.modulus.to_vec());
        let g = Poly::new(self.base, a.clone());
        let (d, s, _) = g.ext_gcd(&f);
        debug_assert_eq!(d.degree(), Some(0));
        let s = s.scale(&self.base.inv(&d.coeffs()[0])?);
        let mut c = s.coeffs().to_vec();
        c.resize(self.e(), 0);
        Some(c)
    }
    fn random(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.e()).map(|_| rng.gen_range(0..self.base.p)).collect()
    }
    fn coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_coords(&self, c: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = c.iter().map(|x| x % self.base.p).collect();
        v.resize(self.e(), 0);
        v
    }
    fn format(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
    fn descriptor(&self) -> Value {
        json!({ "p": self.base.p, "e": self.e(), "modulus": self.modulus.to_vec() })
    }
    fn defining_poly(&self) -> Vec<u64> {
        self.modulus.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn generated_extensions_are_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, e) in [(2, 1), (2, 4), (3, 3), (5, 2), (2, 8)] {
            let k = ExtField::generate(p, e).unwrap();
            for _ in 0..50 {
                let a = k.random_nonzero(&mut rng);
                let b = k.inv(&a).unwrap();
                assert_eq!(k.mul(&a, &b), k.one());
                // a^(q-1) = 1
                let q = (p as u128).pow(e);
                assert_eq!(k.pow(&a, q - 1), k.one());
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(ExtField::generate(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(ExtField::generate(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(ExtField::with_modulus(2, vec![1, 0, 1]).is_err());
    }
}
