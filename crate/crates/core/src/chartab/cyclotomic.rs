//! Exact arithmetic in cyclotomic fields.
//!
//! A value lives in Q(ζ_n) for some conductor `n` and is stored as its
//! coordinates on the power basis 1, ζ, …, ζ^(φ(n)-1), i.e. reduced modulo the
//! n-th cyclotomic polynomial. Values of different conductors are lifted to the
//! lcm before combining. Rational values always carry conductor 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

/// Integer coefficients of Φ_n, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n >= 1, "conductor must be positive");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let phi: Vec<i64> = num
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let phi = Arc::new(phi);
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, phi.clone());
    phi
}

fn divide_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduces a dense polynomial in ζ_n (any length) modulo Φ_n.
fn reduce(n: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    // x^n = 1 first, so the Φ_n division below stays short.
    if v.len() > n as usize {
        let mut folded = vec![BigRational::zero(); n as usize];
        for (i, c) in v.into_iter().enumerate() {
            folded[i % n as usize] += c;
        }
        v = folded;
    }
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (j, &p) in phi.iter().enumerate().take(deg) {
            if p != 0 {
                v[i - deg + j] -= &c * BigInt::from(p);
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl Cyclotomic {
    fn from_reduced(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        if conductor > 1 && coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![c0],
            };
        }
        Cyclotomic { conductor, coeffs }
    }

    /// Builds Σ c_k ζ_n^k from a dense vector indexed by exponent.
    pub fn from_dense(n: u32, dense: Vec<BigRational>) -> Self {
        Self::from_reduced(n, reduce(n, dense))
    }

    pub fn from_exponents<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            dense[(k % n as u64) as usize] += c;
        }
        Self::from_dense(n, dense)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_n^k.
    pub fn zeta(n: u32, k: u64) -> Self {
        Self::from_exponents(n, [(k, BigRational::one())])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coordinates on the power basis of Q(ζ_conductor).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(BigRational::is_integer)
            .map(|q| q.to_integer())
    }

    /// True when the value is an algebraic integer (integral power-basis coordinates).
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Coordinates of this value inside Q(ζ_big), where `conductor | big`.
    fn lift(&self, big: u32) -> Vec<BigRational> {
        assert_eq!(big % self.conductor, 0, "lift target must be a multiple");
        if big == self.conductor {
            return self.coeffs.clone();
        }
        let step = (big / self.conductor) as usize;
        let mut dense = vec![BigRational::zero(); big as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[j * step] = c.clone();
            }
        }
        reduce(big, dense)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^(n-1).
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut dense = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[(n - j) % n] += c;
        }
        Self::from_dense(self.conductor, dense)
    }

    /// Galois action ζ ↦ ζ^k for k coprime to the conductor.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor as u64;
        assert_eq!(k.gcd(&n), 1, "galois exponent must be a unit");
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| ((j as u64 * k) % n, c.clone()));
        Self::from_exponents(self.conductor, terms)
    }

    /// Equal value written with the smallest possible conductor.
    pub fn minimize(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            if cur.conductor == 1 {
                return cur;
            }
            for q in prime_factors(cur.conductor) {
                if let Some(v) = cur.descend(cur.conductor / q) {
                    cur = v;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Rewrites the value in Q(ζ_m) if it lies there.
    fn descend(&self, m: u32) -> Option<Self> {
        let n = self.conductor;
        let rows = euler_phi(n);
        let cols = euler_phi(m);
        // Augmented system: columns are ζ_m^j lifted to Q(ζ_n), last column is self.
        let basis: Vec<Vec<BigRational>> =
            (0..cols).map(|j| Self::zeta(m, j as u64).lift(n)).collect();
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=cols {
                        let t = &a[r][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut y = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            y[c] = a[i][cols].clone();
        }
        let terms = y.into_iter().enumerate().map(|(j, c)| (j as u64, c));
        Some(Self::from_exponents(m, terms))
    }

    /// Numerical value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Parses the interchange encoding: an integer, `[num, den]`, or
    /// `{"n": conductor, "coeffs": {"k": [num, den]}}`.
    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::Number(_) => Ok(Self::from_bigint(json_bigint(v)?)),
            Value::Array(_) => Ok(Self::from_rational(json_rational(v)?)),
            Value::Object(map) => {
                let n = map
                    .get("n")
                    .and_then(Value::as_u64)
                    .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                    .ok_or("cyclotomic value needs a positive integer conductor `n`")?;
                let coeffs = map
                    .get("coeffs")
                    .and_then(Value::as_object)
                    .ok_or("cyclotomic value needs a `coeffs` object")?;
                if let Some(k) = map.keys().find(|k| *k != "n" && *k != "coeffs") {
                    return Err(format!("unexpected key `{k}` in cyclotomic value"));
                }
                let mut terms = Vec::with_capacity(coeffs.len());
                for (k, c) in coeffs {
                    let exp: u64 = k
                        .parse()
                        .map_err(|_| format!("exponent `{k}` is not a nonnegative integer"))?;
                    let c = match c {
                        Value::Number(_) => BigRational::from_integer(json_bigint(c)?),
                        _ => json_rational(c)?,
                    };
                    terms.push((exp, c));
                }
                Ok(Self::from_exponents(n as u32, terms).minimize())
            }
            _ => Err("character value must be an integer, a [num, den] pair or a cyclotomic object".into()),
        }
    }

    pub fn to_json(&self) -> Value {
        if let Some(q) = self.to_rational() {
            return rational_json(&q, true);
        }
        let coeffs: serde_json::Map<String, Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j.to_string(), rational_json(c, false)))
            .collect();
        serde_json::json!({ "n": self.conductor, "coeffs": coeffs })
    }
}

fn json_bigint(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map_err(|_| format!("`{s}` is not an integer"))
        }
        _ => Err(format!("expected an integer, found {v}")),
    }
}

fn json_rational(v: &Value) -> Result<BigRational, String> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| format!("expected a [numerator, denominator] pair, found {v}"))?;
    let num = json_bigint(&pair[0])?;
    let den = json_bigint(&pair[1])?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::Number(serde_json::Number::from_str(&x.to_string()).expect("decimal integer")),
    }
}

fn rational_json(q: &BigRational, bare_integer: bool) -> Value {
    if bare_integer && q.is_integer() {
        return bigint_json(q.numer());
    }
    Value::Array(vec![bigint_json(q.numer()), bigint_json(q.denom())])
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() != other.is_rational() {
            return false;
        }
        let n = self.conductor.lcm(&other.conductor);
        self.lift(n) == other.lift(n)
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = self.conductor.lcm(&rhs.conductor);
        let mut a = self.lift(n);
        for (x, y) in a.iter_mut().zip(rhs.lift(n)) {
            *x += y;
        }
        Cyclotomic::from_reduced(n, a)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let n = self.conductor.lcm(&rhs.conductor);
        let a = self.lift(n);
        let b = rhs.lift(n);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_dense(n, prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut terms: BTreeMap<usize, &BigRational> = BTreeMap::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(j, c);
            }
        }
        let mut first = true;
        for (j, c) in terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "E({})", self.conductor)?;
            if j > 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(88), 40);
    }

    #[test]
    fn sum_of_primitive_fifth_roots() {
        let s: Cyclotomic = (1..5).map(|k| Cyclotomic::zeta(5, k)).sum();
        assert_eq!(s, Cyclotomic::from_int(-1));
        assert_eq!(s.to_rational(), Some(q(-1, 1)));
    }

    #[test]
    fn conjugate_of_zeta8() {
        let z = Cyclotomic::zeta(8, 1);
        assert_eq!(z.conj(), Cyclotomic::zeta(8, 7));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn square_of_sqrt_minus_three() {
        let d = &Cyclotomic::zeta(3, 1) - &Cyclotomic::zeta(3, 2);
        assert_eq!(&d * &d, Cyclotomic::from_int(-3));
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        // i = ζ_4 and ζ_8^2 are the same number.
        assert_eq!(Cyclotomic::zeta(4, 1), Cyclotomic::zeta(8, 2));
        let p = &Cyclotomic::zeta(3, 1) * &Cyclotomic::zeta(4, 1);
        assert_eq!(p, Cyclotomic::zeta(12, 7));
    }

    #[test]
    fn minimize_finds_smallest_field() {
        let i_from_8 = Cyclotomic::zeta(8, 2);
        let i_from_24 = Cyclotomic::zeta(24, 6);
        assert_eq!(i_from_8.minimize().conductor(), 4);
        assert_eq!(i_from_24.minimize().coefficients(), i_from_8.minimize().coefficients());
        // ζ_6 = -ζ_3^2 lives in Q(ζ_3).
        assert_eq!(Cyclotomic::zeta(6, 1).minimize().conductor(), 3);
        // sqrt(5) = 1 + 2(ζ_5 + ζ_5^4) has conductor 5.
        let s5 = Cyclotomic::from_exponents(20, [(0, q(1, 1)), (4, q(2, 1)), (16, q(2, 1))]);
        assert_eq!(s5.minimize().conductor(), 5);
        assert_eq!(&s5 * &s5, Cyclotomic::from_int(5));
    }

    #[test]
    fn json_round_trip() {
        let v = serde_json::json!({"n": 15, "coeffs": {"0": [1, 1], "7": [1, 1], "11": [1, 1], "13": [1, 1], "14": [1, 1]}});
        let c = Cyclotomic::from_json(&v).unwrap();
        let back = Cyclotomic::from_json(&c.to_json()).unwrap();
        assert_eq!(c, back);
        // (3 - i sqrt 15)/2: real part 3/2, imaginary part negative.
        let (re, im) = c.to_complex();
        assert!((re - 1.5).abs() < 1e-9);
        assert!((im + 15f64.sqrt() / 2.0).abs() < 1e-9);
        assert_eq!(Cyclotomic::from_json(&serde_json::json!([3, 6])).unwrap(), Cyclotomic::from_rational(q(1, 2)));
        assert!(Cyclotomic::from_json(&serde_json::json!(1.5)).is_err());
        assert!(Cyclotomic::from_json(&serde_json::json!([1, 0])).is_err());
    }

    #[test]
    fn display_uses_e_notation() {
        let v = &Cyclotomic::from_int(2) - &Cyclotomic::zeta(7, 3);
        assert_eq!(v.to_string(), "2 - E(7)^3");
        assert_eq!(Cyclotomic::from_rational(q(-3, 2)).to_string(), "-3/2");
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        let conductors = prop::sample::select(vec![1u32, 3, 4, 5, 8, 11, 12, 15]);
        (conductors, prop::collection::vec(-5i64..=5, 16)).prop_map(|(n, cs)| {
            Cyclotomic::from_exponents(n, cs.into_iter().enumerate().map(|(k, c)| (k as u64, q(c, 1))))
        })
    }

    proptest! {
        #[test]
        fn conj_is_an_involution(a in arb_cyc()) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn ring_laws(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b).conj(), &(&a.conj() * &b.conj()));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn norm_is_real_and_nonnegative(a in arb_cyc()) {
            let n = &a * &a.conj();
            let (re, im) = n.to_complex();
            prop_assert!(im.abs() < 1e-6);
            prop_assert!(re > -1e-6);
        }

        #[test]
        fn minimize_preserves_value(a in arb_cyc()) {
            let m = a.minimize();
            prop_assert!(m.conductor() <= a.conductor());
            prop_assert_eq!(&m, &a);
            let mm = m.minimize();
            prop_assert_eq!(mm.coefficients(), m.coefficients());
        }
    }
}
