use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classify::CyclicityClass;
use super::field::{is_prime, ExtField, FiniteField, PrimeField};
use super::matrix::Matrix;
use super::poly::Poly;
use super::MatclassError;

pub const DEFAULT_SPLIT_CAP: u32 = 24;

const ROOT_SEED: u64 = 0x6a6f7264616e;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Crosscheck<E> {
    Class(CyclicityClass<E>),
    /// The characteristic polynomial needs an extension of degree above the cap.
    Inapplicable { cap: u32 },
}

/// Jordan structure of one eigenvalue: block sizes, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlocks<E> {
    pub eigenvalue: E,
    pub blocks: Vec<usize>,
}

/// Classifies A from its eigenvalues and Jordan blocks over a splitting field,
/// independently of the Smith form. Requires A^d scalar with d a power of the prime r.
pub fn jordan_crosscheck<F: FiniteField>(
    a: &Matrix<F>,
    d: u64,
    r: u64,
    cap: u32,
) -> Result<Crosscheck<F::Elem>, MatclassError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(MatclassError::Shape("crosscheck needs a nonempty square matrix".into()));
    }
    if !is_prime(r) || d == 0 || !is_power_of(d, r) {
        return Err(MatclassError::Precondition(format!("{d} is not a power of the prime {r}")));
    }
    if a.pow(d).scalar_value().is_none() {
        return Err(MatclassError::Precondition(format!("A^{d} is not scalar")));
    }
    let base = a.field();
    let f = a.char_poly();
    let Some(s) = splitting_degree(&f, cap) else {
        return Ok(Crosscheck::Inapplicable { cap });
    };
    let p = base.characteristic();
    let k = ExtField::generate(p, base.degree() * s)?;
    let embed = Embedding::new(base, &k)?;
    let ak = a.map(&k, |x| embed.image(x));
    let fk = Poly::new(k.clone(), f.coeffs().iter().map(|c| embed.image(c)).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
    let eig = roots(&fk, &mut rng);
    let structure: Vec<EigenBlocks<Vec<u64>>> = eig
        .into_iter()
        .map(|lambda| EigenBlocks {
            blocks: jordan_blocks(&ak, &lambda),
            eigenvalue: lambda,
        })
        .collect();
    let total: usize = structure.iter().flat_map(|e| &e.blocks).sum();
    if total != a.rows() {
        return Err(MatclassError::Inconsistent(format!(
            "Jordan blocks cover {total} of {} dimensions",
            a.rows()
        )));
    }
    let class = classify_blocks(&structure);
    let class = match class {
        CyclicityClass::AlmostCyclic { alpha, h } => {
            let back = embed.preimage(&alpha).ok_or_else(|| {
                MatclassError::Inconsistent("the repeated eigenvalue is not in the base field".into())
            })?;
            CyclicityClass::AlmostCyclic { alpha: back, h }
        }
        CyclicityClass::Scalar => CyclicityClass::Scalar,
        CyclicityClass::Cyclic => CyclicityClass::Cyclic,
        CyclicityClass::Neither => CyclicityClass::Neither,
    };
    Ok(Crosscheck::Class(class))
}

fn is_power_of(mut d: u64, r: u64) -> bool {
    while d.is_multiple_of(r) {
        d /= r;
    }
    d == 1
}

/// Class from the Jordan data: cyclic when every eigenvalue has one block;
/// almost cyclic when a single eigenvalue α has several blocks, all but the
/// largest of size 1.
pub fn classify_blocks<E: Clone>(structure: &[EigenBlocks<E>]) -> CyclicityClass<E> {
    let multi: Vec<&EigenBlocks<E>> = structure.iter().filter(|e| e.blocks.len() > 1).collect();
    match multi.as_slice() {
        [] => CyclicityClass::Cyclic,
        [e] => {
            if e.blocks[1..].iter().any(|&b| b != 1) {
                return CyclicityClass::Neither;
            }
            if structure.len() == 1 && e.blocks[0] == 1 {
                CyclicityClass::Scalar
            } else {
                CyclicityClass::AlmostCyclic {
                    alpha: e.eigenvalue.clone(),
                    h: e.blocks.len() - 1,
                }
            }
        }
        _ => CyclicityClass::Neither,
    }
}

/// Jordan block sizes of λ from the ranks of (A − λ)^j, largest first.
fn jordan_blocks<F: FiniteField>(a: &Matrix<F>, lambda: &F::Elem) -> Vec<usize> {
    let n = a.rows();
    let b = a.sub_scalar(lambda);
    let mut ranks = vec![n];
    let mut pw = b.clone();
    loop {
        let r = pw.rank();
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
        pw = pw.mul(&b);
    }
    // at_least[j] = number of blocks of size ≥ j + 1.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = BTreeMap::new();
    for j in 0..at_least.len() {
        let exact = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
        if exact > 0 {
            sizes.insert(j + 1, exact);
        }
    }
    sizes
        .into_iter()
        .rev()
        .flat_map(|(size, count)| std::iter::repeat_n(size, count))
        .collect()
}

/// X ↦ X^{|F|} mod f.
fn frobenius<F: FiniteField>(x: &Poly<F>, f: &Poly<F>) -> Poly<F> {
    let p = x.field().characteristic() as u128;
    let mut h = x.clone();
    for _ in 0..x.field().degree() {
        h = h.pow_mod(p, f);
    }
    h
}

/// Smallest s ≤ cap such that f splits over the degree-s extension of its field.
pub fn splitting_degree<F: FiniteField>(f: &Poly<F>, cap: u32) -> Option<u32> {
    let n = f.degree()?;
    if n <= 1 {
        return Some(1);
    }
    let x = Poly::x(f.field().clone());
    let mut xs = x.clone();
    for s in 1..=cap {
        xs = frobenius(&xs, f);
        let g = f.gcd(&xs.sub(&x));
        // g holds every root in the degree-s extension; f splits when g covers
        // all of them, i.e. f divides a power of g.
        if g.pow_mod(n as u128, f).is_zero() {
            return Some(s);
        }
    }
    None
}

/// Distinct roots of f lying in its field, sorted by coordinates.
pub fn roots<F: FiniteField>(f: &Poly<F>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let field = f.field().clone();
    let Some(n) = f.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let x = Poly::x(field.clone());
    let g = f.gcd(&frobenius(&x, f).sub(&x));
    let mut out = Vec::new();
    split(&g, rng, &mut out);
    out.sort_by_key(|r| field.coords(r));
    out
}

/// Cantor–Zassenhaus equal-degree splitting of a product of distinct linear factors.
fn split<F: FiniteField>(g: &Poly<F>, rng: &mut ChaCha8Rng, out: &mut Vec<F::Elem>) {
    let field = g.field().clone();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let m = g.monic();
            out.push(field.neg(&m.coeff(0)));
            return;
        }
        _ => {}
    }
    let p = field.characteristic();
    let q = BigUint::from(p).pow(field.degree());
    let x = Poly::x(field.clone());
    loop {
        let a = field.random(rng);
        let w = if p == 2 {
            // Absolute trace of a·x: h + h^2 + … + h^{2^{k−1}}.
            let mut t = x.scale(&a).rem(g);
            let mut acc = t.clone();
            for _ in 1..field.degree() {
                t = t.mul_mod(&t, g);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (&q - 1u32) / 2u32;
            let h = x.add(&Poly::constant(field.clone(), a));
            h.pow_mod_big(&e, g).sub(&Poly::one(field.clone()))
        };
        let d = g.gcd(&w);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            split(&d, rng, out);
            split(&g.divrem(&d).0, rng, out);
            return;
        }
    }
}

/// Embedding of a field into an extension, through a root of its defining polynomial.
struct Embedding<F: FiniteField> {
    base: F,
    k: ExtField,
    /// Powers β^0, …, β^{e−1} of the chosen root.
    powers: Vec<Vec<u64>>,
}

impl<F: FiniteField> Embedding<F> {
    fn new(base: &F, k: &ExtField) -> Result<Self, MatclassError> {
        let e = base.degree() as usize;
        let beta = if e == 1 {
            k.zero()
        } else {
            let def = base.defining_poly();
            let dk = Poly::new(k.clone(), def.iter().map(|&c| k.from_i64(c as i64)).collect());
            let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
            roots(&dk, &mut rng)
                .into_iter().next().ok_or_else(|| {
                MatclassError::Inconsistent("defining polynomial has no root in the extension".into())
            })?
        };
        let mut powers = vec![k.one()];
        for _ in 1..e {
            let last = powers.last().unwrap();
            powers.push(k.mul(last, &beta));
        }
        Ok(Embedding {
            base: base.clone(),
            k: k.clone(),
            powers,
        })
    }

    fn image(&self, a: &F::Elem) -> Vec<u64> {
        let c = self.base.coords(a);
        let mut acc = self.k.zero();
        for (ci, bi) in c.iter().zip(&self.powers) {
            if *ci != 0 {
                acc = self.k.add(&acc, &self.k.mul(&self.k.from_i64(*ci as i64), bi));
            }
        }
        acc
    }

    /// Solves Σ a_i β^i = y over F_p.
    fn preimage(&self, y: &Vec<u64>) -> Option<F::Elem> {
        let fp = PrimeField::new(self.k.characteristic()).ok()?;
        let rows = self.k.degree() as usize;
        let cols = self.powers.len();
        let mut m = Matrix::zero(fp, rows, cols);
        for (j, b) in self.powers.iter().enumerate() {
            for (i, c) in self.k.coords(b).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let a = m.solve(&self.k.coords(y))?;
        Some(self.base.from_coords(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclass::classify::classify;

    #[test]
    fn eighth_roots_of_unity_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let c = Matrix::companion(&Poly::from_i64(f, &[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(splitting_degree(&c.char_poly(), 24), Some(2));
        let r = jordan_crosscheck(&c, 8, 2, DEFAULT_SPLIT_CAP).unwrap();
        assert_eq!(r, Crosscheck::Class(CyclicityClass::Cyclic));
        assert_eq!(classify(&c), CyclicityClass::Cyclic);
    }

    #[test]
    fn unipotent_single_block() {
        let f = PrimeField::new(2).unwrap();
        let mut j = Matrix::identity(f, 4);
        for i in 0..3 {
            j.set(i, i + 1, 1);
        }
        assert_eq!(jordan_crosscheck(&j, 4, 2, 24).unwrap(), Crosscheck::Class(CyclicityClass::Cyclic));
    }

    #[test]
    fn preconditions_and_cap() {
        let f = PrimeField::new(2).unwrap();
        let c = Matrix::companion(&Poly::from_i64(f, &[1, 1, 1])).unwrap();
        assert!(matches!(jordan_crosscheck(&c, 2, 2, 24), Err(MatclassError::Precondition(_))));
        assert!(matches!(jordan_crosscheck(&c, 6, 2, 24), Err(MatclassError::Precondition(_))));
        assert_eq!(jordan_crosscheck(&c, 3, 3, 24).unwrap(), Crosscheck::Class(CyclicityClass::Cyclic));
        // x^2 + x + 1 needs degree 2 over F_2.
        assert_eq!(jordan_crosscheck(&c, 3, 3, 1).unwrap(), Crosscheck::Inapplicable { cap: 1 });
    }

    #[test]
    fn almost_cyclic_over_an_extension_base() {
        let k = ExtField::generate(2, 2).unwrap();
        let w = vec![0, 1];
        // diag(w, w, C(x^3 − w^3)); A^3 = w^3·I.
        let w3 = k.pow(&w, 3);
        let f = Poly::new(k.clone(), vec![k.neg(&w3), k.zero(), k.zero(), k.one()]);
        let a = Matrix::block_diag(
            k.clone(),
            &[Matrix::scalar(k.clone(), 2, &w), Matrix::companion(&f).unwrap()],
        );
        let want = CyclicityClass::AlmostCyclic { alpha: w, h: 2 };
        assert_eq!(classify(&a), want);
        assert_eq!(jordan_crosscheck(&a, 3, 3, 24).unwrap(), Crosscheck::Class(want));
    }

    #[test]
    fn roots_are_found() {
        let f = PrimeField::new(7).unwrap();
        let p = Poly::from_i64(f, &[-1, 0, 0, 1]); // x^3 − 1 = (x−1)(x−2)(x−4)
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(roots(&p, &mut rng), vec![1, 2, 4]);
    }
}
