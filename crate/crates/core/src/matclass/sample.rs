//! Random conjugated test matrices with a known class, and a harness that
//! checks [`classify`] and [`jordan_crosscheck`] against them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::classify::{classify, CyclicityClass};
use super::crosscheck::{jordan_crosscheck, Crosscheck, DEFAULT_SPLIT_CAP};
use super::field::{FiniteField, PrimeField};
use super::matrix::Matrix;
use super::poly::Poly;
use super::MatclassError;

/// A matrix built from known blocks and then conjugated by a random P.
#[derive(Clone, Debug)]
pub struct Sample {
    pub shape: &'static str,
    pub matrix: Matrix<PrimeField>,
    pub expected: CyclicityClass<u64>,
    /// (d, r) with A^d scalar and d a power of the prime r, when known.
    pub torsion: Option<(u64, u64)>,
}

/// Class of diag(α·I_h, C(f)).
pub fn expected_class(field: &PrimeField, alpha: u64, h: usize, f: &Poly<PrimeField>) -> CyclicityClass<u64> {
    if h == 0 {
        return CyclicityClass::Cyclic;
    }
    let lin = Poly::linear(*field, &alpha);
    if lin.divides(f) {
        if *f == lin {
            CyclicityClass::Scalar
        } else {
            CyclicityClass::AlmostCyclic { alpha, h }
        }
    } else if h == 1 {
        CyclicityClass::Cyclic
    } else {
        CyclicityClass::AlmostCyclic { alpha, h: h - 1 }
    }
}

fn scalar_plus(field: &PrimeField, alpha: u64, h: usize, f: &Poly<PrimeField>) -> Matrix<PrimeField> {
    let c = Matrix::companion(f).expect("monic of positive degree");
    if h == 0 {
        return c;
    }
    Matrix::block_diag(*field, &[Matrix::scalar(*field, h, &alpha), c])
}

fn random_monic(field: &PrimeField, deg: usize, rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    let mut c: Vec<u64> = (0..deg).map(|_| field.random(rng)).collect();
    c.push(1);
    Poly::new(*field, c)
}

/// Smallest power of r that is at least t.
fn power_at_least(r: u64, t: u64) -> u64 {
    let mut d = 1;
    while d < t {
        d *= r;
    }
    d
}

/// Draws one sample of size at most `max_n` (≥ 4).
pub fn draw(field: &PrimeField, max_n: usize, rng: &mut ChaCha8Rng) -> Sample {
    let p = field.p();
    let max_n = max_n.max(4);
    let (shape, block, expected, torsion) = match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(1..=max_n);
            let a = field.random_nonzero(rng);
            let e = if n == 1 { CyclicityClass::Cyclic } else { CyclicityClass::Scalar };
            ("scalar", Matrix::scalar(*field, n, &a), e, Some((1, 2)))
        }
        1 => {
            let h = rng.gen_range(0..=3);
            let a = field.random(rng);
            let f = random_monic(field, rng.gen_range(1..=max_n - h), rng);
            ("generic", scalar_plus(field, a, h, &f), expected_class(field, a, h, &f), None)
        }
        2 => {
            // f = x^d − α^d with d a prime power, so A^d = α^d·I.
            let h = rng.gen_range(0..=3);
            let choices: Vec<(u64, u64)> = [2u64, 3, 5, 7, 11]
                .iter()
                .flat_map(|&r| {
                    std::iter::successors(Some(r), move |&d| Some(d * r))
                        .take_while(|&d| d as usize <= max_n - h)
                        .map(move |d| (d, r))
                })
                .collect();
            let (d, r) = choices[rng.gen_range(0..choices.len())];
            let a = field.random_nonzero(rng);
            let mut c = vec![0i64; d as usize + 1];
            c[d as usize] = 1;
            let mut f = Poly::from_i64(*field, &c);
            f = f.sub(&Poly::constant(*field, field.pow(&a, d as u128)));
            ("torsion", scalar_plus(field, a, h, &f), expected_class(field, a, h, &f), Some((d, r)))
        }
        3 => {
            // f = (x − α)^t: A^d = α^d·I once d = p^k ≥ t.
            let h = rng.gen_range(0..=3);
            let t = rng.gen_range(1..=max_n - h);
            let a = field.random_nonzero(rng);
            let f = Poly::linear(*field, &a).pow(t as u64);
            let d = power_at_least(p, t as u64);
            ("unipotent", scalar_plus(field, a, h, &f), expected_class(field, a, h, &f), Some((d, p)))
        }
        _ => {
            let a = field.random_nonzero(rng);
            if rng.gen_bool(0.5) {
                // diag(C(g), C(g·u)) with g = (x − α)^s, s ≥ 2.
                let s = rng.gen_range(2..=max_n / 2);
                let t = rng.gen_range(0..=max_n - 2 * s);
                let lin = Poly::linear(*field, &a);
                let g = lin.pow(s as u64);
                let gu = lin.pow((s + t) as u64);
                let m = Matrix::block_diag(
                    *field,
                    &[Matrix::companion(&g).unwrap(), Matrix::companion(&gu).unwrap()],
                );
                let d = power_at_least(p, (s + t) as u64);
                ("neither-unipotent", m, CyclicityClass::Neither, Some((d, p)))
            } else {
                // diag(C(g), C(g)) with g = x^d − α^d, d ≥ 2.
                let choices: Vec<(u64, u64)> = [2u64, 3, 5]
                    .iter()
                    .flat_map(|&r| {
                        std::iter::successors(Some(r), move |&d| Some(d * r))
                            .take_while(|&d| 2 * d as usize <= max_n)
                            .map(move |d| (d, r))
                    })
                    .collect();
                let (d, r) = choices[rng.gen_range(0..choices.len())];
                let mut c = vec![0i64; d as usize + 1];
                c[d as usize] = 1;
                let g = Poly::from_i64(*field, &c).sub(&Poly::constant(*field, field.pow(&a, d as u128)));
                let cg = Matrix::companion(&g).unwrap();
                let m = Matrix::block_diag(*field, &[cg.clone(), cg]);
                ("neither-torsion", m, CyclicityClass::Neither, Some((d, r)))
            }
        }
    };
    let (pm, pinv) = Matrix::random_invertible(*field, block.rows(), rng);
    Sample {
        shape,
        matrix: block.conjugate(&pm, &pinv),
        expected,
        torsion,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub p: u64,
    pub samples: usize,
    pub misclassified: usize,
    pub crosschecked: usize,
    pub disagreements: usize,
    /// Samples with known torsion whose splitting field exceeded the cap.
    pub inapplicable: usize,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.misclassified == 0 && self.disagreements == 0
    }
}

/// Classifies `count` samples over F_p, comparing with the expected class and,
/// where the torsion is known, with the Jordan crosscheck.
pub fn run_harness(p: u64, count: usize, seed: u64, max_n: usize) -> Result<HarnessReport, MatclassError> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut rep = HarnessReport {
        p,
        ..HarnessReport::default()
    };
    for _ in 0..count {
        let s = draw(&field, max_n, &mut rng);
        rep.samples += 1;
        let got = classify(&s.matrix);
        if got != s.expected {
            rep.misclassified += 1;
        }
        if let Some((d, r)) = s.torsion {
            match jordan_crosscheck(&s.matrix, d, r, DEFAULT_SPLIT_CAP)? {
                Crosscheck::Class(c) => {
                    rep.crosschecked += 1;
                    if c != got {
                        rep.disagreements += 1;
                    }
                }
                Crosscheck::Inapplicable { .. } => rep.inapplicable += 1,
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_class_rule() {
        let f = PrimeField::new(5).unwrap();
        let lin = Poly::linear(f, &2);
        assert_eq!(expected_class(&f, 2, 3, &lin), CyclicityClass::Scalar);
        assert_eq!(
            expected_class(&f, 2, 3, &lin.pow(2)),
            CyclicityClass::AlmostCyclic { alpha: 2, h: 3 }
        );
        let other = Poly::linear(f, &3);
        assert_eq!(expected_class(&f, 2, 1, &other), CyclicityClass::Cyclic);
        assert_eq!(
            expected_class(&f, 2, 2, &other),
            CyclicityClass::AlmostCyclic { alpha: 2, h: 1 }
        );
    }

    #[test]
    fn small_harness_run() {
        for p in [2, 3, 5] {
            let rep = run_harness(p, 60, 7, 8).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.crosschecked > 0);
        }
    }
}
