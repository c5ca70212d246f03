use std::fmt;

use serde::Serialize;

use super::PermError;

/// A permutation of 0..n as an image array. Products compose left to right:
/// `a.mul(&b)` applies a first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::InvalidPerm(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of 0..n from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x as usize >= n {
                    return Err(PermError::InvalidPerm(format!("point {x} out of range")));
                }
                img[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn at(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn mul(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| o.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        Perm(r)
    }

    /// c⁻¹·self·c.
    pub fn conj(&self, c: &Perm) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[c.0[i] as usize] = c.0[x as usize];
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{x}")?;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 → 1 under a, then 1 → 2 under b.
        assert_eq!(a.mul(&b).at(0), 2);
        assert_eq!(a.mul(&b).to_string(), "(0 2 1)");
        assert_eq!(a.mul(&b).order(), 3);
        assert!(a.mul(&a.inv()).is_identity());
        assert_eq!(a.conj(&b), b.inv().mul(&a).mul(&b));
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
