use serde::Serialize;

use super::field::is_prime;
use super::MatclassError;

/// Characteristic tag of a bounds row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ell {
    /// Coprime to the group order.
    Coprime,
    /// Every characteristic.
    Any,
    Prime(u64),
}

impl Serialize for Ell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Ell::Coprime => s.serialize_str("0"),
            Ell::Any => s.serialize_str("*"),
            Ell::Prime(p) => s.serialize_str(&p.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenInput {
    pub group: String,
    pub ell: Ell,
    /// Minimal degree n of a faithful irreducible representation.
    pub n: u64,
    pub class: String,
    /// Element order, a prime power.
    pub d: u64,
    /// Number of conjugates known to generate.
    pub m: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Survives,
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenResult {
    #[serde(flatten)]
    pub input: ScreenInput,
    pub outcome: Outcome,
    pub reason: String,
    /// n − m(d − 1); survivors have slack ≤ 0.
    pub slack: i64,
}

pub(crate) fn is_prime_power(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let p = (2..=d).find(|q| d.is_multiple_of(*q)).unwrap();
    let mut r = d;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1 && is_prime(p)
}

impl ScreenInput {
    pub fn validate(&self) -> Result<(), MatclassError> {
        if !is_prime_power(self.d) {
            return Err(MatclassError::Screen(format!(
                "{} {}: element order {} is not a prime power",
                self.group, self.class, self.d
            )));
        }
        if self.m < 2 {
            return Err(MatclassError::Screen(format!(
                "{} {}: generation count {} is below 2",
                self.group, self.class, self.m
            )));
        }
        if self.n == 0 {
            return Err(MatclassError::Screen(format!("{} {}: degree must be positive", self.group, self.class)));
        }
        Ok(())
    }
}

/// Dimension screen: an almost cyclic element of order d in a group generated
/// by m conjugates forces n ≤ m(d − 1); involutions are excluded outright.
pub fn screen(inputs: &[ScreenInput]) -> Result<Vec<ScreenResult>, MatclassError> {
    inputs
        .iter()
        .map(|inp| {
            inp.validate()?;
            let bound = inp.m * (inp.d - 1);
            let slack = inp.n as i64 - bound as i64;
            let (outcome, reason) = if inp.d == 2 {
                (Outcome::Excluded, "d = 2: pseudoreflection rule".to_string())
            } else if inp.n > bound {
                (Outcome::Excluded, format!("n = {} > m(d-1) = {bound}", inp.n))
            } else {
                (Outcome::Survives, format!("n = {} <= m(d-1) = {bound}", inp.n))
            };
            Ok(ScreenResult {
                input: inp.clone(),
                outcome,
                reason,
                slack,
            })
        })
        .collect()
}

/// Rows `group ell n class d m`; `#` starts a comment. ell is a prime, `0`
/// (coprime to |G|) or `*` (any characteristic).
pub fn parse_bounds(text: &str) -> Result<Vec<ScreenInput>, MatclassError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| MatclassError::Parse { line: i + 1, message };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 {
            return Err(err(format!("expected 6 fields, found {}", f.len())));
        }
        let num = |s: &str, what: &str| -> Result<u64, MatclassError> {
            s.parse().map_err(|_| err(format!("{what} `{s}` is not a nonnegative integer")))
        };
        let ell = match f[1] {
            "*" => Ell::Any,
            "0" => Ell::Coprime,
            s => {
                let p = num(s, "ell")?;
                if !is_prime(p) {
                    return Err(err(format!("ell `{s}` is not a prime, 0 or *")));
                }
                Ell::Prime(p)
            }
        };
        let row = ScreenInput {
            group: f[0].to_string(),
            ell,
            n: num(f[2], "degree")?,
            class: f[3].to_string(),
            d: num(f[4], "d")?,
            m: num(f[5], "m")?,
        };
        row.validate().map_err(|e| err(e.to_string()))?;
        out.push(row);
    }
    Ok(out)
}
