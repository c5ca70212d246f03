use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{ChartabError, Cyclotomic};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub name: String,
    #[serde(rename = "order")]
    pub element_order: u64,
    pub size: u64,
    #[serde(rename = "centralizer")]
    pub centralizer_order: u64,
}

/// A validated character table. Construction checks every structural
/// invariant and both orthogonality relations exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    exponent: u64,
    centerless: bool,
    classes: Vec<ClassInfo>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    characters: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

pub fn parse_table(text: &str) -> Result<CharacterTable, ChartabError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ChartabError::from_json_error(&e))?;
    CharacterTable::from_value(&v, "table")
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factors with multiplicity.
fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

pub(crate) fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ChartabError> {
    v.as_object()
        .ok_or_else(|| ChartabError::schema(path, "expected an object"))
}

pub(crate) fn get<'a>(
    m: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Value, ChartabError> {
    m.get(key)
        .ok_or_else(|| ChartabError::schema(path, format!("missing key `{key}`")))
}

pub(crate) fn uint(v: &Value, path: &str) -> Result<u64, ChartabError> {
    v.as_u64()
        .ok_or_else(|| ChartabError::schema(path, format!("expected a nonnegative integer, found {v}")))
}

pub(crate) fn index_array(v: &Value, path: &str) -> Result<Vec<usize>, ChartabError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ChartabError::schema(path, "expected an array of class indices"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| uint(x, &format!("{path}[{i}]")).map(|u| u as usize))
        .collect()
}

impl CharacterTable {
    pub fn new(
        name: String,
        order: u64,
        exponent: u64,
        classes: Vec<ClassInfo>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        characters: Vec<Vec<Cyclotomic>>,
        centerless: Option<bool>,
    ) -> Result<Self, ChartabError> {
        let r = classes.len();
        if characters.len() != r {
            return Err(ChartabError::NotSquare {
                classes: r,
                characters: characters.len(),
            });
        }
        for (i, row) in characters.iter().enumerate() {
            if row.len() != r {
                return Err(ChartabError::RowLength {
                    row: i,
                    len: row.len(),
                    expected: r,
                });
            }
        }
        let first_ok = classes
            .first()
            .is_some_and(|c| c.element_order == 1 && c.size == 1);
        if !first_ok || classes.iter().skip(1).any(|c| c.element_order == 1) {
            return Err(ChartabError::IdentityClass);
        }

        let mut sum = 0u64;
        let mut lcm = 1u64;
        for c in &classes {
            if c.size.checked_mul(c.centralizer_order) != Some(order) {
                return Err(ChartabError::SizeCentralizer {
                    class: c.name.clone(),
                    size: c.size,
                    centralizer: c.centralizer_order,
                    order,
                });
            }
            if c.element_order == 0 || c.centralizer_order % c.element_order != 0 {
                return Err(ChartabError::ElementOrder {
                    class: c.name.clone(),
                    element_order: c.element_order,
                    what: "centralizer order",
                    value: c.centralizer_order,
                });
            }
            sum += c.size;
            lcm = lcm.lcm(&c.element_order);
        }
        if sum != order {
            return Err(ChartabError::ClassSizeSum { sum, order });
        }
        if lcm != exponent {
            return Err(ChartabError::Exponent { exponent, lcm });
        }
        let mut names: Vec<&str> = classes.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(ChartabError::schema("classes", format!("duplicate class name `{}`", w[0])));
        }

        for (&p, map) in &power_maps {
            if !is_prime(p) {
                return Err(ChartabError::PowerMap {
                    prime: p,
                    message: "key is not a prime".into(),
                });
            }
            if map.len() != r {
                return Err(ChartabError::PowerMap {
                    prime: p,
                    message: format!("has {} entries, expected {r}", map.len()),
                });
            }
            for (i, &img) in map.iter().enumerate() {
                let o = classes[i].element_order;
                let want = o / o.gcd(&p);
                if img >= r || classes[img].element_order != want {
                    return Err(ChartabError::PowerMap {
                        prime: p,
                        message: format!(
                            "class {} must map to a class of element order {want}",
                            classes[i].name
                        ),
                    });
                }
            }
        }
        for p in prime_divisors(exponent) {
            if !power_maps.contains_key(&p) {
                return Err(ChartabError::MissingPowerMap(p));
            }
        }

        let mut degrees = Vec::with_capacity(r);
        for (i, row) in characters.iter().enumerate() {
            let d = row[0]
                .to_integer()
                .and_then(|d| d.to_u64())
                .filter(|&d| d > 0)
                .ok_or_else(|| ChartabError::Degree {
                    row: i,
                    value: row[0].to_string(),
                })?;
            degrees.push(d);
            for (j, v) in row.iter().enumerate() {
                if !v.is_algebraic_integer() {
                    return Err(ChartabError::NonIntegralValue {
                        row: i,
                        class: classes[j].name.clone(),
                        value: v.to_string(),
                    });
                }
            }
        }

        let actual_centerless = classes.iter().filter(|c| c.size == 1).count() == 1;
        if let Some(flag) = centerless {
            if flag != actual_centerless {
                return Err(ChartabError::CenterFlag {
                    flag,
                    actual: actual_centerless,
                });
            }
        }

        let table = CharacterTable {
            name,
            order,
            exponent,
            centerless: actual_centerless,
            classes,
            power_maps,
            characters,
            degrees,
        };
        table.check_orthogonality()?;
        Ok(table)
    }

    fn check_orthogonality(&self) -> Result<(), ChartabError> {
        let r = self.classes.len();
        let conj: Vec<Vec<Cyclotomic>> = self
            .characters
            .iter()
            .map(|row| row.iter().map(Cyclotomic::conj).collect())
            .collect();
        let order = Cyclotomic::from_int(self.order as i64);
        for a in 0..r {
            for b in a..r {
                let s: Cyclotomic = (0..r)
                    .map(|j| {
                        let size = Cyclotomic::from_int(self.classes[j].size as i64);
                        &(&self.characters[a][j] * &conj[b][j]) * &size
                    })
                    .sum();
                let want = if a == b { order.clone() } else { Cyclotomic::zero() };
                if s != want {
                    return Err(ChartabError::RowOrthogonality { a, b });
                }
            }
        }
        for j in 0..r {
            for k in j..r {
                let s: Cyclotomic = (0..r)
                    .map(|i| &self.characters[i][j] * &conj[i][k])
                    .sum();
                let want = if j == k {
                    Cyclotomic::from_int(self.classes[j].centralizer_order as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != want {
                    return Err(ChartabError::ColumnOrthogonality {
                        a: self.classes[j].name.clone(),
                        b: self.classes[k].name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn from_value(v: &Value, path: &str) -> Result<Self, ChartabError> {
        let m = obj(v, path)?;
        let name = get(m, "name", path)?
            .as_str()
            .ok_or_else(|| ChartabError::schema(format!("{path}.name"), "expected a string"))?
            .to_string();
        let order = uint(get(m, "order", path)?, &format!("{path}.order"))?;
        let exponent = uint(get(m, "exponent", path)?, &format!("{path}.exponent"))?;
        let centerless = match m.get("centerless") {
            None | Some(Value::Null) => None,
            Some(Value::Bool(b)) => Some(*b),
            Some(_) => return Err(ChartabError::schema(format!("{path}.centerless"), "expected a boolean")),
        };
        let classes: Vec<ClassInfo> = serde_json::from_value(get(m, "classes", path)?.clone())
            .map_err(|e| ChartabError::schema(format!("{path}.classes"), e.to_string()))?;

        let mut power_maps = BTreeMap::new();
        let pm = obj(get(m, "power_maps", path)?, &format!("{path}.power_maps"))?;
        for (k, v) in pm {
            let p: u64 = k.parse().map_err(|_| {
                ChartabError::schema(format!("{path}.power_maps"), format!("key `{k}` is not an integer"))
            })?;
            power_maps.insert(p, index_array(v, &format!("{path}.power_maps.{k}"))?);
        }

        let rows = get(m, "characters", path)?
            .as_array()
            .ok_or_else(|| ChartabError::schema(format!("{path}.characters"), "expected an array"))?;
        let mut characters = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let rp = format!("{path}.characters[{i}]");
            let vals = row
                .as_array()
                .ok_or_else(|| ChartabError::schema(&rp, "expected an array"))?;
            let parsed: Result<Vec<_>, _> = vals
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    Cyclotomic::from_json(x).map_err(|e| ChartabError::schema(format!("{rp}[{j}]"), e))
                })
                .collect();
            characters.push(parsed?);
        }
        Self::new(name, order, exponent, classes, power_maps, characters, centerless)
    }

    pub fn to_value(&self) -> Value {
        let power_maps: Map<String, Value> = self
            .power_maps
            .iter()
            .map(|(p, m)| (p.to_string(), serde_json::json!(m)))
            .collect();
        let characters: Vec<Value> = self
            .characters
            .iter()
            .map(|row| Value::Array(row.iter().map(Cyclotomic::to_json).collect()))
            .collect();
        serde_json::json!({
            "name": self.name,
            "order": self.order,
            "exponent": self.exponent,
            "centerless": self.centerless,
            "classes": self.classes,
            "power_maps": power_maps,
            "characters": characters,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("table serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// True when the identity is the only central element.
    pub fn is_centerless(&self) -> bool {
        self.centerless
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() as u64 == self.order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassInfo {
        &self.classes[i]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.name == name)
            .or_else(|| {
                let lower = name.to_ascii_lowercase();
                self.classes.iter().position(|c| c.name.to_ascii_lowercase() == lower)
            })
    }

    pub fn resolve_class(&self, name: &str) -> Result<usize, ChartabError> {
        self.class_index(name)
            .ok_or_else(|| ChartabError::UnknownClass(name.to_string()))
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.characters
    }

    pub fn value(&self, character: usize, class: usize) -> &Cyclotomic {
        &self.characters[character][class]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Class of g^j for g in class `class`, composing prime power maps.
    pub fn power_class(&self, class: usize, j: u64) -> Result<usize, ChartabError> {
        if class >= self.classes.len() {
            return Err(ChartabError::UnknownClass(format!("#{class}")));
        }
        let o = self.classes[class].element_order;
        let j = j % o;
        if j == 0 {
            return Ok(0);
        }
        // g^j only depends on j mod o, so pick a representative whose prime
        // factors all have power maps.
        let mut first_missing = None;
        for t in 0..1000u64 {
            let candidate = j + t * o;
            let factors = factorize(candidate);
            match factors.iter().find(|p| !self.power_maps.contains_key(p)) {
                Some(&p) => {
                    first_missing.get_or_insert(p);
                }
                None => {
                    let mut c = class;
                    for p in factors {
                        c = self.power_maps[&p][c];
                    }
                    return Ok(c);
                }
            }
        }
        Err(ChartabError::MissingPowerMap(first_missing.unwrap_or(j)))
    }

    /// Class of inverses.
    pub fn inverse_class(&self, class: usize) -> Result<usize, ChartabError> {
        let o = self.classes[class].element_order;
        self.power_class(class, o - 1)
    }

    /// Σ_i χ_i(1)^2, which must equal |G|.
    pub fn degree_square_sum(&self) -> BigInt {
        self.degrees
            .iter()
            .map(|&d| BigInt::from(d) * BigInt::from(d))
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{"name":"S3","order":6,"exponent":6,
        "classes":[{"name":"1a","order":1,"size":1,"centralizer":6},
                   {"name":"2a","order":2,"size":3,"centralizer":2},
                   {"name":"3a","order":3,"size":2,"centralizer":3}],
        "power_maps":{"2":[0,0,2],"3":[0,1,0]},
        "characters":[[1,1,1],[1,-1,1],[2,0,-1]]}"#;

    #[test]
    fn parses_s3() {
        let t = parse_table(S3).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.num_classes(), 3);
        assert!(t.is_centerless());
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(t.degree_square_sum(), BigInt::from(6));
    }

    #[test]
    fn class_size_sum_error() {
        let bad = S3.replace(r#""size":2,"centralizer":3"#, r#""size":1,"centralizer":6"#);
        let err = parse_table(&bad).unwrap_err();
        // The size/centralizer check passes for the altered class, so the sum check fires.
        assert!(err.to_string().contains("class sizes do not sum to group order"), "{err}");
    }

    #[test]
    fn broken_orthogonality_names_rows() {
        let bad = S3.replace("[2,0,-1]", "[2,0,1]");
        match parse_table(&bad).unwrap_err() {
            ChartabError::RowOrthogonality { a, b } => assert_eq!((a, b), (0, 2)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_power_map() {
        let bad = S3.replace(r#","3":[0,1,0]"#, "");
        assert_eq!(parse_table(&bad).unwrap_err(), ChartabError::MissingPowerMap(3));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_table("{\"name\": \n  oops}").unwrap_err() {
            ChartabError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(parse_table("").unwrap_err(), ChartabError::Syntax { .. }));
    }

    #[test]
    fn power_class_basics() {
        let t = parse_table(S3).unwrap();
        assert_eq!(t.power_class(2, 1).unwrap(), 2);
        assert_eq!(t.power_class(2, 3).unwrap(), 0);
        assert_eq!(t.power_class(1, 2).unwrap(), 0);
        assert_eq!(t.inverse_class(2).unwrap(), 2);
    }

    #[test]
    fn round_trip() {
        let t = parse_table(S3).unwrap();
        let again = parse_table(&t.to_json_string()).unwrap();
        assert_eq!(t, again);
        assert_eq!(t.to_json_string(), again.to_json_string());
    }
}
