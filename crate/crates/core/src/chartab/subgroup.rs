use std::collections::BTreeMap;

use serde_json::Value;

use super::table::{get, index_array, obj, uint};
use super::{CharacterTable, ChartabError};

/// N_G(H) data used by the conjugate-count formula.
#[derive(Clone, Debug, PartialEq)]
pub enum Normalizer {
    /// N_G(H) = H.
    SelfNormalizing,
    Proper(Box<NormalizerRecord>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizerRecord {
    pub table: CharacterTable,
    /// N-classes to G-classes.
    pub fusion: Vec<usize>,
    /// H-classes to N-classes.
    pub subgroup_fusion: Vec<usize>,
}

/// A subgroup H of G with its table, class fusion into G and normalizer data.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupRecord {
    pub name: String,
    pub maximal: bool,
    pub table: CharacterTable,
    pub fusion: Vec<usize>,
    pub normalizer_index: u64,
    pub normalizer: Normalizer,
    /// Explicit h(x, H) values keyed by G-class name, for classes where the
    /// coprimality hypothesis of the counting formula fails.
    pub h_override: BTreeMap<String, u64>,
}

/// Parses a subgroup record and validates it against the parent table.
/// `resolve` loads tables given by reference (a string instead of an object).
pub fn parse_subgroup(
    text: &str,
    parent: &CharacterTable,
    resolve: &dyn Fn(&str) -> Result<CharacterTable, ChartabError>,
) -> Result<SubgroupRecord, ChartabError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ChartabError::from_json_error(&e))?;
    let rec = SubgroupRecord::from_value(&v, resolve)?;
    rec.validate(parent)?;
    Ok(rec)
}

fn table_field(
    v: &Value,
    path: &str,
    resolve: &dyn Fn(&str) -> Result<CharacterTable, ChartabError>,
) -> Result<CharacterTable, ChartabError> {
    match v {
        Value::String(reference) => resolve(reference),
        _ => CharacterTable::from_value(v, path),
    }
}

/// Checks a class fusion from `sub` into `sup`.
fn check_fusion(
    sub: &CharacterTable,
    sup: &CharacterTable,
    fusion: &[usize],
    what: &str,
) -> Result<(), ChartabError> {
    let err = |message: String| ChartabError::Fusion {
        what: what.to_string(),
        message,
    };
    if fusion.len() != sub.num_classes() {
        return Err(err(format!(
            "has {} entries for {} classes",
            fusion.len(),
            sub.num_classes()
        )));
    }
    if !sup.order().is_multiple_of(sub.order()) {
        return Err(err(format!(
            "subgroup order {} does not divide {}",
            sub.order(),
            sup.order()
        )));
    }
    if fusion.first() != Some(&0) {
        return Err(err("identity must fuse to the identity".into()));
    }
    let mut met = vec![0u64; sup.num_classes()];
    for (i, &f) in fusion.iter().enumerate() {
        let h = sub.class(i);
        let g = sup
            .classes()
            .get(f)
            .ok_or_else(|| err(format!("class {} maps to missing index {f}", h.name)))?;
        if h.element_order != g.element_order {
            return Err(err(format!(
                "class {} (order {}) maps to {} (order {})",
                h.name, h.element_order, g.name, g.element_order
            )));
        }
        if g.centralizer_order % h.centralizer_order != 0 {
            return Err(err(format!(
                "centralizer of {} ({}) does not divide that of {} ({})",
                h.name, h.centralizer_order, g.name, g.centralizer_order
            )));
        }
        met[f] += h.size;
        if met[f] > g.size {
            return Err(err(format!("classes fusing to {} exceed its size", g.name)));
        }
    }
    for (&p, hmap) in sub.power_maps() {
        let Some(gmap) = sup.power_map(p) else {
            continue;
        };
        for (i, &img) in hmap.iter().enumerate() {
            if fusion[img] != gmap[fusion[i]] {
                return Err(err(format!(
                    "does not commute with the {p}-power map at class {}",
                    sub.class(i).name
                )));
            }
        }
    }
    Ok(())
}

impl SubgroupRecord {
    pub fn from_value(
        v: &Value,
        resolve: &dyn Fn(&str) -> Result<CharacterTable, ChartabError>,
    ) -> Result<Self, ChartabError> {
        let path = "subgroup";
        let m = obj(v, path)?;
        let table = table_field(get(m, "table", path)?, "subgroup.table", resolve)?;
        let name = match m.get("name") {
            Some(Value::String(s)) => s.clone(),
            None => table.name().to_string(),
            Some(_) => return Err(ChartabError::schema("subgroup.name", "expected a string")),
        };
        let maximal = match m.get("maximal") {
            None => true,
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(ChartabError::schema("subgroup.maximal", "expected a boolean")),
        };
        let fusion = index_array(get(m, "fusion", path)?, "subgroup.fusion")?;
        let normalizer_index = uint(get(m, "normalizer_index", path)?, "subgroup.normalizer_index")?;
        let normalizer = match get(m, "normalizer", path)? {
            Value::String(s) if s.eq_ignore_ascii_case("self") => Normalizer::SelfNormalizing,
            n @ Value::Object(_) => {
                let nm = obj(n, "subgroup.normalizer")?;
                let np = "subgroup.normalizer";
                Normalizer::Proper(Box::new(NormalizerRecord {
                    table: table_field(get(nm, "table", np)?, "subgroup.normalizer.table", resolve)?,
                    fusion: index_array(get(nm, "fusion", np)?, "subgroup.normalizer.fusion")?,
                    subgroup_fusion: index_array(
                        get(nm, "subgroup_fusion", np)?,
                        "subgroup.normalizer.subgroup_fusion",
                    )?,
                }))
            }
            _ => {
                return Err(ChartabError::schema(
                    "subgroup.normalizer",
                    "expected \"self\" or a normalizer record",
                ))
            }
        };
        let mut h_override = BTreeMap::new();
        if let Some(o) = m.get("h_override") {
            for (k, v) in obj(o, "subgroup.h_override")? {
                h_override.insert(k.clone(), uint(v, &format!("subgroup.h_override.{k}"))?);
            }
        }
        Ok(SubgroupRecord {
            name,
            maximal,
            table,
            fusion,
            normalizer_index,
            normalizer,
            h_override,
        })
    }

    /// Checks fusions, orders and normalizer data against the parent table.
    pub fn validate(&self, parent: &CharacterTable) -> Result<(), ChartabError> {
        check_fusion(&self.table, parent, &self.fusion, &format!("{} -> G", self.name))?;
        if self.normalizer_index == 0 {
            return Err(ChartabError::schema("subgroup.normalizer_index", "must be positive"));
        }
        match &self.normalizer {
            Normalizer::SelfNormalizing => {
                if self.normalizer_index != 1 {
                    return Err(ChartabError::schema(
                        "subgroup.normalizer_index",
                        "must be 1 for a self-normalizing subgroup",
                    ));
                }
            }
            Normalizer::Proper(n) => {
                if self.normalizer_index < 2
                    || n.table.order() != self.normalizer_index * self.table.order()
                {
                    return Err(ChartabError::schema(
                        "subgroup.normalizer_index",
                        format!(
                            "normalizer order {} is not {} times the subgroup order {}",
                            n.table.order(),
                            self.normalizer_index,
                            self.table.order()
                        ),
                    ));
                }
                check_fusion(&n.table, parent, &n.fusion, &format!("N({}) -> G", self.name))?;
                check_fusion(
                    &self.table,
                    &n.table,
                    &n.subgroup_fusion,
                    &format!("{} -> N({})", self.name, self.name),
                )?;
                for (i, &f) in self.fusion.iter().enumerate() {
                    if n.fusion[n.subgroup_fusion[i]] != f {
                        return Err(ChartabError::Fusion {
                            what: format!("{} -> N -> G", self.name),
                            message: format!(
                                "class {} fuses inconsistently",
                                self.table.class(i).name
                            ),
                        });
                    }
                }
            }
        }
        for k in self.h_override.keys() {
            parent.resolve_class(k)?;
        }
        Ok(())
    }

    /// True when some H-class fuses into G-class `class`.
    pub fn meets(&self, class: usize) -> bool {
        self.fusion.contains(&class)
    }

    pub fn order(&self) -> u64 {
        self.table.order()
    }
}
