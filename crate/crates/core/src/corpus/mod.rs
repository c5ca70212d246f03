//! The data corpus: character tables, subgroup records, permutation fixtures,
//! screening bounds and restriction specs. Ships embedded in the binary; a
//! directory with the same layout can replace it.
//!
//! Layout: `tables/<G>.json`, `subgroups/<G>/*.json`, `perm/<G>.txt`,
//! `bounds.txt`, `restrict/*.json`.

mod embedded;

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::chartab::{parse_subgroup, parse_table, CharacterTable, ChartabError, SubgroupRecord};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("no {kind} named `{name}` in the corpus")]
    NotFound { kind: &'static str, name: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: ChartabError,
    },
}

#[derive(Clone, Debug)]
enum Source {
    Embedded,
    Dir(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Corpus {
    source: Source,
}

/// Lowercase alphanumeric key used for name matching.
fn key(name: &str) -> String {
    name.chars()
        .filter(char::is_ascii_alphanumeric)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

fn alias(k: &str) -> &str {
    match k {
        "psl27" | "l32" | "psl32" | "gl32" => "l27",
        "psl211" => "l211",
        _ => k,
    }
}

fn stem(path: &str) -> &str {
    let file = path.rsplit('/').next().unwrap_or(path);
    file.rsplit_once('.').map_or(file, |(s, _)| s)
}

impl Default for Corpus {
    fn default() -> Self {
        Self::embedded()
    }
}

impl Corpus {
    pub fn embedded() -> Self {
        Corpus {
            source: Source::Embedded,
        }
    }

    pub fn from_dir(dir: impl Into<PathBuf>) -> Self {
        Corpus {
            source: Source::Dir(dir.into()),
        }
    }

    /// Relative paths of all files under `prefix`, sorted.
    fn list(&self, prefix: &str) -> Vec<String> {
        let mut out: Vec<String> = match &self.source {
            Source::Embedded => embedded::FILES
                .iter()
                .map(|(p, _)| p.to_string())
                .filter(|p| p.starts_with(prefix))
                .collect(),
            Source::Dir(dir) => {
                let base = dir.join(prefix);
                let Ok(rd) = fs::read_dir(&base) else {
                    return Vec::new();
                };
                rd.filter_map(Result::ok)
                    .filter(|e| e.path().is_file())
                    .map(|e| format!("{prefix}{}", e.file_name().to_string_lossy()))
                    .collect()
            }
        };
        out.sort();
        out
    }

    pub fn read(&self, rel: &str) -> Result<String, CorpusError> {
        match &self.source {
            Source::Embedded => embedded::FILES
                .iter()
                .find(|(p, _)| *p == rel)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| CorpusError::Io {
                    path: rel.to_string(),
                    message: "not in the embedded corpus".into(),
                }),
            Source::Dir(dir) => read_file(&dir.join(rel)),
        }
    }

    fn find(&self, prefix: &str, kind: &'static str, name: &str) -> Result<String, CorpusError> {
        let want = key(name);
        let want = alias(&want);
        self.list(prefix)
            .into_iter()
            .find(|p| alias(&key(stem(p))) == want)
            .ok_or_else(|| CorpusError::NotFound {
                kind,
                name: name.to_string(),
            })
    }

    /// Group names with a character table, sorted by file name.
    pub fn group_names(&self) -> Vec<String> {
        self.list("tables/")
            .iter()
            .filter_map(|p| self.read(p).ok())
            .filter_map(|text| {
                let v: serde_json::Value = serde_json::from_str(&text).ok()?;
                v.get("name")?.as_str().map(str::to_string)
            })
            .collect()
    }

    pub fn table_path(&self, name: &str) -> Result<String, CorpusError> {
        self.find("tables/", "character table", name)
    }

    pub fn table(&self, name: &str) -> Result<CharacterTable, CorpusError> {
        let path = self.table_path(name)?;
        let text = self.read(&path)?;
        parse_table(&text).map_err(|source| CorpusError::Invalid { path, source })
    }

    /// Subgroup records for group `name`, validated against its table.
    pub fn subgroups(&self, name: &str) -> Result<Vec<SubgroupRecord>, CorpusError> {
        let path = self.table_path(name)?;
        let table = self.table(name)?;
        let dir = format!("subgroups/{}/", stem(&path));
        self.subgroups_in(&dir, &table)
    }

    fn subgroups_in(&self, dir: &str, parent: &CharacterTable) -> Result<Vec<SubgroupRecord>, CorpusError> {
        let resolve = |reference: &str| -> Result<CharacterTable, ChartabError> {
            let inside = format!("{dir}{reference}");
            let text = self
                .read(&inside)
                .or_else(|_| self.table_path(reference).and_then(|p| self.read(&p)))
                .map_err(|e| ChartabError::Reference {
                    reference: reference.to_string(),
                    message: e.to_string(),
                })?;
            parse_table(&text)
        };
        let mut out = Vec::new();
        for path in self.list(dir) {
            if !path.ends_with(".json") {
                continue;
            }
            let text = self.read(&path)?;
            let rec = parse_subgroup(&text, parent, &resolve)
                .map_err(|source| CorpusError::Invalid { path, source })?;
            out.push(rec);
        }
        out.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.name.cmp(&b.name)));
        Ok(out)
    }

    /// Maximal subgroup records only.
    pub fn maximal_subgroups(&self, name: &str) -> Result<Vec<SubgroupRecord>, CorpusError> {
        Ok(self
            .subgroups(name)?
            .into_iter()
            .filter(|s| s.maximal)
            .collect())
    }

    pub fn perm_fixture(&self, name: &str) -> Result<String, CorpusError> {
        let path = self.find("perm/", "permutation fixture", name)?;
        self.read(&path)
    }

    pub fn bounds(&self) -> Result<String, CorpusError> {
        self.read("bounds.txt")
    }

    pub fn restriction_spec(&self, name: &str) -> Result<String, CorpusError> {
        let path = self.find("restrict/", "restriction spec", name)?;
        self.read(&path)
    }
}

/// Loads subgroup records from an arbitrary directory of JSON files.
pub fn subgroups_from_dir(dir: &Path, parent: &CharacterTable) -> Result<Vec<SubgroupRecord>, CorpusError> {
    let corpus = Corpus::from_dir(dir);
    corpus.subgroups_in("", parent)
}

pub fn read_file(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_aliases() {
        let c = Corpus::embedded();
        assert_eq!(c.table("PSL(2,7)").unwrap().name(), "L2(7)");
        assert_eq!(c.table("l3(2)").unwrap().order(), 168);
        assert_eq!(c.table("m11").unwrap().order(), 7920);
        assert!(matches!(c.table("Ly"), Err(CorpusError::NotFound { .. })));
        let names = c.group_names();
        for g in ["S3", "S4", "A4", "A5", "S5", "L2(7)", "M11", "M12"] {
            assert!(names.iter().any(|n| n == g), "{g} missing");
        }
    }

    #[test]
    fn embedded_subgroups_validate() {
        let c = Corpus::embedded();
        let m11 = c.maximal_subgroups("M11").unwrap();
        let orders: Vec<u64> = m11.iter().map(SubgroupRecord::order).collect();
        assert_eq!(orders, vec![720, 660, 144, 120, 48]);
        assert_eq!(c.maximal_subgroups("M12").unwrap().len(), 11);
        // Non-maximal records are kept apart.
        let s4 = c.subgroups("S4").unwrap();
        assert!(s4.iter().any(|s| s.name == "C3" && !s.maximal));
        assert_eq!(c.maximal_subgroups("S4").unwrap().len(), 3);
    }

    #[test]
    fn other_files() {
        let c = Corpus::embedded();
        assert!(c.bounds().unwrap().contains("M11"));
        assert!(c.restriction_spec("H7").is_ok());
        assert!(c.perm_fixture("A5").unwrap().starts_with("5 2"));
    }
}
