use super::group::PermGroup;
use super::perm::Perm;
use super::PermError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSubgroup {
    pub name: String,
    pub generators: Vec<Perm>,
}

/// A parsed permutation fixture: the group, the oracle-to-table label map and
/// named subgroups.
#[derive(Debug)]
pub struct Fixture {
    pub group: PermGroup,
    /// (oracle label, table class name) pairs.
    pub labels: Vec<(String, String)>,
    pub subgroups: Vec<FixtureSubgroup>,
}

fn perr(line: usize, message: impl Into<String>) -> PermError {
    PermError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_perm(line: usize, text: &str, degree: usize) -> Result<Perm, PermError> {
    let img: Vec<u32> = text
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(line, format!("`{t}` is not a point"))))
        .collect::<Result<_, _>>()?;
    if img.len() != degree {
        return Err(perr(line, format!("expected {degree} images, found {}", img.len())));
    }
    Perm::from_images(img).map_err(|e| perr(line, e.to_string()))
}

/// Format: `degree k`, k image-array lines, then optional `labels` (one
/// `oracle table` pair per line) and `subgroup NAME m` sections, each followed
/// by m generator lines.
pub fn parse_fixture(text: &str) -> Result<Fixture, PermError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty fixture"))?;
    let h: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(hl, format!("`{t}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    let [degree, k] = h[..] else {
        return Err(perr(hl, "header must be `degree k`"));
    };
    let mut gens = Vec::with_capacity(k);
    for _ in 0..k {
        let (l, t) = lines.next().ok_or_else(|| perr(hl, format!("expected {k} generators")))?;
        gens.push(parse_perm(l, t, degree)?);
    }
    let mut labels = Vec::new();
    let mut subgroups = Vec::new();
    while let Some((l, t)) = lines.next() {
        if t == "labels" {
            while let Some(&(l2, t2)) = lines.peek() {
                if t2.starts_with("subgroup ") || t2 == "labels" {
                    break;
                }
                lines.next();
                let f: Vec<&str> = t2.split_whitespace().collect();
                let [a, b] = f[..] else {
                    return Err(perr(l2, "label lines are `oracle_label table_label`"));
                };
                labels.push((a.to_string(), b.to_string()));
            }
        } else if let Some(rest) = t.strip_prefix("subgroup ") {
            let (name, m) = rest
                .trim()
                .rsplit_once(char::is_whitespace)
                .ok_or_else(|| perr(l, "subgroup lines are `subgroup NAME m`"))?;
            let m: usize = m.parse().map_err(|_| perr(l, format!("`{m}` is not a count")))?;
            let mut sg = Vec::with_capacity(m);
            for _ in 0..m {
                let (l2, t2) = lines.next().ok_or_else(|| perr(l, format!("subgroup {name} needs {m} generators")))?;
                sg.push(parse_perm(l2, t2, degree)?);
            }
            subgroups.push(FixtureSubgroup {
                name: name.trim().to_string(),
                generators: sg,
            });
        } else {
            return Err(perr(l, format!("unexpected line `{t}`")));
        }
    }
    let group = PermGroup::new(degree, gens)?;
    for s in &subgroups {
        if let Some(g) = s.generators.iter().find(|g| !group.contains(g)) {
            return Err(PermError::NotSubgroup(format!("subgroup {}: {g} is not in the group", s.name)));
        }
    }
    Ok(Fixture {
        group,
        labels,
        subgroups,
    })
}

impl Fixture {
    /// Oracle class index for a character-table class name.
    pub fn class_index(&self, table_label: &str) -> Result<usize, PermError> {
        let oracle = if self.labels.is_empty() {
            table_label
        } else {
            self.labels
                .iter()
                .find(|(_, t)| t == table_label)
                .map(|(o, _)| o.as_str())
                .ok_or_else(|| PermError::UnknownClass(table_label.to_string()))?
        };
        self.group.class_by_label(oracle)
    }

    /// Character-table class name for an oracle class index.
    pub fn table_label(&self, class: usize) -> Result<String, PermError> {
        let oracle = &self
            .group
            .classes()?
            .get(class)
            .ok_or_else(|| PermError::UnknownClass(format!("#{class}")))?
            .label;
        if self.labels.is_empty() {
            return Ok(oracle.clone());
        }
        self.labels
            .iter()
            .find(|(o, _)| o == oracle)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| PermError::UnknownClass(oracle.clone()))
    }

    pub fn subgroup(&self, name: &str) -> Result<&FixtureSubgroup, PermError> {
        self.subgroups
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| PermError::UnknownSubgroup(name.to_string()))
    }

    /// Checks that every oracle class has a table label and vice versa.
    pub fn check_labels(&self) -> Result<(), PermError> {
        if self.labels.is_empty() {
            return Ok(());
        }
        let classes = self.group.classes()?;
        if classes.len() != self.labels.len() {
            return Err(PermError::Incomplete(format!(
                "{} classes but {} label pairs",
                classes.len(),
                self.labels.len()
            )));
        }
        for c in classes {
            if !self.labels.iter().any(|(o, _)| *o == c.label) {
                return Err(PermError::UnknownClass(c.label.clone()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections() {
        let f = parse_fixture("3 2\n1 2 0\n1 0 2\nlabels\n1a 1a\n2a 2A\n3a 3A\nsubgroup C3 1\n1 2 0\n").unwrap();
        assert_eq!(f.group.order(), 6);
        assert_eq!(f.class_index("2A").unwrap(), 1);
        assert_eq!(f.table_label(2).unwrap(), "3A");
        assert_eq!(f.subgroup("C3").unwrap().generators.len(), 1);
        f.check_labels().unwrap();
    }

    #[test]
    fn reports_lines() {
        assert!(matches!(parse_fixture("3 2\n1 2 0\n"), Err(PermError::Parse { .. })));
        assert!(matches!(parse_fixture("3 1\n1 1 0\n"), Err(PermError::Parse { line: 2, .. })));
        assert!(matches!(parse_fixture("3 1\n1 2 0\nbogus\n"), Err(PermError::Parse { line: 3, .. })));
        assert!(matches!(
            parse_fixture("3 1\n1 2 0\nsubgroup X 1\n1 0 2\n"),
            Err(PermError::NotSubgroup(_))
        ));
    }
}
