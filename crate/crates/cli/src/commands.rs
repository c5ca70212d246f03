use std::path::Path;
use std::str::FromStr;

use genconj::chartab::{parse_subgroup, parse_table, CharacterTable, SubgroupRecord};
use genconj::corpus::{read_file, subgroups_from_dir, Corpus};
use genconj::matclass::{
    class_report, classify_from_polys, format_matrix, invariant_factors, parse_bounds, parse_factor_spec,
    parse_matrix, screen, AnyMatrix, CyclicityClass, FiniteField,
    InvariantFactorList,
};
use genconj::permoracle::{delta_brute, delta_star_brute, h_brute, parse_fixture, Fixture};
use genconj::structgen::{
    alpha_bounds, delta, feasible_restrictions, parse_restriction_spec, theta, ClassTuple, Verdict,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::Inputs;
use crate::{Cli, Command, OracleOp};

/// Result JSON and whether it is definite.
pub type Outcome = Result<(Value, bool), CliError>;

struct Ctx<'a> {
    cli: &'a Cli,
    corpus: Corpus,
    inputs: &'a mut Inputs,
}

pub fn run(cli: &Cli, inputs: &mut Inputs) -> Outcome {
    let corpus = match &cli.data_dir {
        Some(d) => Corpus::from_dir(d),
        None => Corpus::embedded(),
    };
    let mut ctx = Ctx { cli, corpus, inputs };
    match &cli.command {
        Command::Validate { path, parent } => ctx.validate(path, parent.as_deref()),
        Command::Delta { table, classes } => ctx.delta(table, classes),
        Command::Theta {
            table,
            classes,
            subgroups,
        } => ctx.theta(table, classes, subgroups.as_deref()),
        Command::Alpha {
            table,
            class,
            subgroups,
        } => ctx.alpha(table, class, subgroups.as_deref()),
        Command::Classify { file, factors, pair } => ctx.classify(file.as_deref(), factors.as_deref(), pair.as_deref()),
        Command::Screen { file } => ctx.screen(file.as_deref()),
        Command::Oracle { op } => ctx.oracle(op),
        Command::Restrict { spec } => ctx.restrict(spec),
    }
}

fn big(x: impl ToString) -> Value {
    Value::Number(serde_json::Number::from_str(&x.to_string()).expect("decimal integer"))
}

fn is_file(s: &str) -> bool {
    Path::new(s).is_file()
}

impl Ctx<'_> {
    fn read_path(&mut self, path: &Path) -> Result<String, CliError> {
        let text = read_file(path).map_err(|e| CliError::Usage(e.to_string()))?;
        self.inputs.add(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn table(&mut self, name: &str) -> Result<CharacterTable, CliError> {
        let t = if is_file(name) {
            let text = self.read_path(Path::new(name))?;
            parse_table(&text)?
        } else {
            self.corpus.table(name)?
        };
        self.inputs.add("table", t.to_json_string().as_bytes());
        Ok(t)
    }

    fn maximal(&mut self, table: &CharacterTable, dir: Option<&Path>) -> Result<Vec<SubgroupRecord>, CliError> {
        let all = match dir {
            Some(d) => subgroups_from_dir(d, table)?,
            None => self.corpus.subgroups(table.name()).map_err(|e| match e {
                genconj::corpus::CorpusError::NotFound { .. } => CliError::Usage(format!(
                    "no subgroup records for {} in the corpus; pass --subgroups",
                    table.name()
                )),
                other => other.into(),
            })?,
        };
        let subs: Vec<SubgroupRecord> = all.into_iter().filter(|s| s.maximal).collect();
        for s in &subs {
            self.inputs.add("subgroup", s.name.as_bytes());
            self.inputs.add("subgroup-table", s.table.to_json_string().as_bytes());
            let fusion: Vec<u8> = s.fusion.iter().flat_map(|i| (*i as u64).to_le_bytes()).collect();
            self.inputs.add("fusion", &fusion);
        }
        Ok(subs)
    }

    fn fixture(&mut self, name: &str) -> Result<Fixture, CliError> {
        let text = if is_file(name) {
            self.read_path(Path::new(name))?
        } else {
            let t = self.corpus.perm_fixture(name)?;
            self.inputs.add("fixture", t.as_bytes());
            t
        };
        let f = parse_fixture(&text)?;
        f.check_labels()?;
        Ok(f)
    }

    fn validate(&mut self, path: &Path, parent: Option<&str>) -> Outcome {
        let text = self.read_path(path)?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Data(format!("syntax error: {e}")))?;
            if v.get("fusion").is_some() {
                let parent = parent.ok_or_else(|| {
                    CliError::Usage("a subgroup record needs --parent <table>".into())
                })?;
                let p = self.table(parent)?;
                let corpus = &self.corpus;
                let dir = path.parent().map(Path::to_path_buf);
                let resolve = |r: &str| {
                    let local = dir.as_ref().map(|d| d.join(r));
                    match local.filter(|l| l.is_file()) {
                        Some(l) => read_file(&l)
                            .map_err(|e| genconj::chartab::ChartabError::Reference {
                                reference: r.to_string(),
                                message: e.to_string(),
                            })
                            .and_then(|t| parse_table(&t)),
                        None => corpus.table(r).map_err(|e| genconj::chartab::ChartabError::Reference {
                            reference: r.to_string(),
                            message: e.to_string(),
                        }),
                    }
                };
                let rec = parse_subgroup(&text, &p, &resolve)?;
                return Ok((
                    json!({"kind": "subgroup", "name": rec.name, "parent": p.name(), "order": rec.order(), "valid": true}),
                    true,
                ));
            }
            let t = parse_table(&text)?;
            return Ok((
                json!({"kind": "table", "name": t.name(), "order": t.order(), "classes": t.num_classes(), "valid": true}),
                true,
            ));
        }
        if trimmed.is_empty() {
            return Err(CliError::Data("syntax error: empty file".into()));
        }
        let f = parse_fixture(&text)?;
        f.check_labels()?;
        let classes = f.group.classes().map(<[_]>::len).ok();
        Ok((
            json!({"kind": "fixture", "order": f.group.order(), "classes": classes, "subgroups": f.subgroups.iter().map(|s| s.name.clone()).collect::<Vec<_>>(), "valid": true}),
            true,
        ))
    }

    fn delta(&mut self, table: &str, classes: &[String]) -> Outcome {
        let t = self.table(table)?;
        let tuple = ClassTuple::from_names(&t, classes)?;
        let d = delta(&tuple)?;
        Ok((json!({"group": t.name(), "tuple": tuple.names(), "delta": big(d)}), true))
    }

    fn theta(&mut self, table: &str, classes: &[String], dir: Option<&Path>) -> Outcome {
        let t = self.table(table)?;
        let subs = self.maximal(&t, dir)?;
        let tuple = ClassTuple::from_names(&t, classes)?;
        let v = theta(&tuple, &subs)?;
        let definite = v.verdict != Verdict::Undecided;
        Ok((serde_json::to_value(&v).expect("verdict serializes"), definite))
    }

    fn alpha(&mut self, table: &str, class: &str, dir: Option<&Path>) -> Outcome {
        let t = self.table(table)?;
        let subs = self.maximal(&t, dir)?;
        let c = t.resolve_class(class)?;
        let b = alpha_bounds(&t, &subs, c, self.cli.max_k)?;
        let exact = b.is_exact();
        Ok((serde_json::to_value(&b).expect("bound serializes"), exact))
    }

    fn classify(&mut self, file: Option<&Path>, factors: Option<&str>, pair: Option<&str>) -> Outcome {
        if let Some(spec) = factors {
            let (field, polys) = parse_factor_spec(spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let inv = InvariantFactorList::from_factors(polys).map_err(|e| CliError::Usage(e.to_string()))?;
            let a = inv.block_companion(&field);
            let rep = class_report(&a);
            if invariant_factors(&a) != inv {
                return Err(CliError::Data("block companion matrix has different invariant factors".into()));
            }
            let mut v = serde_json::to_value(&rep).expect("report serializes");
            v["matrix"] = Value::String(format_matrix(&a));
            return Ok((v, true));
        }
        if let Some(spec) = pair {
            let (field, polys) = parse_factor_spec(spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let [m, c] = &polys[..] else {
                return Err(CliError::Usage("--pair takes exactly two polynomials `p:m,c`".into()));
            };
            let class = classify_from_polys(m, c).map_err(|e| CliError::Usage(e.to_string()))?;
            let (name, alpha, h) = match &class {
                Some(CyclicityClass::AlmostCyclic { alpha, h }) => ("ALMOST_CYCLIC", Some(field.format(alpha)), Some(*h)),
                Some(k) => (k.name(), None, None),
                None => ("UNDETERMINED", None, None),
            };
            return Ok((
                json!({"field": field.descriptor(), "min_poly": m.to_string(), "char_poly": c.to_string(), "class": name, "alpha": alpha, "h": h}),
                class.is_some(),
            ));
        }
        let path = file.expect("clap requires a file");
        let text = self.read_path(path)?;
        let rep = match parse_matrix(&text)? {
            AnyMatrix::Prime(a) => class_report(&a),
            AnyMatrix::Ext(a) => class_report(&a),
        };
        Ok((serde_json::to_value(&rep).expect("report serializes"), true))
    }

    fn screen(&mut self, file: Option<&Path>) -> Outcome {
        let text = match file {
            Some(p) => self.read_path(p)?,
            None => {
                let t = self.corpus.bounds()?;
                self.inputs.add("bounds", t.as_bytes());
                t
            }
        };
        let rows = parse_bounds(&text)?;
        let res = screen(&rows)?;
        let survivors = res.iter().filter(|r| r.outcome == genconj::matclass::Outcome::Survives).count();
        Ok((
            json!({"rows": res.len(), "survivors": survivors, "results": res}),
            true,
        ))
    }

    fn oracle_tuple(&self, f: &Fixture, classes: &[String]) -> Result<Vec<usize>, CliError> {
        classes.iter().map(|c| f.class_index(c).map_err(CliError::from)).collect()
    }

    fn oracle(&mut self, op: &OracleOp) -> Outcome {
        let budget = self.cli.budget;
        match op {
            OracleOp::Classes { fixture } => {
                let f = self.fixture(fixture)?;
                let classes = f.group.classes()?;
                let rows: Vec<Value> = classes
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        Ok(json!({
                            "label": c.label,
                            "table_label": f.table_label(i)?,
                            "order": c.element_order,
                            "size": c.size,
                            "centralizer": c.centralizer_order,
                            "representative": c.representative.to_string(),
                        }))
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok((json!({"order": f.group.order(), "degree": f.group.degree(), "classes": rows}), true))
            }
            OracleOp::Delta { fixture, classes } => {
                let f = self.fixture(fixture)?;
                let idx = self.oracle_tuple(&f, classes)?;
                let d = delta_brute(&f.group, &idx, budget)?;
                Ok((json!({"tuple": classes, "delta": d}), true))
            }
            OracleOp::DeltaStar { fixture, classes } => {
                let f = self.fixture(fixture)?;
                let idx = self.oracle_tuple(&f, classes)?;
                let d = delta_star_brute(&f.group, &idx, budget)?;
                Ok((json!({"tuple": classes, "delta_star": d}), true))
            }
            OracleOp::H {
                fixture,
                subgroup,
                class,
            } => {
                let f = self.fixture(fixture)?;
                let s = f.subgroup(subgroup)?;
                let c = f.class_index(class)?;
                let x = &f.group.classes()?[c].representative;
                let h = h_brute(&f.group, &s.generators, x)?;
                Ok((json!({"subgroup": subgroup, "class": class, "representative": x.to_string(), "h": h}), true))
            }
        }
    }

    fn restrict(&mut self, spec: &str) -> Outcome {
        let text = if is_file(spec) {
            self.read_path(Path::new(spec))?
        } else {
            let t = self.corpus.restriction_spec(spec)?;
            self.inputs.add("restriction", t.as_bytes());
            t
        };
        let s = parse_restriction_spec(&text).map_err(|e| CliError::Data(e.to_string()))?;
        let sols = feasible_restrictions(&s).map_err(|e| CliError::Data(e.to_string()))?;
        Ok((
            json!({"name": s.name, "target_dim": s.target_dim, "survivors": sols.len(), "decompositions": sols}),
            true,
        ))
    }
}
