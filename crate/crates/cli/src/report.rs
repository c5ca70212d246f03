use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Collects everything a command read, for the inputs digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(args: &[String]) -> Self {
        let mut i = Inputs::default();
        for a in args {
            i.add("arg", a.as_bytes());
        }
        i
    }

    pub fn add(&mut self, label: &str, bytes: &[u8]) {
        self.hasher.update((label.len() as u64).to_le_bytes());
        self.hasher.update(label.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        let d = self.hasher.finalize();
        d.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The command ran but reached no definite verdict or bound.
    Indefinite,
    Error,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub status: Status,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable rendering: nested keys, arrays of flat records as tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        out.push_str(&format!("status:  {}\n", serde_json::to_value(self.status).unwrap().as_str().unwrap()));
        if let Some(e) = &self.error {
            out.push_str(&format!("error:   {} ({})\n", e.message, e.kind));
        }
        if !self.result.is_null() {
            render(&self.result, 0, &mut out);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn flat_records(a: &[Value]) -> Option<Vec<String>> {
    let first = a.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    for v in a {
        let o = v.as_object()?;
        if o.len() != keys.len() || o.iter().any(|(k, x)| !keys.contains(k) || scalar(x).is_none()) {
            return None;
        }
    }
    Some(keys)
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if let Some(s) = scalar(x) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 2, out);
                }
            }
        }
        Value::Array(a) => {
            if let Some(keys) = flat_records(a) {
                let rows: Vec<Vec<String>> = a
                    .iter()
                    .map(|r| keys.iter().map(|k| scalar(&r[k]).unwrap()).collect())
                    .collect();
                let widths: Vec<usize> = keys
                    .iter()
                    .enumerate()
                    .map(|(i, k)| rows.iter().map(|r| r[i].len()).chain([k.len()]).max().unwrap())
                    .collect();
                let line = |cells: &[String]| {
                    let s: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    format!("{pad}{}\n", s.join("  ").trim_end())
                };
                out.push_str(&line(&keys));
                for r in &rows {
                    out.push_str(&line(r));
                }
            } else {
                for x in a {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            render(x, indent + 2, out);
                        }
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = Inputs::new(&["delta".into(), "S3".into()]).digest();
        let b = Inputs::new(&["delta".into(), "S3".into()]).digest();
        let c = Inputs::new(&["deltaS3".into()]).digest();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn text_tables() {
        let r = RunReport {
            command: vec!["oracle".into(), "classes".into()],
            inputs_digest: String::new(),
            status: Status::Ok,
            result: json!({"classes": [{"label": "1a", "size": 1}, {"label": "2a", "size": 3}]}),
            error: None,
        };
        let t = r.to_text();
        assert!(t.contains("  label  size\n  1a     1\n  2a     3\n"), "{t}");
    }
}
