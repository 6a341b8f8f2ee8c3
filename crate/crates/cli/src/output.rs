//! CSV and JSON artifacts with the run configuration echoed in front.

use std::io::Write;

use serde_json::{Map, Value};
use zetalab::{Real, Result};

use crate::config::RunConfig;

pub const GENERATOR: &str = concat!("zetalab ", env!("CARGO_PKG_VERSION"));

/// Full-precision decimal text of a scalar.
pub fn dec<T: Real>(x: &T) -> String {
    x.to_decimal()
}

#[derive(Clone, Debug)]
pub enum Body {
    Csv { columns: Vec<String>, rows: Vec<Vec<String>> },
    Json(Value),
}

/// One output file.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub name: String,
    /// Derived facts printed after the configuration (e.g. ν(μ)).
    pub notes: Vec<(String, String)>,
    pub body: Body,
}

impl Artifact {
    pub fn csv(name: impl Into<String>, columns: &[&str]) -> Self {
        Artifact {
            name: name.into(),
            notes: Vec::new(),
            body: Body::Csv {
                columns: columns.iter().map(|c| c.to_string()).collect(),
                rows: Vec::new(),
            },
        }
    }

    pub fn json(name: impl Into<String>, value: Value) -> Self {
        Artifact {
            name: name.into(),
            notes: Vec::new(),
            body: Body::Json(value),
        }
    }

    pub fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.notes.push((key.to_string(), value.to_string()));
        self
    }

    pub fn row(&mut self, values: Vec<String>) {
        match &mut self.body {
            Body::Csv { columns, rows } => {
                debug_assert_eq!(values.len(), columns.len(), "row width of {}", self.name);
                rows.push(values);
            }
            Body::Json(_) => panic!("row() on the JSON artifact {}", self.name),
        }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match &self.body {
            Body::Csv { columns, rows } => {
                let mut s = format!("# {GENERATOR}\n");
                for (k, v) in cfg.echo() {
                    s += &format!("# {k} = {v}\n");
                }
                for (k, v) in &self.notes {
                    s += &format!("# result {k} = {v}\n");
                }
                s += &columns.join(",");
                s.push('\n');
                for r in rows {
                    s += &r.join(",");
                    s.push('\n');
                }
                s
            }
            Body::Json(data) => {
                let config: Map<String, Value> =
                    cfg.echo().into_iter().map(|(k, v)| (k, Value::String(v))).collect();
                let notes: Map<String, Value> =
                    self.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let mut doc = Map::new();
                doc.insert("generator".into(), Value::String(GENERATOR.into()));
                doc.insert("config".into(), Value::Object(config));
                if !notes.is_empty() {
                    doc.insert("results".into(), Value::Object(notes));
                }
                doc.insert("data".into(), data.clone());
                let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes every artifact into `cfg.out`, or all of them to `stdout` in order.
pub fn emit(artifacts: &[Artifact], cfg: &RunConfig, stdout: &mut impl Write) -> Result<()> {
    match &cfg.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for a in artifacts {
                let path = dir.join(&a.name);
                std::fs::write(&path, a.render(cfg))?;
                writeln!(stdout, "wrote {}", path.display())?;
            }
        }
        None => {
            for a in artifacts {
                stdout.write_all(a.render(cfg).as_bytes())?;
            }
        }
    }
    Ok(())
}
