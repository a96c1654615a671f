use serde::Serialize;
use serde_json::Value;

use crate::ext::ExtReal;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: ExtReal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub property: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub seed: u64,
    pub results: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteOutcome>,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Report {
            command,
            seed,
            results: vec![],
            witnesses: vec![],
            suites: vec![],
            elapsed_ms: 0,
        }
    }

    pub fn value(&mut self, name: impl Into<String>, value: ExtReal) {
        self.results.push(NamedValue {
            name: name.into(),
            value,
        });
    }

    pub fn flag(&mut self, name: impl Into<String>, b: bool) {
        self.value(name, ExtReal::new(if b { 1.0 } else { 0.0 }));
    }

    pub fn witness(&mut self, name: impl Into<String>, value: impl Serialize) {
        self.witnesses.push(Witness {
            name: name.into(),
            value: serde_json::to_value(value).expect("witnesses serialize"),
        });
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn get(&self, name: &str) -> Option<ExtReal> {
        self.results.iter().find(|r| r.name == name).map(|r| r.value)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("section,name,value\n");
                s += &format!("meta,seed,{}\n", self.seed);
                for r in &self.results {
                    s += &format!("result,{},{}\n", csv_field(&r.name), r.value);
                }
                for w in &self.witnesses {
                    s += &format!("witness,{},{}\n", csv_field(&w.name), csv_field(&w.value.to_string()));
                }
                for o in &self.suites {
                    s += &format!(
                        "suite,{},{}\n",
                        csv_field(&format!("{}/{}", o.suite, o.property)),
                        if o.passed { "pass" } else { "fail" }
                    );
                }
                s += &format!("meta,elapsed_ms,{}\n", self.elapsed_ms);
                s
            }
            Format::Text => {
                let mut s = format!("seed: {}\n", self.seed);
                for r in &self.results {
                    s += &format!("{}: {}\n", r.name, r.value);
                }
                for w in &self.witnesses {
                    s += &format!("{} (witness): {}\n", w.name, w.value);
                }
                for o in &self.suites {
                    s += &format!(
                        "[{}] {}/{} ({} cases)\n",
                        if o.passed { "pass" } else { "FAIL" },
                        o.suite,
                        o.property,
                        o.cases
                    );
                    if let Some(c) = &o.counterexample {
                        s += &format!("  counterexample: {c}\n");
                    }
                }
                s += &format!("elapsed_ms: {}\n", self.elapsed_ms);
                s
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
