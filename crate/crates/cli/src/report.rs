use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "weilcheck/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.into(),
            inputs: Map::new(),
            result: Value::Null,
            checks: Vec::new(),
            seed,
            runtime_ms: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(mut self, value: impl Into<Value>) -> Self {
        self.result = value.into();
        self
    }

    pub fn check(mut self, name: &str, pass: bool, detail: impl Into<String>) -> Self {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_reports<W: Write>(out: &mut W, reports: &[Report], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r).map_err(std::io::Error::other)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["command", "inputs", "result", "check", "pass", "detail", "seed", "runtime_ms"])?;
            for r in reports {
                let inputs = Value::Object(r.inputs.clone()).to_string();
                let result = compact(&r.result);
                let seed = r.seed.to_string();
                let ms = r.runtime_ms.to_string();
                if r.checks.is_empty() {
                    w.write_record([r.command.as_str(), &inputs, &result, "", "", "", &seed, &ms])?;
                }
                for c in &r.checks {
                    let pass = c.pass.to_string();
                    w.write_record([r.command.as_str(), &inputs, &result, &c.name, &pass, &c.detail, &seed, &ms])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
                writeln!(out, "{} {}", r.command, inputs.join(" "))?;
                writeln!(out, "  result: {}", compact(&r.result))?;
                for c in &r.checks {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "  [{tag}] {}: {}", c.name, c.detail)?;
                    if let Some(statement) = crate::ledger::describe(&c.name) {
                        writeln!(out, "         {statement}")?;
                    }
                }
                writeln!(out, "  seed {} | {} ms", r.seed, r.runtime_ms)?;
            }
        }
    }
    Ok(())
}
