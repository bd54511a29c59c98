//! Report assembly and emission.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{self, failed_checks, Inputs};
use crate::scenario::{Analysis, Scenario};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub analysis: Analysis,
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub scenario_sha256: String,
    pub results: Vec<(Analysis, Value)>,
    pub failures: Vec<Failure>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the requested analyses (or `only`, when given) in canonical order.
pub fn run_scenario(scenario: &Scenario, bytes: &[u8], only: Option<&[Analysis]>) -> Report {
    let requested: BTreeSet<Analysis> = only.unwrap_or(&scenario.analyses).iter().copied().collect();
    let mut report = Report {
        scenario: scenario.name.clone(),
        scenario_sha256: sha256_hex(bytes),
        results: Vec::new(),
        failures: Vec::new(),
    };
    if requested.is_empty() {
        return report;
    }
    let inputs = Inputs::build(scenario);
    for a in requested {
        match analysis::run(a, &inputs) {
            Ok(v) => {
                let failed = failed_checks(&v);
                if !failed.is_empty() {
                    report.failures.push(Failure {
                        analysis: a,
                        code: "CheckFailed".into(),
                        message: format!("failed checks: {}", failed.join(", ")),
                    });
                }
                report.results.push((a, v));
            }
            Err(e) => report.failures.push(Failure { analysis: a, code: e.code().into(), message: e.to_string() }),
        }
    }
    report
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.failures.is_empty())
    }

    pub fn result(&self, a: Analysis) -> Option<&Value> {
        self.results.iter().find(|(b, _)| *b == a).map(|(_, v)| v)
    }

    pub fn to_value(&self) -> Value {
        let results: Map<String, Value> = self.results.iter().map(|(a, v)| (a.name().to_string(), v.clone())).collect();
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "analysis": f.analysis.name(), "code": f.code, "message": f.message }))
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "provenance": {
                "tool": "rigidkit",
                "version": env!("CARGO_PKG_VERSION"),
                "scenario": self.scenario,
                "scenario_sha256": self.scenario_sha256,
            },
            "results": results,
            "failures": failures,
        })
    }

    /// Indented JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write_value(&mut s, &self.to_value(), 0);
        s.push('\n');
        s
    }

    /// One section per analysis: scalar fields inline, nested ones as compact JSON.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {}", self.scenario);
        let _ = writeln!(s, "sha256: {}", self.scenario_sha256);
        for (a, v) in &self.results {
            let _ = writeln!(s, "\n[{a}]");
            if let Value::Object(m) = v {
                for (k, x) in m {
                    let _ = writeln!(s, "  {k}: {}", summarize(x));
                }
            }
        }
        let _ = writeln!(s, "\n[failures]");
        if self.failures.is_empty() {
            let _ = writeln!(s, "  none");
        }
        for f in &self.failures {
            let _ = writeln!(s, "  {} {}: {}", f.analysis, f.code, f.message);
        }
        s
    }
}

/// Arrays without objects inside are written on one line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(xs) => xs.iter().all(is_flat),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(xs) if !xs.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn summarize(v: &Value) -> String {
    match v {
        Value::Array(xs) if xs.len() > 8 && xs.iter().all(|x| x.is_object()) => format!("{} entries", xs.len()),
        _ => v.to_string(),
    }
}
