use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use twistlab::ComplexValue;

/// A failure that ends the command with exit code 2.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.to_string(), message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("UsageError", message)
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({ "command": command, "error": { "kind": self.kind, "message": self.message } })
    }
}

/// The variant name of a library error, taken from its Debug form.
fn variant_name(debug: &str) -> String {
    debug.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or("Error").to_string()
}

macro_rules! lib_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError { kind: variant_name(&format!("{e:?}")), message: e.to_string() }
            }
        }
    )*};
}

lib_error!(
    twistlab::hyp2f1::HypError,
    twistlab::dirichlet::DirichletError,
    twistlab::lfun::LfunError,
    twistlab::artin::ArtinError,
    twistlab::converse::ConverseError
);

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Replaces the default tolerance of every overridable check.
    tol_override: Option<f64>,
}

impl Report {
    pub fn new(command: &str, tol_override: Option<f64>) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            tol_override,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.to_string(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    pub fn check(&mut self, name: impl Into<String>, residual: f64, default_tol: f64) {
        let tolerance = self.tol_override.unwrap_or(default_tol);
        self.checks.push(Check { name: name.into(), residual, tolerance });
    }

    /// A check whose tolerance is not affected by --tol, used for negative
    /// controls reported as an inverse ratio.
    pub fn check_fixed(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.checks.push(Check { name: name.into(), residual, tolerance });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "residual": c.residual, "tolerance": c.tolerance, "pass": c.pass() }))
            .collect();
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": Value::Object(self.results.clone()),
            "checks": checks,
        })
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn value_json(v: ComplexValue) -> Value {
    json!({ "re": v.re, "im": v.im, "err": v.err })
}

/// Pretty JSON with sorted keys and every float written with 17 significant
/// digits, so identical inputs give byte-identical output.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64 number");
                let _ = write!(out, "{x:.16e}");
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], depth + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits_and_keys_are_sorted() {
        let s = render(&json!({ "b": 0.1, "a": [1, 2.5] }));
        assert_eq!(s, "{\n  \"a\": [\n    1,\n    2.5000000000000000e0\n  ],\n  \"b\": 1.0000000000000001e-1\n}\n");
    }

    #[test]
    fn error_kind_is_the_variant_name() {
        let e: CliError = twistlab::lfun::LfunError::Invalid("x".into()).into();
        assert_eq!(e.kind, "Invalid");
    }
}
