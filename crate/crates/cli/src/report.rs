use nslen_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Global;

pub const TOOL: &str = "nslen";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;

/// `{"num": "...", "den": "..."}` in lowest terms.
pub fn rat(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Value {
    rat(&BigRational::new(a.into(), b.into()))
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::InvalidArgument(format!("expected a rational like 1/2, got {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Syntax { .. }
            | Error::ZeroExponent { .. }
            | Error::InvalidArgument(_)
            | Error::IndexOutOfRange(_)
            | Error::NotPrime(_) => (EXIT_USAGE, "usage"),
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => (EXIT_LIMIT, "budget"),
            Error::Unsupported(_) => (EXIT_LIMIT, "unsupported"),
            Error::Precondition(_) | Error::NotSemisimple(_) => (EXIT_LIMIT, "precondition"),
            _ => (EXIT_LIMIT, "internal"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// Result of one command before it is wrapped in the envelope.
pub struct Report {
    pub input: Value,
    pub result: Value,
    pub verdict: String,
}

fn config(g: &Global) -> Value {
    json!({
        "threads": g.threads,
        "seed": g.seed,
        "max_tuples": g.max_tuples,
        "max_order": g.max_order,
        "json": g.json,
    })
}

pub fn envelope(command: &str, g: &Global, report: &Report) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config": config(g),
        "input": report.input,
        "result": report.result,
        "verdict": report.verdict,
    })
}

pub fn error_envelope(command: &str, g: &Global, f: &Failure) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config": config(g),
        "error": { "kind": f.kind, "message": f.message, "exit_code": f.code },
    })
}

/// Top-level scalars as `key: value`, nested values as compact JSON.
pub fn render_text(command: &str, report: &Report) -> String {
    let mut out = format!("{command}: {}\n", report.verdict);
    if let Value::Object(m) = &report.result {
        render_map(&mut out, m);
    }
    out
}

fn render_map(out: &mut String, m: &Map<String, Value>) {
    for (k, v) in m {
        let shown = match flatten_rationals(v) {
            Value::String(s) => s,
            other => other.to_string(),
        };
        out.push_str(&format!("  {k}: {shown}\n"));
    }
}

/// Replaces every `{num, den}` object with the string `num/den`.
fn flatten_rationals(v: &Value) -> Value {
    match v {
        Value::Object(o) if o.len() == 2 && o.contains_key("num") && o.contains_key("den") => {
            Value::String(format!(
                "{}/{}",
                o["num"].as_str().unwrap_or("?"),
                o["den"].as_str().unwrap_or("?")
            ))
        }
        Value::Object(o) => Value::Object(
            o.iter()
                .map(|(k, v)| (k.clone(), flatten_rationals(v)))
                .collect(),
        ),
        Value::Array(a) => Value::Array(a.iter().map(flatten_rationals).collect()),
        other => other.clone(),
    }
}
