//! Report assembly. The JSON value is the single source; the text form is rendered
//! from it, so both always carry the same numbers.

use lnd_core::{Error, BRACKET_CONVENTION, COMPOSITION_CONVENTION};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Domain,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Domain => 1,
            Status::Inconclusive => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Domain => "domain-error",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// What a command produced before it is wrapped into a report.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub hypotheses: Vec<String>,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome {
            status: Status::Ok,
            result,
            hypotheses: Vec::new(),
        }
    }

    pub fn with_hypotheses<S: ToString>(mut self, hs: &[S]) -> Self {
        self.hypotheses = hs.iter().map(ToString::to_string).collect();
        self
    }
}

pub struct Bounds {
    pub max_degree: usize,
    pub max_power: usize,
    pub max_iter: usize,
}

pub struct Inputs<'a> {
    pub command: &'a str,
    pub args: &'a [String],
    pub file: &'a str,
    pub contents: &'a [u8],
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn header(inputs: &Inputs, bounds: &Bounds, status: Status) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(inputs.command));
    m.insert("status".into(), json!(status.label()));
    m.insert(
        "inputs".into(),
        json!({
            "file": inputs.file,
            "sha256": hex(&Sha256::digest(inputs.contents)),
            "args": inputs.args,
        }),
    );
    m.insert(
        "bounds".into(),
        json!({
            "max_degree": bounds.max_degree,
            "max_power": bounds.max_power,
            "max_iter": bounds.max_iter,
        }),
    );
    m
}

fn footer(m: &mut Map<String, Value>, hypotheses: &[String]) {
    m.insert("assumed_hypotheses".into(), json!(hypotheses));
    m.insert(
        "conventions".into(),
        json!({
            "bracket": BRACKET_CONVENTION,
            "composition": COMPOSITION_CONVENTION,
        }),
    );
}

pub fn success(inputs: &Inputs, bounds: &Bounds, outcome: Outcome) -> Value {
    let mut m = header(inputs, bounds, outcome.status);
    m.insert("result".into(), outcome.result);
    footer(&mut m, &outcome.hypotheses);
    Value::Object(m)
}

/// Report for a domain or inconclusive failure, naming the failing stage.
pub fn failure(inputs: &Inputs, bounds: &Bounds, status: Status, err: &Error) -> Value {
    let stage = match err {
        Error::BoundExhausted { stage, .. } => stage,
        _ => inputs.command,
    };
    let mut m = header(inputs, bounds, status);
    m.insert(
        "error".into(),
        json!({
            "stage": stage,
            "message": err.to_string(),
            "input": inputs.args,
        }),
    );
    footer(&mut m, &[]);
    Value::Object(m)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(inner) if inner.is_empty() => {
                        out.push_str(&format!("{pad}{k}: {{}}\n"))
                    }
                    Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
                        let parts: Vec<String> = items.iter().filter_map(scalar).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                    }
                    _ => match scalar(v) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            render_into(out, v, indent + 2);
                        }
                    },
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(out, item, indent + 2);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap())),
    }
}

/// Indented `key: value` text for a report.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}
