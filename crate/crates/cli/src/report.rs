//! Report envelope and deterministic value rendering.
//!
//! Every run emits one envelope: tool/version/command, the canonical
//! config, a status, an optional machine-readable error record, and the
//! command-specific result. Float values are rendered as fixed
//! 12-significant-digit decimal strings so golden files are portable;
//! headline values carry the raw bit pattern alongside.

use serde::Serialize;
use serde_json::{json, Value};

/// 12-significant-digit scientific rendering (deterministic across
/// platforms for identical bits).
pub fn dec12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Raw IEEE-754 bit pattern of the value.
pub fn hex_bits(x: f64) -> String {
    format!("0x{:016X}", x.to_bits())
}

/// A headline value: decimal rendering plus exact bits.
#[derive(Debug, Clone, Serialize)]
pub struct Val {
    pub dec: String,
    pub hex: String,
}

impl Val {
    pub fn new(x: f64) -> Self {
        Self {
            dec: dec12(x),
            hex: hex_bits(x),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    pub exit_code: i32,
}

impl ErrorRecord {
    pub fn from_error(e: &serlab::Error) -> Self {
        let kind = match e {
            serlab::Error::InvalidSpec(_) => "invalid-spec",
            serlab::Error::Domain(_) => "domain",
            serlab::Error::Precondition(_) => "precondition",
            serlab::Error::MonotonicityViolated { .. } => "monotonicity-violated",
            serlab::Error::BoundViolated { .. } => "bound-violated",
            serlab::Error::NotApplicable(_) => "not-applicable",
            serlab::Error::InvalidWeight(_) => "invalid-weight",
            serlab::Error::GuardExceeded(_) => "resource-guard",
            serlab::Error::InputTooLarge(_) => "input-too-large",
            serlab::Error::LimitExceeded(_) => "limit-exceeded",
            serlab::Error::TableTooSmall(_) => "table-too-small",
            serlab::Error::Parse { .. } => "parse",
        };
        let offset = match e {
            serlab::Error::Parse { offset, .. } => Some(*offset),
            _ => None,
        };
        Self {
            kind: kind.into(),
            message: e.to_string(),
            offset,
            exit_code: e.exit_code(),
        }
    }
}

/// The envelope around every report artifact.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub status: String,
    pub error: Option<ErrorRecord>,
    pub result: Option<Value>,
}

impl Envelope {
    pub fn ok(command: &str, config: Value, result: Value) -> Self {
        Self {
            tool: "serlab",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config,
            status: "ok".into(),
            error: None,
            result: Some(result),
        }
    }

    pub fn failed(command: &str, config: Value, e: &serlab::Error) -> Self {
        let record = ErrorRecord::from_error(e);
        let status = match record.kind.as_str() {
            "parse" => "parse-error",
            "resource-guard" | "input-too-large" | "limit-exceeded" => "resource-guard",
            _ => "precondition-violated",
        };
        Self {
            tool: "serlab",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config,
            status: status.into(),
            error: Some(record),
            result: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Structural validation mirroring `schema/report.schema.json`; used by
/// the test suite to keep artifacts and schema in agreement.
pub fn validate_envelope(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("envelope must be an object")?;
    for key in ["tool", "version", "command", "config", "status", "error", "result"] {
        if !obj.contains_key(key) {
            return Err(format!("missing field '{key}'"));
        }
    }
    if obj["tool"] != json!("serlab") {
        return Err("tool must be 'serlab'".into());
    }
    let status = obj["status"].as_str().ok_or("status must be a string")?;
    if !["ok", "precondition-violated", "resource-guard", "parse-error"].contains(&status) {
        return Err(format!("unknown status '{status}'"));
    }
    match status {
        "ok" => {
            if !obj["error"].is_null() {
                return Err("ok status with non-null error".into());
            }
            if obj["result"].is_null() {
                return Err("ok status with null result".into());
            }
        }
        _ => {
            let err = obj["error"]
                .as_object()
                .ok_or("failed status needs an error object")?;
            for key in ["kind", "message", "exit_code"] {
                if !err.contains_key(key) {
                    return Err(format!("error record missing '{key}'"));
                }
            }
        }
    }
    if !obj["command"].is_string() {
        return Err("command must be a string".into());
    }
    if !obj["config"].is_object() {
        return Err("config must be an object".into());
    }
    Ok(())
}
