//! Machine-readable command reports.
//!
//! Inputs are stored as the canonical flag values of the command that
//! produced the report, so [`Report::replay_args`] reconstructs an argument
//! list that reproduces it byte for byte. Object keys serialize in sorted
//! order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 1729;
pub const SEED_ENV: &str = "VTWIST_SEED";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Verdict,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Verdict => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub details: Value,
    pub version: String,
    pub seed: u64,
}

impl Report {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            status: Status::Verdict,
            details: Value::Null,
            version: TOOL_VERSION.to_string(),
            seed,
        }
    }

    pub fn with(mut self, status: Status, details: Value) -> Self {
        self.status = status;
        self.details = details;
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// One-line JSON, used by batch mode.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(src: &str) -> serde_json::Result<Self> {
        serde_json::from_str(src)
    }

    /// Command words followed by `--key value` pairs and `--seed`.
    pub fn replay_args(&self) -> Vec<String> {
        let mut args: Vec<String> = self.command.split(' ').map(String::from).collect();
        for (k, v) in &self.inputs {
            args.push(format!("--{k}"));
            args.push(v.clone());
        }
        args.push("--seed".into());
        args.push(self.seed.to_string());
        args
    }

    /// Plain text: a header line, then one line per detail field.
    pub fn to_text(&self) -> String {
        let status = serde_json::to_value(self.status).expect("status serializes");
        let mut out = format!("{}: {}\n", self.command, status.as_str().unwrap_or("?"));
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  input {k} = {v}");
        }
        match &self.details {
            Value::Object(map) => {
                for (k, v) in map {
                    let _ = writeln!(out, "  {k}: {}", text_value(v));
                }
            }
            Value::Null => {}
            other => {
                let _ = writeln!(out, "  {}", text_value(other));
            }
        }
        let _ = writeln!(out, "  seed {}  version {}", self.seed, self.version);
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The seed from the environment, or the default.
pub fn env_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let inputs = [("h".to_string(), "t - 3/2".to_string())].into_iter().collect();
        Report::new("factor construct", inputs, 7).with(Status::Verdict, json!({"z": 1, "a": [2, 3]}))
    }

    #[test]
    fn json_round_trip_and_sorted_keys() {
        let r = sample();
        let s = r.to_json();
        assert_eq!(Report::from_json(&s).unwrap(), r);
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.contains("\"status\": \"verdict\""));
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn replay_args_shape() {
        assert_eq!(
            sample().replay_args(),
            ["factor", "construct", "--h", "t - 3/2", "--seed", "7"]
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Pass.exit_code(), 0);
        assert_eq!(Status::Verdict.exit_code(), 0);
        assert_eq!(Status::Fail.exit_code(), 1);
        assert_eq!(Status::Error.exit_code(), 2);
    }

    #[test]
    fn text_lists_details() {
        let t = sample().to_text();
        assert!(t.starts_with("factor construct: verdict\n"));
        assert!(t.contains("  a: [2,3]\n"));
    }
}
