//! Shared helpers for the integration tests: locating the corpus, running
//! the omega2 binary, and validating JSON against the shipped report schema.
//!
//! Each integration test target compiles its own copy, so helpers used by
//! only one target are dead code in the others.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("repo root")
}

pub fn corpus_dir() -> PathBuf {
    repo_root().join("corpus")
}

pub fn case_path(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

/// Runs the omega2 binary with the given arguments and returns the raw output.
pub fn omega2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega2"))
        .args(args)
        .output()
        .expect("omega2 binary runs")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited with a code")
}

/// Replaces the value of the single `total_ms` field with 0 so that two
/// reports from identical runs can be compared byte for byte.
pub fn normalize_timing(report: &str) -> String {
    let key = "\"total_ms\": ";
    let Some(at) = report.find(key) else {
        panic!("report has no timing block");
    };
    let digits_from = at + key.len();
    let digits_len = report[digits_from..]
        .bytes()
        .take_while(|b| b.is_ascii_digit())
        .count();
    assert!(digits_len > 0, "total_ms has no digits");
    let mut normalized = String::with_capacity(report.len());
    normalized.push_str(&report[..digits_from]);
    normalized.push('0');
    normalized.push_str(&report[digits_from + digits_len..]);
    normalized
}

/// Normalizes the fields that may legitimately differ between equivalent
/// runs: the timing block and the tool version.
pub fn normalize_report(report: &str) -> String {
    let report = normalize_timing(report);
    let key = "\"version\": \"";
    let Some(at) = report.find(key) else {
        panic!("report has no version field");
    };
    let value_from = at + key.len();
    let value_len = report[value_from..]
        .find('"')
        .expect("unterminated version string");
    format!(
        "{}X{}",
        &report[..value_from],
        &report[value_from + value_len..]
    )
}

/// Minimal JSON Schema (draft-07 subset) walker covering exactly the
/// keywords the shipped report schema uses: `$ref` into `#/definitions`,
/// `type`, `const`, `enum`, `required`, `properties`,
/// `additionalProperties` (boolean or schema), `items`, `minItems`,
/// `maxItems`, and `minimum`.
pub fn validate(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let schema = deref(root, schema)?;

    if let Some(expected) = schema.get("const") {
        if expected != value {
            return Err(format!("{path}: expected const {expected}, got {value}"));
        }
    }
    if let Some(Value::Array(options)) = schema.get("enum") {
        if !options.contains(value) {
            return Err(format!("{path}: {value} is not one of {options:?}"));
        }
    }
    if let Some(Value::String(ty)) = schema.get("type") {
        let ok = match ty.as_str() {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            other => return Err(format!("{path}: schema uses unsupported type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}, got {value}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < min {
                return Err(format!("{path}: {n} is below the minimum {min}"));
            }
        }
    }

    if let Value::Object(map) = value {
        if let Some(Value::Array(required)) = schema.get("required") {
            for key in required {
                let key = key.as_str().expect("required entries are strings");
                if !map.contains_key(key) {
                    return Err(format!("{path}: missing required property {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, item) in map {
            let sub_path = format!("{path}/{key}");
            if let Some(sub) = props.and_then(|p| p.get(key)) {
                validate(root, sub, item, &sub_path)?;
            } else {
                match additional {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{sub_path}: property not allowed by the schema"));
                    }
                    Some(other) if other.is_object() => validate(root, other, item, &sub_path)?,
                    _ => {}
                }
            }
        }
    }

    if let Value::Array(items) = value {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(Value::as_u64) {
            if (items.len() as u64) > max {
                return Err(format!("{path}: more than {max} items"));
            }
        }
        if let Some(sub) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate(root, sub, item, &format!("{path}/{i}"))?;
            }
        }
    }

    Ok(())
}

fn deref<'a>(root: &'a Value, schema: &'a Value) -> Result<&'a Value, String> {
    let Some(Value::String(reference)) = schema.get("$ref") else {
        return Ok(schema);
    };
    let pointer = reference
        .strip_prefix("#/")
        .ok_or_else(|| format!("unsupported $ref {reference}"))?;
    let mut current = root;
    for part in pointer.split('/') {
        current = current
            .get(part)
            .ok_or_else(|| format!("dangling $ref {reference}"))?;
    }
    Ok(current)
}
