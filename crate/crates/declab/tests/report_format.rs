//! The `declab` binary: report JSON matches the shipped schema, output is
//! byte-identical across runs, exit codes follow the contract, and the
//! printed file format round-trips.

use std::process::Command;

use serde_json::Value;

fn declab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_declab"))
}

/// Minimal validator for the subset of JSON Schema the shipped schema uses:
/// `type`, `enum`, `required`, `properties`, `additionalProperties: false`,
/// `items`, `minimum`.
fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(allowed) = schema.get("enum") {
        let ok = allowed.as_array().unwrap().iter().any(|v| v == value);
        return if ok { Ok(()) } else { Err(format!("{path}: {value} not in enum")) };
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            other => return Err(format!("{path}: unsupported schema type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {ty}, found {value}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_i64) {
        if value.as_i64().is_some_and(|v| v < min) {
            return Err(format!("{path}: {value} below minimum {min}"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required field {key}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if props.is_none_or(|p| !p.contains_key(key)) {
                    return Err(format!("{path}: unexpected field {key}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(items) = schema.get("items") {
            for (i, v) in arr.iter().enumerate() {
                validate(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn schema() -> Value {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/report.schema.json"
    ))
    .expect("schema file ships with the crate");
    serde_json::from_str(&text).unwrap()
}

#[test]
fn json_report_validates_against_shipped_schema() {
    let out = declab()
        .args(["check", "counit", "--space", "boundary(2)", "--levels", "3", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(&schema(), &report, "$").unwrap();
    assert_eq!(report["status"], "pass");
}

#[test]
fn json_report_with_witness_validates_and_exits_nonzero() {
    let out = declab()
        .args(["check", "counit", "--space", "cube(3)", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(&schema(), &report, "$").unwrap();
    assert_eq!(report["status"], "fail");
    assert!(report["results"][0]["witness"]["note"].is_string());
}

#[test]
fn homology_details_validate() {
    let out = declab()
        .args(["check", "unit-homology", "--space", "simplex(2)", "--degree", "1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(&schema(), &report, "$").unwrap();
    let rows = report["results"][0]["details"]["homology"].as_array().unwrap();
    assert_eq!(rows[0]["rank"], 1);
    assert!(report["results"][0]["details"]["induced"].is_array());
}

#[test]
fn circle_unit_homology_is_z_z() {
    let out = declab()
        .args([
            "check",
            "unit-homology",
            "--space",
            "quotient(simplex(1),boundary(1))",
            "--degree",
            "1",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(&schema(), &report, "$").unwrap();
    let rows = report["results"][0]["details"]["homology"].as_array().unwrap();
    assert_eq!(rows[0]["rank"], 1);
    assert_eq!(rows[1]["rank"], 1);
    assert_eq!(rows[1]["torsion"].as_array().unwrap().len(), 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let run = || {
        declab()
            .args(["check", "two-route-sigma", "--space", "boundary(2)", "--levels", "3", "--json"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn printed_format_round_trips_through_the_binary() {
    let out = declab()
        .args(["print", "--space", "product(simplex(1),simplex(1))"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed = declab::sset::format::parse_sset(&text).unwrap();
    let direct = declab::cli::parse_space("product(simplex(1),simplex(1))").unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn unknown_check_is_an_error() {
    let out = declab().args(["check", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check"));
}
