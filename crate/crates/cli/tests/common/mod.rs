#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use regex::Regex;
use serde_json::{json, Value};

pub fn sopq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sopq"))
        .args(args)
        .output()
        .expect("sopq runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

/// Writes the standard input files for a build into `dir`:
/// `curve.json` (y² = x^{2g+2} + 3), `w0.json`, `eta_p.json`, `diffs.json`.
pub struct Fixture {
    pub dir: tempfile::TempDir,
}

impl Fixture {
    pub fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn write(&self, name: &str, v: &Value) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
        p
    }

    pub fn curve(&self, g: usize) -> PathBuf {
        let mut f = vec!["0".to_string(); 2 * g + 3];
        f[0] = "3".into();
        f[2 * g + 2] = "1".into();
        self.write(&format!("curve{g}.json"), &json!({"genus": g, "f": f}))
    }
}

/// `dim H⁰(Kᵐ)` by Riemann–Roch.
pub fn rr(g: usize, m: i64) -> usize {
    match m {
        m if m < 0 => 0,
        0 => 1,
        1 => g,
        m => (2 * m as usize - 1) * (g - 1),
    }
}

/// Coordinates for `η_p` components of the given twists, filled from `seed`.
pub fn eta_p_coords(twists: &[i64], g: usize, seed: i64) -> Value {
    Value::Array(
        twists
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                Value::Array(
                    (0..rr(g, m))
                        .map(|k| {
                            let n = (seed + 3 * j as i64 + 5 * k as i64).rem_euclid(7) - 3;
                            Value::from(format!("{n}/{}", 1 + (k % 3)))
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

pub fn load_schema(name: &str) -> Value {
    let text = fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validates `v` against a schema file, supporting the keywords the
/// shipped schemas use. Returns the first violation.
pub fn validate(v: &Value, schema_file: &str) -> Result<(), String> {
    let root = load_schema(schema_file);
    check(v, &root, &root, "$")
}

fn type_ok(v: &Value, t: &str) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(v: &Value, s: &Value, root: &Value, at: &str) -> Result<(), String> {
    let s = s.as_object().expect("schema object");
    for key in s.keys() {
        assert!(
            matches!(
                key.as_str(),
                "$schema"
                    | "$id"
                    | "title"
                    | "description"
                    | "$defs"
                    | "type"
                    | "properties"
                    | "required"
                    | "additionalProperties"
                    | "items"
                    | "enum"
                    | "const"
                    | "pattern"
                    | "minimum"
                    | "$ref"
                    | "anyOf"
            ),
            "validator does not support keyword {key}"
        );
    }
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        if let Some(path) = r.strip_prefix("#/$defs/") {
            check(v, &root["$defs"][path], root, at)?;
        } else {
            let other = load_schema(r);
            check(v, &other, &other, at)?;
        }
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_ok(v, t),
            Value::Array(ts) => ts.iter().any(|t| type_ok(v, t.as_str().unwrap())),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            return Err(format!("{at}: expected type {t}, got {v}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{at}: {v} not in {e:?}"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return Err(format!("{at}: expected {c}, got {v}"));
        }
    }
    if let (Some(p), Some(text)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(text) {
            return Err(format!("{at}: {text:?} does not match {p}"));
        }
    }
    if let (Some(min), Some(n)) = (s.get("minimum").and_then(Value::as_i64), v.as_i64()) {
        if n < min {
            return Err(format!("{at}: {n} < {min}"));
        }
    }
    if let Some(any) = s.get("anyOf").and_then(Value::as_array) {
        if !any.iter().any(|sub| check(v, sub, root, at).is_ok()) {
            return Err(format!("{at}: no anyOf branch matches"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        if let Some(req) = s.get("required").and_then(Value::as_array) {
            for r in req {
                if !obj.contains_key(r.as_str().unwrap()) {
                    return Err(format!("{at}: missing {r}"));
                }
            }
        }
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => check(x, sub, root, &format!("{at}.{k}"))?,
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{at}: unexpected property {k}"));
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            check(x, items, root, &format!("{at}[{i}]"))?;
        }
    }
    Ok(())
}
