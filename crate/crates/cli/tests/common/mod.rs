#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::Value;

pub fn system(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", &format!("{name}.sys")]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_diffelim"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn schema() -> &'static JSONSchema {
    static SCHEMA: OnceLock<JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", "report.schema.json"].iter().collect();
        let text = std::fs::read_to_string(path).expect("schema file");
        let value: Value = serde_json::from_str(&text).expect("schema parses");
        JSONSchema::compile(&value).expect("schema compiles")
    })
}

pub fn schema_errors(v: &Value) -> Vec<String> {
    match schema().validate(v) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    }
}

/// Runs with `--json`, checks the report against the schema, returns exit code and document.
pub fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v: Value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {}\nstderr: {}", out.stdout, out.stderr));
    let errs = schema_errors(&v);
    assert!(errs.is_empty(), "schema violations: {errs:?}\n{}", out.stdout);
    (out.code, v)
}
