//! Shared test helpers: binary invocation, temp dirs, and a validator for
//! the JSON-Schema subset used by the shipped schemas (type, enum,
//! required, properties, additionalProperties, items).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::Value;

pub fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_photonq"))
}

pub fn run(args: &[&str]) -> Output {
    binary()
        .args(args)
        .env_remove("PHOTONQ_OUT_DIR")
        .output()
        .expect("binary runs")
}

static DIR_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Fresh scratch directory under the target temp dir.
pub fn scratch_dir(tag: &str) -> PathBuf {
    let n = DIR_COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = std::env::temp_dir().join(format!(
        "photonq-{tag}-{}-{n}",
        std::process::id()
    ));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

pub fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema parses")
}

pub fn load_json(path: &Path) -> Value {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("parsing {}: {e}", path.display()))
}

/// Validate `instance` against the schema subset; panics with a path on the
/// first violation.
pub fn validate(schema: &Value, instance: &Value) {
    validate_at(schema, instance, "$");
}

fn validate_at(schema: &Value, instance: &Value, path: &str) {
    if let Some(types) = schema.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            other => panic!("{path}: bad schema type spec {other}"),
        };
        let ok = allowed.iter().any(|t| type_matches(t, instance));
        assert!(
            ok,
            "{path}: value {instance} does not match type {allowed:?}"
        );
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        assert!(
            options.contains(instance),
            "{path}: value {instance} not in enum {options:?}"
        );
    }
    if let Some(obj) = instance.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                assert!(obj.contains_key(key), "{path}: missing required key {key:?}");
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        if let Some(properties) = properties {
            for (key, value) in obj {
                match properties.get(key) {
                    Some(sub) => validate_at(sub, value, &format!("{path}.{key}")),
                    None => {
                        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                            panic!("{path}: unexpected key {key:?}");
                        }
                    }
                }
            }
        }
    }
    if let (Some(items), Some(list)) = (schema.get("items"), instance.as_array()) {
        for (i, element) in list.iter().enumerate() {
            validate_at(items, element, &format!("{path}[{i}]"));
        }
    }
}

fn type_matches(expected: &str, value: &Value) -> bool {
    match expected {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        other => panic!("unsupported schema type {other:?}"),
    }
}

/// Recursively collect relative paths and file bytes of a directory tree.
pub fn snapshot_tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    collect_files(root, root, &mut files);
    files.sort();
    files
}

fn collect_files(root: &Path, dir: &Path, out: &mut Vec<(String, Vec<u8>)>) {
    for entry in std::fs::read_dir(dir).expect("readable dir") {
        let entry = entry.expect("dir entry");
        let path = entry.path();
        if path.is_dir() {
            collect_files(root, &path, out);
        } else {
            let rel = path
                .strip_prefix(root)
                .expect("under root")
                .to_string_lossy()
                .into_owned();
            out.push((rel, std::fs::read(&path).expect("readable file")));
        }
    }
}
