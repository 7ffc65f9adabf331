use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "bridge-forge/1";

/// Wraps a report in the versioned envelope `{"schema", "command", ...}`.
pub fn envelope(command: &str, body: impl Serialize) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), Value::from(SCHEMA));
    obj.insert("command".into(), Value::from(command));
    match serde_json::to_value(body).expect("reports serialize") {
        Value::Object(fields) => obj.extend(fields),
        other => {
            obj.insert("result".into(), other);
        }
    }
    Value::Object(obj)
}

pub fn print_json(command: &str, body: impl Serialize) {
    println!("{}", serde_json::to_string_pretty(&envelope(command, body)).expect("valid json"));
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
