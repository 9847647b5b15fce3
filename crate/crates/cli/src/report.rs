//! The report document and its text rendering. The JSON tree is the source
//! of truth; the text form is produced by walking it.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Map, Value};

/// Arrays of objects longer than this are summarized in text output.
const TEXT_LIST_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Usage,
    Invalid,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass | Status::NotApplicable => 0,
            Status::Usage => 2,
            Status::Invalid => 3,
            Status::Fail => 4,
            Status::Error => 5,
        }
    }
}

pub struct Document {
    pub command: String,
    pub status: Status,
    pub source: Option<Value>,
    pub result: Value,
}

impl Document {
    pub fn new(command: &str, status: Status, result: Value) -> Self {
        Document {
            command: command.to_string(),
            status,
            source: None,
            result,
        }
    }

    pub fn with_source(mut self, source: Option<Value>) -> Self {
        self.source = source;
        self
    }

    pub fn to_value(&self, timestamp: bool) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), json!(self.command));
        root.insert("status".into(), json!(self.status));
        if timestamp {
            let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            root.insert("generated_at".into(), json!(now));
        }
        if let Some(source) = &self.source {
            root.insert("source".into(), source.clone());
        }
        root.insert("result".into(), self.result.clone());
        Value::Object(root)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize to JSON")
}

pub fn render_json(tree: &Value) -> String {
    let mut s = serde_json::to_string_pretty(tree).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn render_text(tree: &Value) -> String {
    let mut out = String::new();
    render(tree, 0, &mut out);
    out
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

/// `[1, 2, 3]` as `1 2 3`, if every entry is a scalar.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let items = v.as_array()?;
    if items.is_empty() {
        return Some("[]".into());
    }
    let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
    parts.map(|p| p.join(" "))
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(s) if s.contains('\n') => {
                        let _ = writeln!(out, "{pad}{key}:");
                        for line in s.lines() {
                            let _ = writeln!(out, "{pad}  {line}");
                        }
                    }
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{key}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{key}:");
                        render(value, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.len() > TEXT_LIST_LIMIT && items.iter().all(Value::is_object) {
                let _ = writeln!(out, "{pad}({} entries; use --format json for all of them)", items.len());
                return;
            }
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}[{i}] {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        render(item, indent + 2, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_number_in_text_is_in_the_tree() {
        let tree = json!({"betti": [1, 0, 2], "nested": {"e0": 3, "rows": [[1, 2], [3, 4]]}});
        let text = render_text(&tree);
        assert_eq!(text, "betti: 1 0 2\nnested:\n  e0: 3\n  rows:\n    [0] 1 2\n    [1] 3 4\n");
    }

    #[test]
    fn long_object_lists_are_summarized() {
        let items: Vec<Value> = (0..30).map(|i| json!({"i": i})).collect();
        let text = render_text(&json!({ "nodes": items }));
        assert!(text.contains("30 entries"));
    }

    #[test]
    fn timestamp_can_be_suppressed() {
        let doc = Document::new("x", Status::Pass, json!({}));
        assert!(doc.to_value(false).get("generated_at").is_none());
        assert!(doc.to_value(true).get("generated_at").is_some());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Pass.exit_code(), 0);
        assert_eq!(Status::Invalid.exit_code(), 3);
        assert_eq!(Status::Fail.exit_code(), 4);
        assert_eq!(Status::Error.exit_code(), 5);
    }
}
