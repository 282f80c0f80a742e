//! Report rendering. CSV reports open with `# schema_version` and
//! `# config` comment lines; JSON reports carry the same two keys.

use serde_json::{Map, Value};

use crate::config::{Command, Format};

pub const SCHEMA_VERSION: u32 = 1;
const CONFIG_PREFIX: &str = "# config: ";

pub enum Body {
    Table { columns: Vec<&'static str>, rows: Vec<Vec<Value>> },
    /// A JSON object; in CSV it becomes a single row of its scalar fields.
    Object(Map<String, Value>),
}

pub struct Report {
    pub body: Body,
    /// Extra JSON-only detail, merged into the top-level object.
    pub detail: Option<Map<String, Value>>,
}

impl Report {
    pub fn table(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        Report { body: Body::Table { columns, rows }, detail: None }
    }
}

pub fn render(config: &Command, report: &Report, format: Format) -> Result<String, String> {
    let config_json = serde_json::to_value(config).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("schema_version".into(), SCHEMA_VERSION.into());
            top.insert("config".into(), config_json);
            match &report.body {
                Body::Table { columns, rows } => {
                    let rows = rows
                        .iter()
                        .map(|r| Value::Object(columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                        .collect();
                    top.insert("rows".into(), Value::Array(rows));
                }
                Body::Object(map) => top.extend(map.clone()),
            }
            if let Some(detail) = &report.detail {
                top.extend(detail.clone());
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(top)).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = format!("# schema_version: {SCHEMA_VERSION}\n{CONFIG_PREFIX}{config_json}\n");
            let mut wr = csv::Writer::from_writer(Vec::new());
            let cell = |v: &Value| match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            match &report.body {
                Body::Table { columns, rows } => {
                    wr.write_record(columns).map_err(|e| e.to_string())?;
                    for r in rows {
                        wr.write_record(r.iter().map(cell)).map_err(|e| e.to_string())?;
                    }
                }
                Body::Object(map) => {
                    let scalars: Vec<(&String, &Value)> =
                        map.iter().filter(|(_, v)| !v.is_object() && !v.is_array()).collect();
                    wr.write_record(scalars.iter().map(|(k, _)| k.as_str())).map_err(|e| e.to_string())?;
                    wr.write_record(scalars.iter().map(|(_, v)| cell(v))).map_err(|e| e.to_string())?;
                }
            }
            let bytes = wr.into_inner().map_err(|e| e.to_string())?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| e.to_string())?);
            Ok(out)
        }
    }
}

/// The embedded config of a report, from either format.
pub fn extract_config(text: &str) -> Result<Command, String> {
    let value: Value = if let Some(line) = text.lines().find_map(|l| l.strip_prefix(CONFIG_PREFIX)) {
        serde_json::from_str(line).map_err(|e| format!("config line: {e}"))?
    } else {
        let report: Value = serde_json::from_str(text).map_err(|_| "no embedded config found".to_string())?;
        report.get("config").cloned().ok_or("report has no `config` key")?
    };
    serde_json::from_value(value).map_err(|e| format!("config: {e}"))
}
