//! Record-oriented output.
//!
//! Every subcommand produces a stream of [`OutputRecord`]s; the format flag
//! only changes how the same records are rendered. JSON emits one object
//! per line with a fixed key order, CSV one row per record with coefficient
//! lists packed into a single `;`-separated cell. Coefficients are always
//! decimal strings — they outgrow native integers quickly.

use serde::Serialize;

/// One output record. The JSON schema is stable:
/// `{"kind", "k", "n", "lambda", "coeffs", "value", "status"}`.
#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub kind: &'static str,
    pub k: u32,
    pub n: u32,
    pub lambda: Option<String>,
    pub coeffs: Option<Vec<String>>,
    pub value: Option<String>,
    pub status: Option<serde_json::Value>,
}

impl OutputRecord {
    pub fn new(kind: &'static str, k: u32, n: u32) -> Self {
        OutputRecord {
            kind,
            k,
            n,
            lambda: None,
            coeffs: None,
            value: None,
            status: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub fn emit_json(records: &[OutputRecord]) {
    for record in records {
        println!(
            "{}",
            serde_json::to_string(record).expect("records serialize")
        );
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn emit_csv(records: &[OutputRecord]) {
    println!("kind,k,n,lambda,coeffs,value,status");
    for r in records {
        let coeffs = r.coeffs.as_ref().map(|c| c.join(";")).unwrap_or_default();
        let status = r
            .status
            .as_ref()
            .map(|s| serde_json::to_string(s).expect("status serializes"))
            .unwrap_or_default();
        println!(
            "{},{},{},{},{},{},{}",
            r.kind,
            r.k,
            r.n,
            csv_escape(r.lambda.as_deref().unwrap_or("")),
            csv_escape(&coeffs),
            csv_escape(r.value.as_deref().unwrap_or("")),
            csv_escape(&status),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_keys_are_stable() {
        let record = OutputRecord::new("moment", 2, 3);
        assert_eq!(
            serde_json::to_string(&record).unwrap(),
            r#"{"kind":"moment","k":2,"n":3,"lambda":null,"coeffs":null,"value":null,"status":null}"#
        );
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
