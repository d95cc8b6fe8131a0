use std::collections::BTreeSet;
use std::io::{IsTerminal, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

use dedekind_core::verify::Report;
use dedekind_core::{PolyStyle, QPoly, Scalar};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Human => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn unicode_terminal() -> bool {
    if !std::io::stdout().is_terminal() {
        return false;
    }
    ["LC_ALL", "LC_CTYPE", "LANG"]
        .iter()
        .filter_map(|v| std::env::var(v).ok())
        .find(|v| !v.is_empty())
        .is_some_and(|v| {
            let v = v.to_ascii_lowercase();
            v.contains("utf-8") || v.contains("utf8")
        })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let io_err = |e: std::io::Error| Failure::new(2, format!("writing output: {e}"));
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io_err)?;
            }
            std::fs::write(p, text).map_err(io_err)
        }
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, Failure> {
    let csv_err = |e: csv::Error| Failure::new(2, format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::new(2, format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Prints one computed object. Constants print as bare scalars.
pub fn emit_value<S: Scalar>(fmt: Format, out: Option<&Path>, mut params: Value, poly: &QPoly<S>) -> Result<(), Failure> {
    let canonical = poly.to_string();
    let text = match fmt {
        Format::Human => {
            let style = if out.is_none() && unicode_terminal() { PolyStyle::Unicode } else { PolyStyle::Ascii };
            format!("{}\n", poly.render(style))
        }
        Format::Json => {
            params["result"] = Value::String(canonical);
            format!("{}\n", serde_json::to_string_pretty(&params).expect("json"))
        }
        Format::Csv => {
            params["result"] = Value::String(canonical);
            let map = params.as_object().expect("params object");
            let header: Vec<String> = map.keys().cloned().collect();
            let row: Vec<String> = map.values().map(plain).collect();
            csv_text(&header, &[row])?
        }
    };
    write_out(out, &text)
}

/// Writes a campaign report; the CSV form flattens `params` into columns.
pub fn emit_report(fmt: Format, out: Option<&Path>, report: &Report) -> Result<(), Failure> {
    let text = match fmt {
        Format::Json => report.to_json(),
        Format::Csv => {
            let keys: BTreeSet<&String> = report.cases.iter().flat_map(|c| c.params.keys()).collect();
            let mut header = vec!["identity".to_string()];
            header.extend(keys.iter().map(|k| k.to_string()));
            header.extend(["status", "reason", "lhs", "rhs"].map(String::from));
            let rows: Vec<Vec<String>> = report
                .cases
                .iter()
                .map(|c| {
                    let mut row = vec![c.identity.to_string()];
                    row.extend(keys.iter().map(|k| c.params.get(*k).map(plain).unwrap_or_default()));
                    row.push(plain(&serde_json::to_value(c.status).expect("status")));
                    for f in [&c.reason, &c.lhs, &c.rhs] {
                        row.push(f.clone().unwrap_or_default());
                    }
                    row
                })
                .collect();
            csv_text(&header, &rows)?
        }
        Format::Human => {
            let mut s = format!(
                "campaign {}: {} pass, {} fail, {} skipped\n",
                report.campaign, report.summary.pass, report.summary.fail, report.summary.skipped
            );
            for c in report.failures() {
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                s.push_str(&format!(
                    "FAIL {} [{}]: {}\n",
                    c.identity,
                    params.join(", "),
                    c.reason.as_deref().unwrap_or("")
                ));
            }
            s
        }
    };
    write_out(out, &text)
}
