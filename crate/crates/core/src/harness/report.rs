//! Report sink: a header echoing the configuration, rows streamed as they
//! are computed, findings for every check that did not pass, and a
//! per-check summary.
//!
//! JSONL lines carry a `"type"` of `header`, `result`, `finding` or
//! `summary`; the header carries the schema version. CSV output holds
//! rows only, with findings and the summary sent to stderr. Nothing
//! time-dependent is written, so identical runs give identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{io_error, param, Error, Result};

use super::cell::ParamResult;
use super::checks::{kind_of, CheckKind, CheckOutcome, Verdict};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 18] = [
    "group",
    "m",
    "h",
    "rho_formula",
    "u_pm",
    "conjecture_value",
    "conjectural",
    "zp2_prediction",
    "rho_oracle",
    "rho_pm_oracle",
    "rho_pm_all_sets",
    "probe_upper_bound",
    "family",
    "agrees",
    "witness_class",
    "certificate",
    "zp2_equal",
    "witness",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
pub enum Format {
    #[default]
    Table,
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(param(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

/// Outcome of a finished report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: u64,
    pub checks: BTreeMap<&'static str, Counts>,
}

impl Summary {
    /// Failed theorem checks plus refuted conjectures.
    pub fn problems(&self) -> u64 {
        self.checks.values().map(|c| c.fail).sum()
    }

    pub fn skipped(&self) -> u64 {
        self.checks.values().map(|c| c.skip).sum()
    }

    pub fn counts(&self, check: &str) -> Counts {
        self.checks.get(check).copied().unwrap_or_default()
    }

    fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|(&name, c)| {
                let v = match kind_of(name) {
                    CheckKind::Theorem => json!({"kind": "theorem", "pass": c.pass, "fail": c.fail, "skip": c.skip}),
                    CheckKind::Conjecture => {
                        json!({"kind": "conjecture", "consistent": c.pass, "refuted": c.fail, "skip": c.skip})
                    }
                };
                (name.to_string(), v)
            })
            .collect();
        let outcome = if self.problems() > 0 { "failed" } else { "ok" };
        json!({"type": "summary", "rows": self.rows, "checks": checks, "outcome": outcome})
    }
}

enum Sink {
    Plain(Box<dyn Write + Send>),
    Csv(Box<csv::Writer<Box<dyn Write + Send>>>),
}

pub struct ReportWriter {
    sink: Sink,
    format: Format,
    summary: Summary,
    table_header: bool,
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

#[derive(Serialize)]
struct Finding<'a> {
    check: &'a str,
    verdict: Verdict,
    group: Option<&'a str>,
    m: Option<u64>,
    h: Option<u64>,
    detail: &'a str,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ReportWriter {
    pub fn new(out: Box<dyn Write + Send>, format: Format) -> Self {
        let sink = match format {
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
            _ => Sink::Plain(out),
        };
        ReportWriter {
            sink,
            format,
            summary: Summary::default(),
            table_header: false,
        }
    }

    /// Opens `path` for writing (or stdout when absent) before any work is
    /// done, so an unwritable destination fails fast.
    pub fn create(path: Option<&Path>, format: Format) -> Result<Self> {
        let out: Box<dyn Write + Send> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?)),
            None => Box::new(io::stdout()),
        };
        Ok(Self::new(out, format))
    }

    pub fn summary(&self) -> &Summary {
        &self.summary
    }

    fn io(e: io::Error) -> Error {
        io_error(PathBuf::from("<report>"), e)
    }

    fn plain(&mut self) -> Option<&mut Box<dyn Write + Send>> {
        match &mut self.sink {
            Sink::Plain(w) => Some(w),
            Sink::Csv(_) => None,
        }
    }

    fn line(&mut self, text: &str) -> Result<()> {
        if let Some(w) = self.plain() {
            writeln!(w, "{text}")
                .and_then(|_| w.flush())
                .map_err(Self::io)?;
        } else {
            eprintln!("{text}");
        }
        Ok(())
    }

    pub fn header(&mut self, command: &str, config: Value) -> Result<()> {
        match self.format {
            Format::Jsonl => {
                let v = json!({
                    "type": "header",
                    "schema": SCHEMA_VERSION,
                    "tool": "sumsets",
                    "version": TOOL_VERSION,
                    "command": command,
                    "config": config,
                });
                self.line(&v.to_string())
            }
            Format::Table => {
                self.line(&format!("# sumsets {TOOL_VERSION} {command}"))?;
                if let Value::Object(map) = config {
                    for (k, v) in map {
                        let shown = match v {
                            Value::String(s) => s,
                            other => other.to_string(),
                        };
                        self.line(&format!("# {k} = {shown}"))?;
                    }
                }
                Ok(())
            }
            Format::Csv => Ok(()),
        }
    }

    pub fn row(&mut self, row: &ParamResult) -> Result<()> {
        self.summary.rows += 1;
        match self.format {
            Format::Jsonl => {
                let line = serde_json::to_string(&Tagged {
                    kind: "result",
                    body: row,
                })
                .expect("rows serialize");
                self.line(&line)
            }
            Format::Table => {
                if !self.table_header {
                    self.table_header = true;
                    self.line(&format!(
                        "{:<10} {:>5} {:>3} {:>7} {:>7} {:>7} {:>9} {:>9} {:>6} {:<14} witness",
                        "group",
                        "m",
                        "h",
                        "u",
                        "u_pm",
                        "predict",
                        "rho",
                        "rho_pm",
                        "agrees",
                        "class"
                    ))?;
                }
                let conj = format!(
                    "{}{}",
                    row.conjecture_value,
                    if row.conjectural { "?" } else { "" }
                );
                let pm = match row.probe_upper_bound {
                    Some(b) if row.rho_pm_oracle.value().is_none() => format!("<={b}"),
                    _ => row.rho_pm_oracle.text(),
                };
                let line = format!(
                    "{:<10} {:>5} {:>3} {:>7} {:>7} {:>7} {:>9} {:>9} {:>6} {:<14} {}",
                    row.group,
                    row.m,
                    row.h,
                    row.rho_formula,
                    row.u_pm,
                    conj,
                    row.rho_oracle.text(),
                    pm,
                    row.agrees.map_or("-".to_string(), |a| a.to_string()),
                    row.witness_class.map_or("-", |c| c.label()),
                    row.witness
                        .as_ref()
                        .map_or("-".to_string(), |w| format!("{{{}}}", w.join(", "))),
                );
                self.line(&line)
            }
            Format::Csv => {
                let record = [
                    row.group.clone(),
                    row.m.to_string(),
                    row.h.to_string(),
                    row.rho_formula.to_string(),
                    row.u_pm.to_string(),
                    row.conjecture_value.to_string(),
                    row.conjectural.to_string(),
                    opt(row.zp2_prediction),
                    row.rho_oracle
                        .value()
                        .map_or_else(|| csv_slot(row.rho_oracle.text()), |v| v.to_string()),
                    row.rho_pm_oracle
                        .value()
                        .map_or_else(|| csv_slot(row.rho_pm_oracle.text()), |v| v.to_string()),
                    row.rho_pm_all_sets
                        .value()
                        .map_or_else(|| csv_slot(row.rho_pm_all_sets.text()), |v| v.to_string()),
                    opt(row.probe_upper_bound),
                    row.family.label().to_string(),
                    opt(row.agrees),
                    row.witness_class
                        .map_or(String::new(), |c| c.label().to_string()),
                    row.classification.certificate.unwrap_or("").to_string(),
                    opt(row.classification.zp2_equal),
                    row.witness.as_ref().map_or(String::new(), |w| w.join(" ")),
                ];
                let Sink::Csv(w) = &mut self.sink else {
                    unreachable!()
                };
                if !self.table_header {
                    self.table_header = true;
                    w.write_record(CSV_COLUMNS)
                        .map_err(|e| Self::io(e.into()))?;
                }
                w.write_record(&record).map_err(|e| Self::io(e.into()))?;
                w.flush().map_err(Self::io)
            }
        }
    }

    /// Tallies a check outcome; anything other than a pass is also
    /// written out as a finding.
    pub fn record(&mut self, outcome: &CheckOutcome, cell: Option<(&str, u64, u64)>) -> Result<()> {
        let counts = self.summary.checks.entry(outcome.check).or_default();
        match outcome.verdict {
            Verdict::Pass | Verdict::Consistent => {
                counts.pass += 1;
                return Ok(());
            }
            Verdict::Fail | Verdict::Refuted => counts.fail += 1,
            Verdict::Skip => counts.skip += 1,
        }
        match self.format {
            Format::Jsonl => {
                let f = Finding {
                    check: outcome.check,
                    verdict: outcome.verdict,
                    group: cell.map(|c| c.0),
                    m: cell.map(|c| c.1),
                    h: cell.map(|c| c.2),
                    detail: &outcome.detail,
                };
                let line = serde_json::to_string(&Tagged {
                    kind: "finding",
                    body: &f,
                })
                .expect("findings serialize");
                self.line(&line)
            }
            _ => {
                let at = cell.map_or(String::new(), |(g, m, h)| format!(" at {g} m={m} h={h}"));
                self.line(&format!(
                    "{} {}{}: {}",
                    outcome.verdict.label().to_uppercase(),
                    outcome.check,
                    at,
                    outcome.detail
                ))
            }
        }
    }

    /// Writes the summary and returns it.
    pub fn finish(mut self) -> Result<Summary> {
        match self.format {
            Format::Jsonl => {
                let line = self.summary.to_json().to_string();
                self.line(&line)?;
            }
            _ => {
                let mut lines = vec![format!("# {} rows", self.summary.rows)];
                for (name, c) in &self.summary.checks {
                    lines.push(match kind_of(name) {
                        CheckKind::Theorem => {
                            format!(
                                "# {name}: {} pass, {} fail, {} skip",
                                c.pass, c.fail, c.skip
                            )
                        }
                        CheckKind::Conjecture => {
                            format!(
                                "# {name}: {} consistent, {} refuted, {} skip",
                                c.pass, c.fail, c.skip
                            )
                        }
                    });
                }
                lines.push(format!(
                    "# outcome: {}",
                    if self.summary.problems() > 0 {
                        "failed"
                    } else {
                        "ok"
                    }
                ));
                for l in lines {
                    self.line(&l)?;
                }
            }
        }
        match &mut self.sink {
            Sink::Plain(w) => w.flush().map_err(Self::io)?,
            Sink::Csv(w) => w.flush().map_err(Self::io)?,
        }
        Ok(self.summary)
    }
}

fn csv_slot(text: String) -> String {
    if text == "-" {
        String::new()
    } else {
        text
    }
}
