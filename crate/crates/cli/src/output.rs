//! Rendering verdicts and single results as text, JSON or CSV.

use clap::ValueEnum;
use functidom::theorems::{TheoremVerdict, VerdictRecord};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// CSV form of a [`VerdictRecord`]: the witness is one space-separated field.
#[derive(Serialize)]
struct CsvRow<'a> {
    theorem_id: &'a str,
    instance: &'a str,
    claim: Option<usize>,
    observed: Option<usize>,
    passed: bool,
    witness: String,
}

impl<'a> From<&'a VerdictRecord> for CsvRow<'a> {
    fn from(r: &'a VerdictRecord) -> Self {
        CsvRow {
            theorem_id: &r.theorem_id,
            instance: &r.instance,
            claim: r.claim,
            observed: r.observed,
            passed: r.passed,
            witness: r.witness.join(" "),
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn verdict_line(v: &TheoremVerdict) -> String {
    let mut s = format!(
        "{} {} {}",
        if v.passed { "PASS" } else { "FAIL" },
        v.theorem_id,
        v.instance_descr
    );
    if v.claim_value.is_some() || v.observed_value.is_some() {
        s.push_str(&format!(
            " claim={} observed={}",
            opt(v.claim_value),
            opt(v.observed_value)
        ));
    }
    let labels = v.witness_labels();
    if !labels.is_empty() {
        s.push_str(&format!(" witness={{{}}}", labels.join(", ")));
    }
    s
}

pub fn render_records(records: &[VerdictRecord], format: Format) -> String {
    match format {
        Format::Text => unreachable!("text output is rendered from verdicts"),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if records.is_empty() {
                w.write_record([
                    "theorem_id",
                    "instance",
                    "claim",
                    "observed",
                    "passed",
                    "witness",
                ])
                .expect("in-memory write");
            }
            for r in records {
                w.serialize(CsvRow::from(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
    }
}

pub fn render_verdicts(verdicts: &[TheoremVerdict], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for v in verdicts {
                s.push_str(&verdict_line(v));
                s.push('\n');
            }
            let failed = verdicts.iter().filter(|v| !v.passed).count();
            s.push_str(&format!("{} verdicts, {failed} failed\n", verdicts.len()));
            s
        }
        _ => {
            let records: Vec<VerdictRecord> =
                verdicts.iter().map(TheoremVerdict::to_record).collect();
            render_records(&records, format)
        }
    }
}

/// A single serializable result (gamma or construct output) rendered with
/// `fields` giving the text layout.
pub fn render_single<T: Serialize>(value: &T, fields: &[(&str, String)], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (k, v) in fields {
                s.push_str(&format!("{k}: {v}\n"));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("result serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(fields.iter().map(|(k, _)| *k))
                .expect("in-memory write");
            w.write_record(fields.iter().map(|(_, v)| v.as_str()))
                .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
    }
}
