use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::Report;
use crate::error::Result;

const DEFAULT_TOP: usize = 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

pub fn emit(report: &Report, format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Json => Ok(emit_json(report).into_bytes()),
        OutputFormat::Csv => emit_csv(report),
        OutputFormat::Text => Ok(emit_text(report, DEFAULT_TOP).into_bytes()),
    }
}

fn emit_json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("report serialization is infallible");
    let mut out = serde_json::to_string_pretty(&sort_keys(value)).expect("value serialization is infallible");
    out.push('\n');
    out
}

fn sort_keys(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, sort_keys(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

fn emit_csv(report: &Report) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "rank",
        "score",
        "length",
        "process_count",
        "occurrence_count",
        "tokens",
        "processes",
    ])?;
    for c in &report.candidates {
        let m = &c.matched;
        writer.write_record([
            c.rank.to_string(),
            c.score.to_string(),
            m.len().to_string(),
            m.process_count.to_string(),
            m.occurrences.len().to_string(),
            m.tokens.join("|"),
            m.process_ids().join(";"),
        ])?;
    }
    writer.flush().map_err(|e| crate::error::Error::io("<csv>", e))?;
    Ok(writer.into_inner().expect("flushed writer"))
}

/// Human-readable summary with the length histogram and the top `top`
/// candidates.
pub fn emit_text(report: &Report, top: usize) -> String {
    let s = &report.summary;
    let p = &report.parameters;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Corpus: {} processes, {} activities, {} meta tokens, {} skipped",
        s.process_count,
        s.activity_count,
        s.meta_token_count,
        s.skipped.len()
    );
    let _ = writeln!(
        out,
        "Dictionary: {} {}",
        report.dictionary.name, report.dictionary.version
    );
    let _ = writeln!(
        out,
        "Mode: {}, min length {}, lookup {}, intra-process {}, scoring {}",
        p.mode,
        p.min_length,
        p.lookup_case,
        if p.allow_intra { "on" } else { "off" },
        p.scoring
    );
    let _ = writeln!(out, "Fingerprint: {}", report.corpus_fingerprint);
    for skip in &s.skipped {
        let _ = writeln!(out, "Skipped: {}: {}", skip.path, skip.reason);
    }
    for warning in &report.warnings {
        let _ = writeln!(out, "Warning: {warning}");
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "{:>8} | {:>8}", "Length", "Count");
    let _ = writeln!(out, "{:->8}-+-{:->8}", "", "");
    for (length, count) in &report.histogram.0 {
        let _ = writeln!(out, "{length:>8} | {count:>8}");
    }
    let _ = writeln!(out, "{:>8} | {:>8}", "Total", report.histogram.total());

    let _ = writeln!(out);
    let shown = report.candidates.len().min(top);
    let _ = writeln!(out, "Candidates ({shown} of {}):", report.candidates.len());
    for c in report.candidates.iter().take(top) {
        let m = &c.matched;
        let _ = writeln!(
            out,
            "#{} score {} length {} in {} processes, {} occurrences",
            c.rank,
            c.score,
            m.len(),
            m.process_count,
            m.occurrences.len()
        );
        let _ = writeln!(out, "    {}", m.tokens.join(" > "));
        let locations: Vec<String> = m
            .occurrences
            .iter()
            .map(|o| format!("{}@{}", o.process_id, o.offset))
            .collect();
        let _ = writeln!(out, "    at {}", locations.join(", "));
    }
    out
}
