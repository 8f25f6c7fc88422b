use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ActivitySequence, Corpus, SourceKind, Token};
use crate::error::{Error, Result};

/// Names of the log columns holding the case id, the activity and,
/// optionally, an ordering key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMap {
    pub case_id: String,
    pub activity: String,
    pub order: Option<String>,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            case_id: "case_id".to_string(),
            activity: "activity".to_string(),
            order: None,
        }
    }
}

struct Row {
    order: Option<String>,
    activity: Token,
}

/// Groups a comma-separated process log into one sequence per case.
///
/// Rows of a case keep input order unless an ordering column is mapped. The
/// ordering column is compared numerically when every value parses as a
/// number and as text otherwise; ties keep input order.
pub fn ingest_log(table: &str, columns: &ColumnMap) -> Result<Corpus> {
    if table.trim().is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(table.as_bytes());
    let headers = reader.headers()?.clone();
    let index_of = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let case_idx = index_of(&columns.case_id)?;
    let activity_idx = index_of(&columns.activity)?;
    let order_idx = columns.order.as_deref().map(index_of).transpose()?;

    let mut cases: BTreeMap<String, Vec<Row>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        // Header is line 1.
        let row = i as u64 + 2;
        let field = |idx: usize| record.get(idx).unwrap_or("");
        let case = field(case_idx);
        if case.is_empty() {
            return Err(Error::LogRow {
                row,
                message: format!("empty `{}` value", columns.case_id),
            });
        }
        let raw = field(activity_idx);
        let name = raw.rsplit(':').next().unwrap_or(raw).trim();
        let activity = Token::new(name).map_err(|_| Error::LogRow {
            row,
            message: format!("invalid `{}` value {raw:?}", columns.activity),
        })?;
        cases.entry(case.to_string()).or_default().push(Row {
            order: order_idx.map(|idx| field(idx).to_string()),
            activity,
        });
    }
    if cases.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let numeric = cases
        .values()
        .flatten()
        .all(|r| r.order.as_deref().is_none_or(|v| v.parse::<f64>().is_ok()));

    let sequences = cases
        .into_iter()
        .map(|(case, mut rows)| {
            if order_idx.is_some() {
                rows.sort_by(|a, b| compare_order(a.order.as_deref(), b.order.as_deref(), numeric));
            }
            let tokens = rows.into_iter().map(|r| r.activity).collect();
            ActivitySequence::new(case, SourceKind::Log, tokens)
        })
        .collect();
    Corpus::new("log", sequences, Vec::new())
}

fn compare_order(a: Option<&str>, b: Option<&str>, numeric: bool) -> Ordering {
    let (a, b) = (a.unwrap_or(""), b.unwrap_or(""));
    if numeric {
        let (x, y) = (a.parse::<f64>().unwrap_or(0.0), b.parse::<f64>().unwrap_or(0.0));
        x.total_cmp(&y)
    } else {
        a.cmp(b)
    }
}

/// Writes a corpus back out as a log table using the given column names.
///
/// When an ordering column is mapped it receives each row's position within
/// its case, so re-ingesting reproduces the corpus.
pub fn corpus_to_log(corpus: &Corpus, columns: &ColumnMap) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec![columns.case_id.as_str(), columns.activity.as_str()];
    if let Some(order) = &columns.order {
        header.push(order);
    }
    writer.write_record(&header)?;
    for seq in corpus.sequences() {
        for (pos, token) in seq.tokens.iter().enumerate() {
            let pos = pos.to_string();
            let mut record = vec![seq.process_id.as_str(), token.as_str()];
            if columns.order.is_some() {
                record.push(&pos);
            }
            writer.write_record(&record)?;
        }
    }
    let bytes = writer.into_inner().map_err(|e| Error::io("<log>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits UTF-8 from UTF-8 input"))
}
