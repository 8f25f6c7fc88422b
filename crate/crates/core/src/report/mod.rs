//! Refactoring candidates and the run report.

mod emit;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dictionary::{ActivityDictionary, LookupCase, MetaProcess};
use crate::error::{Error, Result};
use crate::ingest::SkipRecord;
use crate::similarity::{histogram, Match, MatchMode, MatchSet};

pub use self::emit::{emit, emit_text, OutputFormat};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// How a match is turned into a candidate score.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scoring {
    /// Token count times the number of distinct processes.
    #[default]
    LengthTimesProcesses,
    /// Token count times the number of occurrences.
    LengthTimesOccurrences,
    Length,
}

impl Scoring {
    pub fn score(self, m: &Match) -> u64 {
        let len = m.len() as u64;
        match self {
            Scoring::LengthTimesProcesses => len * m.process_count as u64,
            Scoring::LengthTimesOccurrences => len * m.occurrences.len() as u64,
            Scoring::Length => len,
        }
    }
}

impl fmt::Display for Scoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scoring::LengthTimesProcesses => "length_times_processes",
            Scoring::LengthTimesOccurrences => "length_times_occurrences",
            Scoring::Length => "length",
        })
    }
}

impl FromStr for Scoring {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "length_times_processes" => Ok(Scoring::LengthTimesProcesses),
            "length_times_occurrences" => Ok(Scoring::LengthTimesOccurrences),
            "length" => Ok(Scoring::Length),
            other => Err(format!("unknown scoring `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefactorCandidate {
    pub rank: usize,
    pub score: u64,
    #[serde(rename = "match")]
    pub matched: Match,
}

/// Ranks by score, then length, then token list. Token lists are unique
/// within a match set, so the order is total.
pub fn rank_candidates(matches: &MatchSet, scoring: Scoring) -> Vec<RefactorCandidate> {
    let mut scored: Vec<(u64, &Match)> = matches.matches.iter().map(|m| (scoring.score(m), m)).collect();
    scored.sort_by(|(sa, a), (sb, b)| {
        sb.cmp(sa)
            .then(b.len().cmp(&a.len()))
            .then_with(|| a.tokens.cmp(&b.tokens))
    });
    scored
        .into_iter()
        .enumerate()
        .map(|(i, (score, m))| RefactorCandidate {
            rank: i + 1,
            score,
            matched: m.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub process_count: usize,
    /// Raw activities before normalization.
    pub activity_count: usize,
    pub meta_token_count: usize,
    /// Processes that yielded no activities at all.
    pub empty_processes: Vec<String>,
    pub skipped: Vec<SkipRecord>,
}

impl CorpusSummary {
    pub fn new(processes: &[MetaProcess], skipped: &[SkipRecord]) -> Self {
        CorpusSummary {
            process_count: processes.len(),
            activity_count: processes.iter().map(|p| p.activity_count).sum(),
            meta_token_count: processes.iter().map(MetaProcess::len).sum(),
            empty_processes: processes
                .iter()
                .filter(|p| p.activity_count == 0)
                .map(|p| p.process_id.clone())
                .collect(),
            skipped: skipped.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DictionaryIdentity {
    pub name: String,
    pub version: String,
}

impl From<&ActivityDictionary> for DictionaryIdentity {
    fn from(dict: &ActivityDictionary) -> Self {
        DictionaryIdentity {
            name: dict.name.clone(),
            version: dict.version.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParameters {
    pub mode: MatchMode,
    pub min_length: usize,
    pub lookup_case: LookupCase,
    pub allow_intra: bool,
    pub scoring: Scoring,
}

/// Length to match-count table, serialized as `[{length, count}]` rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram(pub BTreeMap<usize, usize>);

#[derive(Serialize, Deserialize)]
struct HistogramRow {
    length: usize,
    count: usize,
}

impl Serialize for Histogram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|(&length, &count)| HistogramRow { length, count }))
    }
}

impl<'de> Deserialize<'de> for Histogram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<HistogramRow>::deserialize(deserializer)?;
        Ok(Histogram(rows.into_iter().map(|r| (r.length, r.count)).collect()))
    }
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub summary: CorpusSummary,
    pub dictionary: DictionaryIdentity,
    pub parameters: RunParameters,
    pub corpus_fingerprint: String,
    pub warnings: Vec<String>,
    pub candidates: Vec<RefactorCandidate>,
    pub histogram: Histogram,
}

impl Report {
    pub fn new(
        summary: CorpusSummary,
        dictionary: DictionaryIdentity,
        parameters: RunParameters,
        matches: &MatchSet,
        warnings: Vec<String>,
    ) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            summary,
            dictionary,
            candidates: rank_candidates(matches, parameters.scoring),
            parameters,
            corpus_fingerprint: matches.corpus_fingerprint.clone(),
            warnings,
            histogram: Histogram(histogram(matches)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::json("report", &e))
    }
}
