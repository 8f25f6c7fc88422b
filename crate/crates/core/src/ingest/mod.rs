//! Turning workflow designs and process logs into ordered activity sequences.
//!
//! A design yields one [`ActivitySequence`] per file, with nested activities
//! flattened in document order. A log yields one sequence per case. Either
//! way the result is a [`Corpus`] in canonical `process_id` order.

mod log;
mod scan;
mod xaml;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use self::log::{corpus_to_log, ingest_log, ColumnMap};
pub use self::scan::{discover_files, scan_corpus, scan_files};
pub use self::xaml::{extract_activities, Extraction, ExtractionConfig, UIPATH_ACTIVITIES_NS};

/// A single activity name such as `ReadRange` or `ForEach<Object>`.
///
/// Never empty, never padded with whitespace and never namespace-qualified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token(String);

impl Token {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.trim() != name || name.contains(':') {
            return Err(Error::InvalidToken(name));
        }
        Ok(Token(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Token {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Token::new(value)
    }
}

impl From<Token> for String {
    fn from(token: Token) -> Self {
        token.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Design,
    Log,
}

/// One process as an ordered list of raw activity tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivitySequence {
    pub process_id: String,
    pub source_kind: SourceKind,
    pub tokens: Vec<Token>,
}

impl ActivitySequence {
    pub fn new(process_id: impl Into<String>, source_kind: SourceKind, tokens: Vec<Token>) -> Self {
        ActivitySequence {
            process_id: process_id.into(),
            source_kind,
            tokens,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// A file that was found but could not be turned into a sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkipRecord {
    pub path: String,
    pub reason: String,
}

/// All sequences of one run, sorted by `process_id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub origin: String,
    sequences: Vec<ActivitySequence>,
    skipped: Vec<SkipRecord>,
}

impl Corpus {
    /// Builds a corpus in canonical order. Fails on duplicate process ids.
    pub fn new(
        origin: impl Into<String>,
        mut sequences: Vec<ActivitySequence>,
        mut skipped: Vec<SkipRecord>,
    ) -> Result<Self> {
        sequences.sort_by(|a, b| a.process_id.cmp(&b.process_id));
        if let Some(dup) = sequences.windows(2).find(|w| w[0].process_id == w[1].process_id) {
            return Err(Error::DuplicateProcessId(dup[0].process_id.clone()));
        }
        skipped.sort();
        Ok(Corpus {
            origin: origin.into(),
            sequences,
            skipped,
        })
    }

    pub fn sequences(&self) -> &[ActivitySequence] {
        &self.sequences
    }

    pub fn skipped(&self) -> &[SkipRecord] {
        &self.skipped
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.sequences.iter().map(ActivitySequence::len).sum()
    }

    /// Combines several corpora, e.g. from multiple scan roots.
    pub fn merge(origin: impl Into<String>, parts: Vec<Corpus>) -> Result<Self> {
        let mut sequences = Vec::new();
        let mut skipped = Vec::new();
        for part in parts {
            sequences.extend(part.sequences);
            skipped.extend(part.skipped);
        }
        Corpus::new(origin, sequences, skipped)
    }

    /// Serializes the staging format: a JSON list of
    /// `{process_id, source_kind, tokens}` objects.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.sequences).expect("sequence serialization is infallible");
        out.push('\n');
        out
    }

    pub fn from_json(origin: impl Into<String>, text: &str) -> Result<Self> {
        let origin = origin.into();
        let sequences: Vec<ActivitySequence> =
            serde_json::from_str(text).map_err(|e| Error::json(origin.clone(), &e))?;
        if sequences.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Corpus::new(origin, sequences, Vec::new())
    }
}
