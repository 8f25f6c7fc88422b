//! Mining shared meta-token sequences across processes.
//!
//! Two modes share one [`Match`] definition:
//!
//! - pairwise: the longest common contiguous sequences of every pair of
//!   processes, computed with a suffix automaton per pair;
//! - repeats: every maximal repeat of the whole corpus, mined in one pass
//!   over a generalized suffix array.
//!
//! Both drop anything shorter than the minimum length and return a
//! [`MatchSet`] in canonical order.

mod lcs;
mod repeats;
mod suffix_array;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dictionary::MetaProcess;
use crate::error::{Error, Result};

pub use self::lcs::{find_matches_pairwise, pairwise_lcs, CommonRun};
pub use self::repeats::find_matches_repeats;
pub use self::suffix_array::{lcp_array, suffix_array};

/// Threshold below which shared sequences are not reported.
pub const DEFAULT_MIN_LENGTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub process_id: String,
    pub offset: usize,
}

/// A shared token sequence and every place it was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Match {
    pub tokens: Vec<String>,
    pub occurrences: Vec<Occurrence>,
    pub process_count: usize,
}

impl Match {
    /// Sorts and deduplicates occurrences and derives the process count.
    pub fn new(tokens: Vec<String>, occurrences: impl IntoIterator<Item = Occurrence>) -> Self {
        let occurrences: Vec<Occurrence> = occurrences.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let process_count = occurrences
            .iter()
            .map(|o| o.process_id.as_str())
            .collect::<BTreeSet<_>>()
            .len();
        Match {
            tokens,
            occurrences,
            process_count,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn process_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.occurrences.iter().map(|o| o.process_id.as_str()).collect();
        ids.dedup();
        ids
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    Pairwise,
    #[default]
    Repeats,
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchMode::Pairwise => "pairwise",
            MatchMode::Repeats => "repeats",
        })
    }
}

impl FromStr for MatchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pairwise" => Ok(MatchMode::Pairwise),
            "repeats" => Ok(MatchMode::Repeats),
            other => Err(format!("unknown mode `{other}` (expected pairwise or repeats)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchOptions {
    pub min_length: usize,
    /// Also report sequences repeated inside a single process.
    pub allow_intra: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            min_length: DEFAULT_MIN_LENGTH,
            allow_intra: false,
        }
    }
}

/// Matches of one run in canonical order: longest first, then widest
/// spread over processes, then by token list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchSet {
    pub mode: MatchMode,
    pub min_length: usize,
    pub corpus_fingerprint: String,
    pub matches: Vec<Match>,
}

impl MatchSet {
    /// Merges matches with identical token lists and sorts canonically.
    pub fn new(mode: MatchMode, min_length: usize, corpus: &[MetaProcess], matches: Vec<Match>) -> Self {
        let mut merged: BTreeMap<Vec<String>, BTreeSet<Occurrence>> = BTreeMap::new();
        for m in matches {
            merged.entry(m.tokens).or_default().extend(m.occurrences);
        }
        let mut matches: Vec<Match> = merged
            .into_iter()
            .map(|(tokens, occurrences)| Match::new(tokens, occurrences))
            .collect();
        matches.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then(b.process_count.cmp(&a.process_count))
                .then_with(|| a.tokens.cmp(&b.tokens))
        });
        MatchSet {
            mode,
            min_length,
            corpus_fingerprint: fingerprint(corpus),
            matches,
        }
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    /// Checks every occurrence against the source processes by slice
    /// comparison, along with the length threshold.
    pub fn verify(&self, corpus: &[MetaProcess]) -> std::result::Result<(), String> {
        let by_id: HashMap<&str, &MetaProcess> = corpus.iter().map(|p| (p.process_id.as_str(), p)).collect();
        for m in &self.matches {
            if m.len() < self.min_length {
                return Err(format!("match {:?} is shorter than {}", m.tokens, self.min_length));
            }
            for occ in &m.occurrences {
                let process = by_id
                    .get(occ.process_id.as_str())
                    .ok_or_else(|| format!("unknown process {}", occ.process_id))?;
                let slice = process.tokens.get(occ.offset..occ.offset + m.len());
                if slice != Some(m.tokens.as_slice()) {
                    return Err(format!("occurrence {occ:?} does not hold {:?}", m.tokens));
                }
            }
        }
        Ok(())
    }
}

/// Dispatches to the chosen mining mode.
pub fn find_matches(corpus: &[MetaProcess], mode: MatchMode, options: MatchOptions) -> Result<MatchSet> {
    match mode {
        MatchMode::Pairwise => find_matches_pairwise(corpus, options.min_length),
        MatchMode::Repeats => find_matches_repeats(corpus, options.min_length, options.allow_intra),
    }
}

/// Number of matches per token-list length, ascending by length.
pub fn histogram(matches: &MatchSet) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for m in &matches.matches {
        *counts.entry(m.len()).or_insert(0) += 1;
    }
    counts
}

/// SHA-256 over the processes in `process_id` order, every field
/// length-prefixed.
pub fn fingerprint(corpus: &[MetaProcess]) -> String {
    let mut ordered: Vec<&MetaProcess> = corpus.iter().collect();
    ordered.sort_by(|a, b| a.process_id.cmp(&b.process_id));
    let mut hasher = Sha256::new();
    let mut field = |bytes: &[u8]| {
        hasher.update((bytes.len() as u64).to_le_bytes());
        hasher.update(bytes);
    };
    for process in ordered {
        field(process.process_id.as_bytes());
        field(&(process.tokens.len() as u64).to_le_bytes());
        for token in &process.tokens {
            field(token.as_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

pub(crate) fn require_processes(corpus: &[MetaProcess], needed: usize) -> Result<()> {
    if corpus.len() < needed {
        Err(Error::TooFewProcesses)
    } else {
        Ok(())
    }
}

/// Corpus with tokens replaced by dense ids.
pub(crate) struct Encoded<'a> {
    pub names: Vec<&'a str>,
    pub processes: Vec<Vec<u32>>,
}

impl<'a> Encoded<'a> {
    pub fn new(corpus: &'a [MetaProcess]) -> Self {
        let mut ids: HashMap<&'a str, u32> = HashMap::new();
        let mut names = Vec::new();
        let processes = corpus
            .iter()
            .map(|p| {
                p.tokens
                    .iter()
                    .map(|t| {
                        *ids.entry(t.as_str()).or_insert_with(|| {
                            names.push(t.as_str());
                            (names.len() - 1) as u32
                        })
                    })
                    .collect()
            })
            .collect();
        Encoded { names, processes }
    }

    pub fn decode(&self, ids: &[u32]) -> Vec<String> {
        ids.iter().map(|&id| self.names[id as usize].to_string()).collect()
    }
}
