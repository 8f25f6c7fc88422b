use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ActivityDictionary;
use crate::ingest::{ActivitySequence, Corpus};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LookupCase {
    #[default]
    Insensitive,
    Sensitive,
}

impl fmt::Display for LookupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LookupCase::Insensitive => "insensitive",
            LookupCase::Sensitive => "sensitive",
        })
    }
}

impl FromStr for LookupCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "insensitive" => Ok(LookupCase::Insensitive),
            "sensitive" => Ok(LookupCase::Sensitive),
            other => Err(format!(
                "unknown case mode `{other}` (expected insensitive or sensitive)"
            )),
        }
    }
}

impl LookupCase {
    fn fold(self, name: &str) -> String {
        match self {
            LookupCase::Insensitive => name.to_lowercase(),
            LookupCase::Sensitive => name.to_string(),
        }
    }
}

/// A process after dictionary abstraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaProcess {
    pub process_id: String,
    /// Number of raw activities the process had before normalization.
    pub activity_count: usize,
    pub tokens: Vec<String>,
}

impl MetaProcess {
    pub fn new<S: Into<String>>(process_id: impl Into<String>, tokens: impl IntoIterator<Item = S>) -> Self {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        MetaProcess {
            process_id: process_id.into(),
            activity_count: tokens.len(),
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

/// A stretch of input consumed in one normalization step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
    /// Index of the applied rule, `None` for a pass-through token.
    pub rule: Option<usize>,
}

/// A dictionary prepared for lookup.
///
/// Candidates for each leading activity are kept sorted by pattern length
/// (longest first), then by dictionary order.
#[derive(Debug, Clone)]
pub struct Normalizer<'d> {
    dictionary: &'d ActivityDictionary,
    case: LookupCase,
    patterns: Vec<Vec<String>>,
    by_first: HashMap<String, Vec<usize>>,
}

impl<'d> Normalizer<'d> {
    pub fn new(dictionary: &'d ActivityDictionary, case: LookupCase) -> Self {
        let patterns: Vec<Vec<String>> = dictionary
            .rules()
            .iter()
            .map(|r| r.pattern.iter().map(|p| case.fold(p)).collect())
            .collect();
        let mut by_first: HashMap<String, Vec<usize>> = HashMap::new();
        for (idx, pattern) in patterns.iter().enumerate() {
            by_first.entry(pattern[0].clone()).or_default().push(idx);
        }
        for candidates in by_first.values_mut() {
            candidates.sort_by_key(|&idx| (std::cmp::Reverse(patterns[idx].len()), idx));
        }
        Normalizer {
            dictionary,
            case,
            patterns,
            by_first,
        }
    }

    pub fn case(&self) -> LookupCase {
        self.case
    }

    /// Splits `tokens` into rule applications and pass-throughs, left to right.
    pub fn segments<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<Segment> {
        let folded: Vec<String> = tokens.iter().map(|t| self.case.fold(t.as_ref())).collect();
        let mut segments = Vec::with_capacity(folded.len());
        let mut pos = 0;
        while pos < folded.len() {
            let hit = self.by_first.get(&folded[pos]).and_then(|candidates| {
                candidates.iter().copied().find(|&idx| {
                    let pattern = &self.patterns[idx];
                    folded[pos..].starts_with(pattern)
                })
            });
            let segment = match hit {
                Some(idx) => Segment {
                    start: pos,
                    len: self.patterns[idx].len(),
                    rule: Some(idx),
                },
                None => Segment {
                    start: pos,
                    len: 1,
                    rule: None,
                },
            };
            pos += segment.len;
            segments.push(segment);
        }
        segments
    }

    pub fn apply<S: AsRef<str>>(&self, tokens: &[S]) -> Vec<String> {
        self.segments(tokens)
            .into_iter()
            .map(|seg| match seg.rule {
                Some(idx) => self.dictionary.rules()[idx].meta_action.clone(),
                None => tokens[seg.start].as_ref().to_string(),
            })
            .collect()
    }

    pub fn normalize(&self, sequence: &ActivitySequence) -> MetaProcess {
        MetaProcess {
            process_id: sequence.process_id.clone(),
            activity_count: sequence.len(),
            tokens: self.apply(&sequence.tokens),
        }
    }

    /// Re-applies the dictionary to an already abstracted process.
    pub fn renormalize(&self, process: &MetaProcess) -> MetaProcess {
        MetaProcess {
            process_id: process.process_id.clone(),
            activity_count: process.activity_count,
            tokens: self.apply(&process.tokens),
        }
    }
}

pub fn normalize(sequence: &ActivitySequence, dictionary: &ActivityDictionary, case: LookupCase) -> MetaProcess {
    Normalizer::new(dictionary, case).normalize(sequence)
}

/// Normalizes every sequence of the corpus, keeping corpus order.
pub fn normalize_corpus(corpus: &Corpus, dictionary: &ActivityDictionary, case: LookupCase) -> Vec<MetaProcess> {
    let normalizer = Normalizer::new(dictionary, case);
    corpus.sequences().iter().map(|s| normalizer.normalize(s)).collect()
}
