//! Clone detection for RPA workflows.
//!
//! The pipeline has four stages, one module each:
//!
//! 1. [`ingest`] extracts ordered activity sequences from UiPath XAML files
//!    or from CSV process logs;
//! 2. [`dictionary`] rewrites equivalent activities to shared meta actions;
//! 3. [`similarity`] mines contiguous meta-token sequences shared between
//!    processes;
//! 4. [`report`] ranks them as refactoring candidates and serializes the
//!    result.

pub mod dictionary;
pub mod error;
pub mod ingest;
pub mod report;
pub mod similarity;

pub use dictionary::{
    builtin_dictionary, load_dictionary, normalize, normalize_corpus, ActivityDictionary, DictionaryRule, LookupCase,
    MetaProcess, Normalizer,
};
pub use error::{Error, Result};
pub use ingest::{
    discover_files, extract_activities, ingest_log, scan_corpus, scan_files, ActivitySequence, ColumnMap, Corpus,
    ExtractionConfig, SkipRecord, SourceKind, Token,
};
pub use report::{emit, rank_candidates, OutputFormat, RefactorCandidate, Report, Scoring};
pub use similarity::{
    find_matches, find_matches_pairwise, find_matches_repeats, histogram, pairwise_lcs, Match, MatchMode, MatchOptions,
    MatchSet, Occurrence,
};
