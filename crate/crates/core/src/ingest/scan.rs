use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::xaml::{extract_activities, ExtractWarning, ExtractionConfig};
use super::{ActivitySequence, Corpus, SkipRecord, SourceKind};
use crate::error::{Error, Result};

/// Recursively lists workflow files under `root`, sorted by path.
pub fn discover_files(root: &Path, extension: &str) -> Result<Vec<PathBuf>> {
    fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            Error::io(path, e.into())
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let matches = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case(extension));
        if matches {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

/// Scans a directory tree for workflow files and extracts each one.
pub fn scan_corpus(root: &Path, config: &ExtractionConfig) -> Result<Corpus> {
    let files = discover_files(root, &config.extension)?;
    scan_files(root, files, config)
}

/// Extracts the given files (in any order) into a canonical corpus.
///
/// Files that cannot be read or parsed are recorded as skipped. Process ids
/// are paths relative to `root` with `/` separators.
pub fn scan_files(root: &Path, files: Vec<PathBuf>, config: &ExtractionConfig) -> Result<Corpus> {
    let outcomes: Vec<std::result::Result<ActivitySequence, SkipRecord>> = files
        .par_iter()
        .map(|path| {
            let id = process_id(root, path);
            let parsed = fs::read_to_string(path)
                .map_err(|e| Error::io(path, e))
                .and_then(|text| extract_activities(&text, config));
            match parsed {
                Ok(extraction) => {
                    if extraction.warnings.contains(&ExtractWarning::NoActivities) {
                        log::warn!("{id}: no activities extracted");
                    }
                    Ok(ActivitySequence::new(id, SourceKind::Design, extraction.tokens))
                }
                Err(err) => {
                    log::warn!("{id}: skipped: {err}");
                    Err(SkipRecord {
                        path: id,
                        reason: err.to_string(),
                    })
                }
            }
        })
        .collect();

    let mut sequences = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(seq) => sequences.push(seq),
            Err(skip) => skipped.push(skip),
        }
    }
    if sequences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Corpus::new(root.display().to_string(), sequences, skipped)
}

fn process_id(root: &Path, path: &Path) -> String {
    let relative = path.strip_prefix(root).unwrap_or(path);
    relative
        .components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}
