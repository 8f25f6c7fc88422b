//! Command-line pipeline: scan, normalize, match and report.
//!
//! Each stage can run alone and writes JSON the next stage reads back, or
//! `report` runs everything in one go. Exit codes: 0 on success (including
//! zero matches), 1 on operational errors, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use rpaclone_core::report::{CorpusSummary, DictionaryIdentity, RunParameters};
use rpaclone_core::similarity::DEFAULT_MIN_LENGTH;
use rpaclone_core::{
    builtin_dictionary, emit, find_matches, ingest_log, load_dictionary, normalize_corpus, scan_corpus, scan_files,
    ActivityDictionary, ColumnMap, Corpus, ExtractionConfig, LookupCase, MatchMode, MatchOptions, MetaProcess,
    OutputFormat, Report, Scoring, SkipRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rpaclone",
    version,
    about = "Find repeated activity sequences across UiPath workflows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract activity sequences and print them as corpus JSON
    Scan(IngestArgs),
    /// Apply the activity dictionary and print meta-process JSON
    Normalize {
        #[command(flatten)]
        ingest: IngestArgs,
        #[command(flatten)]
        dictionary: DictionaryArgs,
    },
    /// Mine shared sequences from raw or normalized inputs
    Match(PipelineArgs),
    /// Run the whole pipeline and print the report
    Report(PipelineArgs),
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Directories or .xaml files, CSV logs with --logs, or JSON from an earlier stage
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Treat inputs as CSV process logs
    #[arg(long)]
    logs: bool,
    #[arg(long, default_value = "case_id", value_name = "NAME")]
    case_column: String,
    #[arg(long, default_value = "activity", value_name = "NAME")]
    activity_column: String,
    /// Column ordering rows within a case (default: row order)
    #[arg(long, value_name = "NAME")]
    order_column: Option<String>,
    /// Workflow file extension picked up when scanning directories
    #[arg(long, default_value = "xaml")]
    extension: String,
    /// Extra namespace URI whose elements are activities (repeatable)
    #[arg(long = "activity-namespace", value_name = "URI")]
    activity_namespaces: Vec<String>,
    /// Extra un-prefixed element name treated as an activity (repeatable)
    #[arg(long = "core-activity", value_name = "NAME")]
    core_activities: Vec<String>,
    /// Extra element name never treated as an activity (repeatable)
    #[arg(long = "skip-element", value_name = "NAME")]
    skip_elements: Vec<String>,
    /// Write output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DictionaryArgs {
    /// Dictionary JSON file (default: builtin UiPath dictionary)
    #[arg(long, value_name = "PATH")]
    dictionary: Option<PathBuf>,
    /// Activity-name comparison when applying the dictionary: insensitive or sensitive
    #[arg(long = "case", default_value = "insensitive", value_parser = parse_with::<LookupCase>)]
    lookup_case: LookupCase,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    #[command(flatten)]
    ingest: IngestArgs,
    #[command(flatten)]
    dictionary: DictionaryArgs,
    /// Mining strategy: repeats (suffix array over all processes) or pairwise
    #[arg(long, default_value = "repeats", value_parser = parse_with::<MatchMode>)]
    mode: MatchMode,
    /// Shortest sequence reported
    #[arg(long, default_value_t = DEFAULT_MIN_LENGTH, value_parser = parse_min_length)]
    min_length: usize,
    /// Output format: text, json or csv
    #[arg(long, default_value = "text", value_parser = parse_with::<OutputFormat>)]
    format: OutputFormat,
    /// Also report sequences repeated inside a single process
    #[arg(long)]
    allow_intra: bool,
    /// Ranking: length_times_processes, length_times_occurrences or length
    #[arg(long, default_value = "length_times_processes", value_parser = parse_with::<Scoring>)]
    scoring: Scoring,
    /// Candidates listed in text output
    #[arg(long, default_value_t = 20)]
    top: usize,
}

fn parse_min_length(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".to_string()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_with<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Scan,
    Normalize,
    Match,
    Report,
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub stage: Stage,
    pub inputs: Vec<PathBuf>,
    pub logs: bool,
    pub columns: ColumnMap,
    pub extraction: ExtractionConfig,
    pub dictionary: Option<PathBuf>,
    pub lookup_case: LookupCase,
    pub mode: MatchMode,
    pub min_length: usize,
    pub format: OutputFormat,
    pub allow_intra: bool,
    pub scoring: Scoring,
    pub top: usize,
    pub out: Option<PathBuf>,
    /// Problems with the arguments that do not stop the run.
    pub warnings: Vec<String>,
}

impl RunConfig {
    fn from_pipeline(stage: Stage, p: PipelineArgs) -> Self {
        let options = (p.mode, p.min_length, p.format, p.allow_intra, p.scoring, p.top);
        RunConfig::from_parts(stage, p.ingest, Some(p.dictionary), Some(options))
    }

    fn from_parts(
        stage: Stage,
        ingest: IngestArgs,
        dictionary: Option<DictionaryArgs>,
        pipeline: Option<(MatchMode, usize, OutputFormat, bool, Scoring, usize)>,
    ) -> Self {
        let mut extraction = ExtractionConfig {
            extension: ingest.extension,
            ..ExtractionConfig::default()
        };
        extraction.activity_namespaces.extend(ingest.activity_namespaces);
        extraction.core_activities.extend(ingest.core_activities);
        extraction.structural.extend(ingest.skip_elements);
        let (dictionary, lookup_case) = match dictionary {
            Some(d) => (d.dictionary, d.lookup_case),
            None => (None, LookupCase::default()),
        };
        let (mode, min_length, format, allow_intra, scoring, top) = pipeline.unwrap_or((
            MatchMode::default(),
            DEFAULT_MIN_LENGTH,
            OutputFormat::default(),
            false,
            Scoring::default(),
            20,
        ));
        let mut warnings = Vec::new();
        if min_length < DEFAULT_MIN_LENGTH {
            warnings.push(format!(
                "--min-length {min_length} is below the recommended minimum of {DEFAULT_MIN_LENGTH} activities"
            ));
        }
        RunConfig {
            stage,
            inputs: ingest.inputs,
            logs: ingest.logs,
            columns: ColumnMap {
                case_id: ingest.case_column,
                activity: ingest.activity_column,
                order: ingest.order_column,
            },
            extraction,
            dictionary,
            lookup_case,
            mode,
            min_length,
            format,
            allow_intra,
            scoring,
            top,
            out: ingest.out,
            warnings,
        }
    }
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(match cli.command {
        Command::Scan(ingest) => RunConfig::from_parts(Stage::Scan, ingest, None, None),
        Command::Normalize { ingest, dictionary } => {
            RunConfig::from_parts(Stage::Normalize, ingest, Some(dictionary), None)
        }
        Command::Match(p) => RunConfig::from_pipeline(Stage::Match, p),
        Command::Report(p) => RunConfig::from_pipeline(Stage::Report, p),
    })
}

/// Normalized processes as written by `normalize` and read by `match`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaDocument {
    pub dictionary: DictionaryIdentity,
    pub lookup_case: LookupCase,
    pub processes: Vec<MetaProcess>,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

fn fail(context: impl std::fmt::Display, err: impl std::fmt::Display) -> CliError {
    CliError(format!("{context}: {err}"))
}

enum Loaded {
    Raw(Corpus),
    Meta(MetaDocument),
}

fn load_input(path: &Path, config: &RunConfig) -> Result<Loaded, CliError> {
    let shown = path.display();
    if config.logs {
        let text = fs::read_to_string(path).map_err(|e| fail(&shown, e))?;
        let mut corpus = ingest_log(&text, &config.columns).map_err(|e| fail(&shown, e))?;
        corpus.origin = shown.to_string();
        return Ok(Loaded::Raw(corpus));
    }
    if path.is_dir() {
        return scan_corpus(path, &config.extraction)
            .map(Loaded::Raw)
            .map_err(|e| fail(&shown, e));
    }
    let extension = path.extension().and_then(|e| e.to_str()).unwrap_or_default();
    if extension.eq_ignore_ascii_case("json") {
        let text = fs::read_to_string(path).map_err(|e| fail(&shown, e))?;
        if text.trim_start().starts_with('[') {
            return Corpus::from_json(shown.to_string(), &text)
                .map(Loaded::Raw)
                .map_err(|e| fail(&shown, e));
        }
        let doc: MetaDocument = serde_json::from_str(&text).map_err(|e| fail(&shown, e))?;
        return Ok(Loaded::Meta(doc));
    }
    if extension.eq_ignore_ascii_case(&config.extraction.extension) {
        let root = path.parent().unwrap_or_else(|| Path::new("."));
        return scan_files(root, vec![path.to_path_buf()], &config.extraction)
            .map(Loaded::Raw)
            .map_err(|e| fail(&shown, e));
    }
    if !path.exists() {
        return Err(fail(&shown, "no such file or directory"));
    }
    Err(fail(
        &shown,
        "unsupported input (expected a directory, .xaml, .json or --logs CSV)",
    ))
}

fn load_inputs(config: &RunConfig) -> Result<Loaded, CliError> {
    let mut raw = Vec::new();
    let mut meta = Vec::new();
    for path in &config.inputs {
        match load_input(path, config)? {
            Loaded::Raw(corpus) => raw.push(corpus),
            Loaded::Meta(doc) => meta.push((path, doc)),
        }
    }
    match (raw.is_empty(), meta.len()) {
        (false, 0) => {
            let origin = config
                .inputs
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let corpus = if raw.len() == 1 {
                raw.pop().expect("one corpus")
            } else {
                Corpus::merge(origin.clone(), raw).map_err(|e| fail(&origin, e))?
            };
            Ok(Loaded::Raw(corpus))
        }
        (true, 1) => Ok(Loaded::Meta(meta.pop().expect("one document").1)),
        (true, _) => Err(CliError("normalized inputs must be passed as a single file".into())),
        (false, _) => Err(fail(meta[0].0.display(), "cannot mix normalized and raw inputs")),
    }
}

fn dictionary(config: &RunConfig) -> Result<ActivityDictionary, CliError> {
    match &config.dictionary {
        Some(path) => load_dictionary(path).map_err(|e| fail(format!("--dictionary {}", path.display()), e)),
        None => Ok(builtin_dictionary()),
    }
}

fn normalized(corpus: &Corpus, config: &RunConfig) -> Result<MetaDocument, CliError> {
    let dict = dictionary(config)?;
    Ok(MetaDocument {
        dictionary: DictionaryIdentity::from(&dict),
        lookup_case: config.lookup_case,
        processes: normalize_corpus(corpus, &dict, config.lookup_case),
    })
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serialization is infallible");
    out.push(b'\n');
    out
}

/// Builds the report for `match`/`report` without emitting it.
pub fn build_report(config: &RunConfig) -> Result<Report, CliError> {
    let (document, skipped): (MetaDocument, Vec<SkipRecord>) = match load_inputs(config)? {
        Loaded::Raw(corpus) => (normalized(&corpus, config)?, corpus.skipped().to_vec()),
        Loaded::Meta(doc) => (doc, Vec::new()),
    };
    let options = MatchOptions {
        min_length: config.min_length,
        allow_intra: config.allow_intra,
    };
    let matches =
        find_matches(&document.processes, config.mode, options).map_err(|e| fail(config.inputs[0].display(), e))?;
    Ok(Report::new(
        CorpusSummary::new(&document.processes, &skipped),
        document.dictionary,
        RunParameters {
            mode: config.mode,
            min_length: config.min_length,
            lookup_case: document.lookup_case,
            allow_intra: config.allow_intra,
            scoring: config.scoring,
        },
        &matches,
        config.warnings.clone(),
    ))
}

/// Runs one stage and returns the bytes it would write.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    match config.stage {
        Stage::Scan => match load_inputs(config)? {
            Loaded::Raw(corpus) => Ok(corpus.to_json().into_bytes()),
            Loaded::Meta(_) => Err(CliError("scan expects raw inputs, not normalized JSON".into())),
        },
        Stage::Normalize => match load_inputs(config)? {
            Loaded::Raw(corpus) => Ok(to_json(&normalized(&corpus, config)?)),
            Loaded::Meta(_) => Err(CliError("input is already normalized".into())),
        },
        Stage::Match | Stage::Report => {
            let report = build_report(config)?;
            let bytes = match config.format {
                OutputFormat::Text => rpaclone_core::report::emit_text(&report, config.top).into_bytes(),
                format => emit(&report, format).map_err(|e| fail("emit", e))?,
            };
            Ok(bytes)
        }
    }
}

/// Runs a stage, writes its output and returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    for warning in &config.warnings {
        eprintln!("warning: {warning}");
    }
    let result = execute(config).and_then(|bytes| match &config.out {
        Some(path) => fs::write(path, bytes).map_err(|e| fail(path.display(), e)),
        None => std::io::stdout().write_all(&bytes).map_err(|e| fail("stdout", e)),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_FAILURE
        }
    }
}
