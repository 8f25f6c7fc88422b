mod support;

use std::fs;
use std::path::Path;

use rpaclone_cli::{execute, parse_args, Stage, EXIT_FAILURE, EXIT_USAGE};
use rpaclone_core::{LookupCase, MatchMode, OutputFormat, Report};
use support::{fixtures, leaf, rpaclone, write_flat, write_workflow, Node};

fn json_report(args: &[&str]) -> Report {
    let mut argv = vec!["rpaclone"];
    argv.extend_from_slice(args);
    let config = parse_args(argv).unwrap();
    let bytes = execute(&config).unwrap();
    Report::from_json(std::str::from_utf8(&bytes).unwrap()).unwrap()
}

fn shared_corpus(dir: &Path) {
    write_flat(
        dir,
        "a.xaml",
        &["ReadRange", "SendOutlookMail", "NClick", "NGetText", "Delay"],
    );
    write_flat(
        dir,
        "b.xaml",
        &["Assign", "SendMail", "Nclick", "NGetText", "WriteLine"],
    );
    write_flat(dir, "c.xaml", &["OpenBrowser", "CloseTab", "KillProcess"]);
}

#[test]
fn defaults() {
    let config = parse_args(["rpaclone", "match", "./corpus"]).unwrap();
    assert_eq!(config.stage, Stage::Match);
    assert_eq!(config.mode, MatchMode::Repeats);
    assert_eq!(config.min_length, 3);
    assert_eq!(config.dictionary, None);
    assert_eq!(config.lookup_case, LookupCase::Insensitive);
    assert_eq!(config.format, OutputFormat::Text);
    assert!(!config.allow_intra);
    assert!(config.warnings.is_empty());
}

#[test]
fn short_min_length_is_accepted_with_a_warning() {
    let config = parse_args(["rpaclone", "report", "x", "--min-length", "1"]).unwrap();
    assert_eq!(config.min_length, 1);
    assert_eq!(config.warnings.len(), 1);

    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let root = dir.path().to_str().unwrap();
    let report = json_report(&["report", root, "--min-length", "2", "--format", "json"]);
    assert_eq!(report.warnings.len(), 1);
    assert!(report.warnings[0].contains("--min-length 2"));
}

#[test]
fn zero_min_length_is_a_usage_error() {
    let err = parse_args(["rpaclone", "report", "x", "--min-length", "0"]).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_USAGE);
}

#[test]
fn unknown_subcommand_exits_with_usage_code() {
    let out = rpaclone(["frobnicate"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = rpaclone(["report", "x", "--mode", "fuzzy"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fuzzy"));
}

#[test]
fn empty_directory_is_an_operational_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = rpaclone(["report", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty corpus"));
}

#[test]
fn missing_input_names_the_path() {
    let out = rpaclone(["scan", "/no/such/place.xaml"]);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/place.xaml"));
}

#[test]
fn missing_dictionary_is_an_operational_error() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let out = rpaclone(["report", dir.path().to_str().unwrap(), "--dictionary", "/no/dict.json"]);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/dict.json"));
}

#[test]
fn no_shared_sequences_is_success_with_empty_histogram() {
    let dir = tempfile::tempdir().unwrap();
    write_flat(dir.path(), "a.xaml", &["ReadRange", "WriteRange", "Delay"]);
    write_flat(dir.path(), "b.xaml", &["OpenBrowser", "CloseTab", "KillProcess"]);
    let out = rpaclone(["report", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Candidates (0 of 0):"), "{text}");
    assert!(text.contains("   Total |        0"), "{text}");
}

#[test]
fn shared_block_is_found_through_the_dictionary() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let report = json_report(&["report", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(report.candidates.len(), 1);
    let m = &report.candidates[0].matched;
    assert_eq!(m.tokens, ["Send Mail", "Click", "Get text"]);
    assert_eq!(m.process_ids(), ["a.xaml", "b.xaml"]);
    assert_eq!(report.summary.process_count, 3);
    assert_eq!(report.histogram.0.into_iter().collect::<Vec<_>>(), [(3, 1)]);
}

#[test]
fn nested_workflows_are_flattened() {
    let dir = tempfile::tempdir().unwrap();
    let body = |x: &str| {
        vec![
            leaf("ReadRange"),
            Node::Body(
                "ForEach<Object>".into(),
                vec![leaf("NClick"), Node::Body("If".into(), vec![leaf(x)])],
            ),
        ]
    };
    write_workflow(dir.path(), "one.xaml", &body("SendMail"));
    write_workflow(dir.path(), "two.xaml", &body("SendOutlookMail"));
    let report = json_report(&["report", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(
        report.candidates[0].matched.tokens,
        ["ReadRange", "Loop", "Click", "Condition", "Send Mail"]
    );
}

#[test]
fn staged_commands_compose_to_the_one_shot_report() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("corpus");
    shared_corpus(&root);
    let corpus_json = dir.path().join("corpus.json");
    let meta_json = dir.path().join("meta.json");
    let s = |p: &Path| p.to_str().unwrap().to_string();

    let out = rpaclone(["scan", &s(&root), "--out", &s(&corpus_json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = rpaclone(["normalize", &s(&corpus_json), "--out", &s(&meta_json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let staged = rpaclone(["match", &s(&meta_json), "--format", "json"]);
    assert!(staged.status.success());
    let one_shot = rpaclone(["report", &s(&root), "--format", "json"]);
    assert!(one_shot.status.success());
    assert_eq!(staged.stdout, one_shot.stdout);

    let from_scan = rpaclone(["report", &s(&corpus_json), "--format", "json"]);
    assert_eq!(from_scan.stdout, one_shot.stdout);
}

#[test]
fn csv_logs_feed_the_same_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("events.csv");
    fs::write(
        &log,
        "case,step,activity\n\
         c1,2,NClick\nc1,1,SendMail\nc1,3,NGetText\n\
         c2,1,SendOutlookMail\nc2,2,Nclick\nc2,3,NGetText\nc2,4,Delay\n",
    )
    .unwrap();
    let log = log.to_str().unwrap();
    let report = json_report(&[
        "report",
        log,
        "--logs",
        "--case-column",
        "case",
        "--order-column",
        "step",
        "--format",
        "json",
    ]);
    assert_eq!(report.candidates.len(), 1);
    assert_eq!(report.candidates[0].matched.tokens, ["Send Mail", "Click", "Get text"]);

    let out = rpaclone(["report", log, "--logs"]);
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("case_id"));
}

#[test]
fn malformed_file_is_skipped_and_listed() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    fs::write(dir.path().join("broken.xaml"), "<Activity><Sequence>").unwrap();
    let report = json_report(&["report", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(report.summary.skipped.len(), 1);
    assert_eq!(report.summary.skipped[0].path, "broken.xaml");
    assert!(report.summary.skipped[0].reason.contains("byte"));
    assert_eq!(report.candidates.len(), 1);
}

#[test]
fn custom_dictionary_is_used_and_named() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let dict = dir.path().join("dict.json");
    fs::write(
        &dict,
        r#"{"name":"tiny","version":"7","rules":[{"meta":"Mail","pattern":["SendMail"]},{"meta":"Mail","pattern":["SendOutlookMail"]},{"meta":"Tap","pattern":["NCLICK"]}]}"#,
    )
    .unwrap();
    let report = json_report(&[
        "report",
        dir.path().to_str().unwrap(),
        "--dictionary",
        dict.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(
        (report.dictionary.name.as_str(), report.dictionary.version.as_str()),
        ("tiny", "7")
    );
    assert_eq!(report.candidates[0].matched.tokens, ["Mail", "Tap", "NGetText"]);
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let root = dir.path().to_str().unwrap();
    let csv = rpaclone(["report", root, "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(
        csv.lines().collect::<Vec<_>>(),
        [
            "rank,score,length,process_count,occurrence_count,tokens,processes",
            "1,6,3,2,2,Send Mail|Click|Get text,a.xaml;b.xaml",
        ]
    );
    let text = String::from_utf8(rpaclone(["report", root]).stdout).unwrap();
    assert!(text.contains("       3 |        1"));
    assert!(text.contains("Send Mail > Click > Get text"));
}

#[test]
fn pairwise_mode_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let report = json_report(&[
        "report",
        dir.path().to_str().unwrap(),
        "--mode",
        "pairwise",
        "--format",
        "json",
    ]);
    assert_eq!(report.parameters.mode, MatchMode::Pairwise);
    assert_eq!(report.candidates[0].matched.tokens, ["Send Mail", "Click", "Get text"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let root = fixtures();
    let root = root.to_str().unwrap();
    let first = rpaclone(["report", root, "--format", "json"]);
    let second = rpaclone(["report", root, "--format", "json"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn single_file_input() {
    let dir = tempfile::tempdir().unwrap();
    shared_corpus(dir.path());
    let out = rpaclone(["scan", dir.path().join("a.xaml").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"a.xaml\""), "{text}");
    assert!(text.contains("SendOutlookMail"));
}
