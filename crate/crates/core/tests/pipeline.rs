use modality_core::attitude::{Holder, PropositionPolarity};
use modality_core::interactive::{parse_attitude_transcript, parse_jsonl, Console, NameTranscriptRow, Verdict};
use modality_core::{run_pipeline, Label, RunConfig, Stage};
use std::path::{Path, PathBuf};
use tempfile::TempDir;

const THANKS: &str = "We thank the Anna Karenina Foundation for support. The samples may be contaminated.\n";

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn config(dir: &TempDir, inputs: &[(&str, &str)]) -> RunConfig {
    RunConfig {
        inputs: inputs
            .iter()
            .map(|(name, text)| write(dir.path(), name, text))
            .collect(),
        out: Some(dir.path().join("out.txt")),
        records: Some(dir.path().join("records.jsonl")),
        ..RunConfig::default()
    }
}

#[test]
fn missing_lexicon_dir_is_a_lexica_error() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.lexicons = Some(dir.path().join("nowhere"));
    let err = run_pipeline(&cfg, None).unwrap_err();
    assert_eq!(err.stage, Stage::Lexica);
    assert!(err.to_string().starts_with("lexica: "), "{err}");
    assert!(!dir.path().join("out.txt").exists());
}

#[test]
fn duplicate_document_ids_are_rejected() {
    let dir = TempDir::new().unwrap();
    std::fs::create_dir(dir.path().join("sub")).unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.inputs.push(write(&dir.path().join("sub"), "a.txt", THANKS));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Input);
}

#[test]
fn gold_needs_a_report_path() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.gold = Some(write(dir.path(), "gold.tsv", "a:0\tNON-MODAL\n"));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Config);
}

#[test]
fn unknown_gold_ids_fail_the_report() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.report = Some(dir.path().join("report.txt"));
    cfg.gold = Some(write(dir.path(), "gold.tsv", "a:7\tNON-MODAL\n"));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Report);
}

#[test]
fn batch_transcript_must_exist() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.attitude_transcript = Some(dir.path().join("missing.jsonl"));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Attitude);
}

#[test]
fn transcript_rows_must_name_a_known_document() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS), ("b.txt", THANKS)]);
    cfg.attitude_transcript = Some(write(dir.path(), "t.jsonl", "{\"sentence\":1,\"proposition\":\"H\"}\n"));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Attitude);

    cfg.attitude_transcript = Some(write(
        dir.path(),
        "t.jsonl",
        "{\"sentence\":1,\"proposition\":\"H\",\"document\":\"c\"}\n",
    ));
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Attitude);

    cfg.attitude_transcript = Some(write(
        dir.path(),
        "t.jsonl",
        "{\"sentence\":1,\"proposition\":\"H\",\"document\":\"b\"}\n",
    ));
    let output = run_pipeline(&cfg, None).unwrap();
    let b = output.documents.iter().find(|d| d.id == "b").unwrap();
    assert_eq!(
        b.attitude.as_ref().unwrap().records[0].proposition,
        PropositionPolarity::H
    );
}

#[test]
fn skipping_attitude_keeps_labels_and_reports() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.skip_attitude = true;
    cfg.report = Some(dir.path().join("report.txt"));
    let output = run_pipeline(&cfg, None).unwrap();
    assert_eq!(output.report.overall.count(Label::Epistemic), 1);
    assert!(output.report.attitude.is_empty());
    let records = std::fs::read_to_string(dir.path().join("records.jsonl")).unwrap();
    assert_eq!(records.lines().count(), 2);
    assert!(!records.contains("\"attitude\""));
    assert!(dir.path().join("report.txt.json").exists());
}

#[test]
fn several_documents_get_headers_in_input_order() {
    let dir = TempDir::new().unwrap();
    let cfg = config(&dir, &[("zeta.txt", THANKS), ("alpha.txt", "The cell divides.\n")]);
    run_pipeline(&cfg, None).unwrap();
    let out = std::fs::read_to_string(dir.path().join("out.txt")).unwrap();
    let zeta = out.find("# zeta\n").unwrap();
    let alpha = out.find("# alpha\n").unwrap();
    assert!(zeta < alpha);
}

#[test]
fn interactive_answers_are_persisted_and_replayable() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("thanks.txt", THANKS)]);
    cfg.interactive = true;
    cfg.names_transcript = Some(dir.path().join("names.jsonl"));
    cfg.attitude_transcript = Some(dir.path().join("attitude.jsonl"));

    let mut prompts = Vec::new();
    let answers = "=Karenina\nnotH notM\n";
    let first = {
        let mut console = Console::new(answers.as_bytes(), &mut prompts);
        run_pipeline(&cfg, Some(&mut console)).unwrap()
    };
    let prompts = String::from_utf8(prompts).unwrap();
    assert!(prompts.contains("Anna Karenina Foundation"), "{prompts}");

    let doc = &first.documents[0];
    assert_eq!(doc.persons.len(), 1);
    assert_eq!(doc.persons[0].canonical_name, "Karenina");
    let record = &doc.attitude.as_ref().unwrap().records[0];
    assert_eq!(record.proposition, PropositionPolarity::NotH);
    assert!(doc.attitude.as_ref().unwrap().graph.pro.contains(&Holder::Author));

    let names: Vec<NameTranscriptRow> =
        parse_jsonl(&std::fs::read_to_string(dir.path().join("names.jsonl")).unwrap()).unwrap();
    assert_eq!(names.len(), 1);
    assert_eq!(names[0].decision, Verdict::Accept);
    let attitude =
        parse_attitude_transcript(&std::fs::read_to_string(dir.path().join("attitude.jsonl")).unwrap()).unwrap();
    assert_eq!(attitude.len(), 1);

    cfg.interactive = false;
    let replay = run_pipeline(&cfg, None).unwrap();
    assert_eq!(replay.annotated_text, first.annotated_text);
    assert_eq!(replay.records_jsonl, first.records_jsonl);
}

#[test]
fn interactive_mode_needs_transcript_paths() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(&dir, &[("a.txt", THANKS)]);
    cfg.interactive = true;
    assert_eq!(run_pipeline(&cfg, None).unwrap_err().stage, Stage::Config);
}
