//! End-to-end orchestration: preprocess → postag → persons → modality →
//! attitude → report.

use crate::attitude::{
    build_attitude_graph, collect_proposition_polarity, propose_modal_polarity, resolve_holder, AttitudeGraph,
    AttitudeProposal, AttitudeRecord, Holder,
};
use crate::error::{AtStage, Error, Stage, StageError};
use crate::interactive::{
    parse_attitude_transcript, parse_jsonl, to_jsonl, AttitudeChannel, AttitudeTranscriptRow, Console, NameChannel,
    NameTranscriptRow,
};
use crate::lexica::{read_file, Lexica};
use crate::modality::{analyze_sentence, annotate_document, AnnotatedDocument, Label, SentenceAnalysis};
use crate::persons::{extract_reference_names, link_pronouns, mark_persons, PersonEntity, PronounLink, ReferenceNames};
use crate::postag::tag_tokens;
use crate::preprocess::Document;
use crate::report::{distribution, evaluate, parse_gold, AttitudeSummary, Prediction, Report};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

type StageResult<T> = std::result::Result<T, StageError>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    /// `None` uses the lexica compiled into the library.
    pub lexicons: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub records: Option<PathBuf>,
    /// Text report; the JSON report goes next to it with `.json` appended.
    pub report: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub interactive: bool,
    pub names_transcript: Option<PathBuf>,
    pub attitude_transcript: Option<PathBuf>,
    pub debug_tags: bool,
    pub skip_attitude: bool,
}

impl RunConfig {
    pub fn validate(&self) -> StageResult<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string())).at(Stage::Config);
        if self.inputs.is_empty() {
            return fail("no input files");
        }
        if self.interactive && self.names_transcript.is_none() {
            return fail("interactive mode needs --names-transcript to persist its decisions");
        }
        if self.interactive && !self.skip_attitude && self.attitude_transcript.is_none() {
            return fail("interactive mode needs --attitude-transcript to persist its decisions");
        }
        if self.gold.is_some() && self.report.is_none() {
            return fail("--gold needs --report");
        }
        Ok(())
    }
}

/// Per-document switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DocumentOptions {
    pub debug_tags: bool,
    pub attitude: bool,
}

/// Where the human-assisted steps get their answers.
#[derive(Default)]
pub struct Decisions<'c, 'a> {
    pub names: &'c [NameTranscriptRow],
    pub attitude: &'c [AttitudeTranscriptRow],
    pub console: Option<&'c mut Console<'a>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttitudeOutcome {
    pub records: Vec<AttitudeRecord>,
    pub graph: AttitudeGraph,
}

#[derive(Debug, Clone)]
pub struct ProcessedDocument {
    pub id: String,
    pub document: Document,
    pub references: ReferenceNames,
    pub persons: Vec<PersonEntity>,
    pub links: Vec<PronounLink>,
    pub analyses: Vec<SentenceAnalysis>,
    pub attitude: Option<AttitudeOutcome>,
    pub annotated: AnnotatedDocument,
    pub diagnostics: Vec<String>,
    pub name_decisions: Vec<NameTranscriptRow>,
    pub attitude_decisions: Vec<AttitudeTranscriptRow>,
}

impl ProcessedDocument {
    pub fn holder_name(&self, holder: Holder) -> String {
        holder_name(&self.persons, holder)
    }

    pub fn predictions(&self) -> Vec<Prediction> {
        self.annotated
            .records
            .iter()
            .map(|r| Prediction {
                id: r.id.clone(),
                label: r.label,
                lemmas: r.occurrences.iter().map(|o| o.lemma.clone()).collect(),
            })
            .collect()
    }
}

fn holder_name(persons: &[PersonEntity], holder: Holder) -> String {
    match holder {
        Holder::Author => "AUTHOR".to_string(),
        Holder::Person(id) => persons
            .iter()
            .find(|p| p.id == id)
            .map_or_else(|| format!("person {id}"), |p| p.canonical_name.clone()),
    }
}

/// Runs every stage on one text.
pub fn process_document(
    id: &str,
    text: &str,
    lexica: &Lexica,
    options: DocumentOptions,
    decisions: &mut Decisions<'_, '_>,
) -> StageResult<ProcessedDocument> {
    let mut document = Document::new(text, &lexica.abbreviations);
    for sentence in &mut document.sentences {
        tag_tokens(&mut sentence.tokens, &lexica.pos, &lexica.suffixes);
    }

    let references = extract_reference_names(&document);
    let mut names = NameChannel::new(id, decisions.names, decisions.console.as_deref_mut());
    let persons = mark_persons(&document, &lexica.names, &references, &mut names).at(Stage::Persons)?;
    let name_decisions = names.into_recorded();
    let links = link_pronouns(&document, &persons);

    let mut diagnostics = Vec::new();
    let analyses: Vec<SentenceAnalysis> = document
        .sentences
        .iter()
        .map(|s| analyze_sentence(s, &lexica.modality, &lexica.pos, &mut diagnostics))
        .collect();

    let mut attitude_decisions = Vec::new();
    let attitude = if options.attitude {
        let proposals: Vec<AttitudeProposal> = document
            .sentences
            .iter()
            .zip(&analyses)
            .filter(|(_, a)| a.label == Label::Epistemic)
            .map(|(s, a)| {
                let holder = resolve_holder(s.index, &a.occurrences, &persons, &links);
                AttitudeProposal {
                    sentence: s.index,
                    text: document
                        .sentence_text(s)
                        .split_whitespace()
                        .collect::<Vec<_>>()
                        .join(" "),
                    holder,
                    holder_name: holder_name(&persons, holder),
                    modal: propose_modal_polarity(&s.tokens, &a.occurrences, &lexica.downtoners),
                }
            })
            .collect();
        let epistemic: BTreeSet<usize> = proposals.iter().map(|p| p.sentence).collect();
        let mut channel = AttitudeChannel::new(id, decisions.attitude, &epistemic, decisions.console.as_deref_mut())
            .at(Stage::Attitude)?;
        let records = collect_proposition_polarity(&proposals, &mut channel).at(Stage::Attitude)?;
        attitude_decisions = channel.into_recorded();
        let graph = build_attitude_graph(&records);
        Some(AttitudeOutcome { records, graph })
    } else {
        None
    };

    let annotated = annotate_document(
        id,
        &document,
        &persons,
        &links,
        &analyses,
        attitude.as_ref().map(|a| a.records.as_slice()),
        options.debug_tags,
    );
    Ok(ProcessedDocument {
        id: id.to_string(),
        document,
        references,
        persons,
        links,
        analyses,
        attitude,
        annotated,
        diagnostics,
        name_decisions,
        attitude_decisions,
    })
}

/// Everything a run produced, already rendered.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub documents: Vec<ProcessedDocument>,
    pub annotated_text: String,
    pub records_jsonl: String,
    pub report: Report,
    pub diagnostics: Vec<String>,
}

fn document_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read_transcript<T>(
    path: Option<&Path>,
    may_be_missing: bool,
    parse: impl Fn(&str) -> crate::error::Result<Vec<T>>,
) -> crate::error::Result<Vec<T>> {
    match path {
        None => Ok(Vec::new()),
        Some(p) if may_be_missing && !p.exists() => Ok(Vec::new()),
        Some(p) => parse(&read_file(p)?),
    }
}

/// Rows must name a known document; with several inputs they must name one.
fn check_transcript_documents<'r>(
    rows: impl Iterator<Item = (usize, Option<&'r str>, usize)>,
    ids: &[String],
) -> crate::error::Result<()> {
    for (row, document, sentence) in rows {
        match document {
            Some(d) if !ids.iter().any(|id| id == d) => {
                return Err(Error::UnknownSentence {
                    document: Some(d.to_string()),
                    sentence,
                })
            }
            None if ids.len() > 1 => {
                return Err(Error::Transcript {
                    row,
                    message: "rows must name their document when there are several inputs".into(),
                })
            }
            _ => {}
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> StageResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::io(path, e))
        .at(Stage::Output)
}

/// Runs the whole pipeline and writes every requested artifact. Interactive
/// runs ask `console` and process documents one at a time; batch runs
/// process documents in parallel.
pub fn run_pipeline(config: &RunConfig, console: Option<&mut Console<'_>>) -> StageResult<RunOutput> {
    config.validate()?;
    let owned;
    let lexica = match &config.lexicons {
        Some(dir) => {
            owned = Lexica::load_dir(dir).at(Stage::Lexica)?;
            &owned
        }
        None => Lexica::bundled(),
    };

    let mut inputs = Vec::with_capacity(config.inputs.len());
    for path in &config.inputs {
        let id = document_id(path);
        if inputs.iter().any(|(other, _): &(String, String)| *other == id) {
            return Err(Error::Config(format!("two inputs share the document id `{id}`"))).at(Stage::Input);
        }
        inputs.push((id, read_file(path).at(Stage::Input)?));
    }
    let ids: Vec<String> = inputs.iter().map(|(id, _)| id.clone()).collect();

    let name_rows: Vec<NameTranscriptRow> =
        read_transcript(config.names_transcript.as_deref(), config.interactive, parse_jsonl).at(Stage::Persons)?;
    check_transcript_documents(
        name_rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i + 1, r.document.as_deref(), r.sentence)),
        &ids,
    )
    .at(Stage::Persons)?;
    let attitude_rows: Vec<AttitudeTranscriptRow> = if config.skip_attitude {
        Vec::new()
    } else {
        read_transcript(
            config.attitude_transcript.as_deref(),
            config.interactive,
            parse_attitude_transcript,
        )
        .at(Stage::Attitude)?
    };
    check_transcript_documents(
        attitude_rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i + 1, r.document.as_deref(), r.sentence)),
        &ids,
    )
    .at(Stage::Attitude)?;

    let options = DocumentOptions {
        debug_tags: config.debug_tags,
        attitude: !config.skip_attitude,
    };
    let documents: Vec<ProcessedDocument> = match console {
        Some(console) if config.interactive => {
            let mut decisions = Decisions {
                names: &name_rows,
                attitude: &attitude_rows,
                console: Some(console),
            };
            inputs
                .iter()
                .map(|(id, text)| process_document(id, text, lexica, options, &mut decisions))
                .collect::<StageResult<_>>()?
        }
        _ => inputs
            .par_iter()
            .map(|(id, text)| {
                let mut decisions = Decisions {
                    names: &name_rows,
                    attitude: &attitude_rows,
                    console: None,
                };
                process_document(id, text, lexica, options, &mut decisions)
            })
            .collect::<StageResult<_>>()?,
    };

    let several = documents.len() > 1;
    let mut annotated_text = String::new();
    let mut records_jsonl = String::new();
    let mut diagnostics = Vec::new();
    for (i, doc) in documents.iter().enumerate() {
        if several {
            if i > 0 {
                annotated_text.push('\n');
            }
            annotated_text.push_str(&format!("# {}\n", doc.id));
        }
        annotated_text.push_str(&doc.annotated.text);
        records_jsonl.push_str(&to_jsonl(&doc.annotated.records));
        diagnostics.extend(doc.diagnostics.iter().map(|d| format!("{}: {d}", doc.id)));
    }

    let report = build_report(&documents, config.gold.as_deref())?;

    if let Some(path) = &config.out {
        write_file(path, &annotated_text)?;
    }
    if let Some(path) = &config.records {
        write_file(path, &records_jsonl)?;
    }
    if let Some(path) = &config.report {
        write_file(path, &report.to_text())?;
        let mut json_path = path.clone().into_os_string();
        json_path.push(".json");
        write_file(Path::new(&json_path), &report.to_json())?;
    }
    if config.interactive {
        if let Some(path) = &config.names_transcript {
            let rows: Vec<_> = documents.iter().flat_map(|d| d.name_decisions.clone()).collect();
            write_file(path, &to_jsonl(&rows))?;
        }
        if let (Some(path), false) = (&config.attitude_transcript, config.skip_attitude) {
            let rows: Vec<_> = documents.iter().flat_map(|d| d.attitude_decisions.clone()).collect();
            write_file(path, &to_jsonl(&rows))?;
        }
    }

    Ok(RunOutput {
        documents,
        annotated_text,
        records_jsonl,
        report,
        diagnostics,
    })
}

/// Distribution per document and overall, accuracy when a gold file is
/// given, and the attitude groups of every document.
pub fn build_report(documents: &[ProcessedDocument], gold: Option<&Path>) -> StageResult<Report> {
    let labels = |d: &ProcessedDocument| d.analyses.iter().map(|a| a.label).collect::<Vec<_>>();
    let distributions = documents.iter().map(|d| distribution(&d.id, labels(d))).collect();
    let overall = distribution("overall", documents.iter().flat_map(labels));
    let accuracy = match gold {
        Some(path) => {
            let rows = parse_gold(&read_file(path).at(Stage::Report)?, path).at(Stage::Report)?;
            let predictions: Vec<Prediction> = documents.iter().flat_map(ProcessedDocument::predictions).collect();
            Some(evaluate(&predictions, &rows).at(Stage::Report)?)
        }
        None => None,
    };
    let attitude = documents
        .iter()
        .filter_map(|d| {
            let outcome = d.attitude.as_ref()?;
            let names = |set: &BTreeSet<Holder>| set.iter().map(|h| d.holder_name(*h)).collect();
            Some(AttitudeSummary {
                document: d.id.clone(),
                pro: names(&outcome.graph.pro),
                contra: names(&outcome.graph.contra),
                neutral: names(&outcome.graph.neutral),
            })
        })
        .collect();
    Ok(Report {
        distributions,
        overall,
        accuracy,
        attitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TEXT: &str = "Australian and Canadian researchers argue this week in Nature that stromatolites were so diverse and complex that they must have been alive. Martin Brasier of Oxford University is less sanguine, arguing that the structures are more likely chemical precipitates. He also objects to the reasoning in the Nature paper.";

    fn process(attitude: &[AttitudeTranscriptRow]) -> StageResult<ProcessedDocument> {
        let mut decisions = Decisions {
            attitude,
            ..Decisions::default()
        };
        process_document(
            "doc",
            TEXT,
            Lexica::bundled(),
            DocumentOptions {
                debug_tags: false,
                attitude: true,
            },
            &mut decisions,
        )
    }

    #[test]
    fn holders_and_polarity() {
        let doc = process(&[]).unwrap();
        let labels: Vec<Label> = doc.analyses.iter().map(|a| a.label).collect();
        assert_eq!(labels, [Label::Epistemic, Label::Epistemic, Label::NonModal]);
        let records = &doc.attitude.as_ref().unwrap().records;
        assert_eq!(records[0].holder, Holder::Author);
        assert_eq!(records[1].holder_name, "Brasier");
        assert_eq!(records[1].modal, crate::attitude::ModalPolarity::NotM);
        assert!(records
            .iter()
            .all(|r| r.proposition == crate::attitude::PropositionPolarity::Undecided));
    }

    #[test]
    fn transcript_sets_groups() {
        let rows = parse_attitude_transcript(
            "{\"sentence\":0,\"proposition\":\"H\"}\n{\"sentence\":1,\"proposition\":\"H\"}\n",
        )
        .unwrap();
        let doc = process(&rows).unwrap();
        let graph = &doc.attitude.as_ref().unwrap().graph;
        assert!(graph.pro.contains(&Holder::Author));
        assert_eq!(graph.contra.len(), 1);
        assert_eq!(doc.attitude_decisions.len(), 2);
    }

    #[test]
    fn unknown_transcript_sentence_names_the_stage() {
        let rows = parse_attitude_transcript("{\"sentence\":2,\"proposition\":\"H\"}\n").unwrap();
        let err = process(&rows).unwrap_err();
        assert_eq!(err.stage, Stage::Attitude);
    }

    #[test]
    fn config_validation() {
        let mut config = RunConfig::default();
        assert_eq!(config.validate().unwrap_err().stage, Stage::Config);
        config.inputs.push("x.txt".into());
        config.validate().unwrap();
        config.interactive = true;
        assert!(config.validate().is_err());
        config.names_transcript = Some("n.jsonl".into());
        config.attitude_transcript = Some("a.jsonl".into());
        config.validate().unwrap();
    }

    proptest! {
        #[test]
        fn attitude_records_only_for_epistemic_sentences(
            sentences in prop::collection::vec(
                prop::collection::vec(prop::sample::select(vec![
                    "we", "must", "can", "not", "have", "been", "shown", "may", "perhaps", "doubt",
                    "Stanley", "Awramik", "cells", "grow", "shall", "possible", "believe", "it", "will",
                ]), 1..12),
                1..6,
            ),
        ) {
            let text = sentences.iter().map(|s| format!("Then {}.", s.join(" "))).collect::<Vec<_>>().join(" ");
            let doc = process_document(
                "p",
                &text,
                Lexica::bundled(),
                DocumentOptions { debug_tags: false, attitude: true },
                &mut Decisions::default(),
            )
            .unwrap();
            let epistemic: BTreeSet<usize> = doc
                .analyses
                .iter()
                .filter(|a| a.label == Label::Epistemic)
                .map(|a| a.sentence)
                .collect();
            let recorded: BTreeSet<usize> =
                doc.attitude.as_ref().unwrap().records.iter().map(|r| r.sentence).collect();
            prop_assert_eq!(recorded, epistemic);
            for record in &doc.annotated.records {
                prop_assert_eq!(record.attitude.is_some(), record.label == Label::Epistemic);
            }
        }
    }
}
