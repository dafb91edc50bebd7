//! Inline annotated text and per-sentence JSON records.

use super::{Label, ModalOccurrence, SentenceAnalysis};
use crate::attitude::{AttitudeRecord, Group, ModalPolarity, PropositionPolarity};
use crate::lexica::ModalityClass;
use crate::persons::{PersonEntity, PronounLink};
use crate::preprocess::{Document, Sentence};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceRecord {
    pub lemma: String,
    pub pattern: String,
    pub negated: bool,
    pub class: Option<ModalityClass>,
    pub token: usize,
}

impl From<&ModalOccurrence> for OccurrenceRecord {
    fn from(o: &ModalOccurrence) -> Self {
        OccurrenceRecord {
            lemma: o.lemma.clone(),
            pattern: o.pattern.to_string(),
            negated: o.negated,
            class: o.class,
            token: o.token,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttitudeSummary {
    pub modal: ModalPolarity,
    pub proposition: PropositionPolarity,
    pub group: Group,
}

/// One line of the JSON-lines sidecar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceRecord {
    pub sentence: usize,
    /// Upper-case class names; empty for a non-modal sentence.
    pub labels: Vec<&'static str>,
    pub occurrences: Vec<OccurrenceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holder: Option<String>,
    pub id: String,
    pub document: String,
    pub label: Label,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attitude: Option<AttitudeSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDocument {
    /// One sentence per line.
    pub text: String,
    pub records: Vec<SentenceRecord>,
}

/// Span markers per sentence: token index → (opening names, closing count).
#[derive(Default)]
struct Markers {
    open: BTreeMap<usize, Vec<String>>,
    close: BTreeMap<usize, usize>,
}

fn person_markers(persons: &[PersonEntity], links: &[PronounLink]) -> BTreeMap<usize, Markers> {
    let mut by_sentence: BTreeMap<usize, Markers> = BTreeMap::new();
    let mut add = |sentence: usize, start: usize, end: usize, name: &str| {
        let m = by_sentence.entry(sentence).or_default();
        m.open.entry(start).or_default().push(name.to_string());
        *m.close.entry(end - 1).or_default() += 1;
    };
    for person in persons {
        for mention in &person.mentions {
            add(
                mention.sentence,
                mention.tokens.start,
                mention.tokens.end,
                &person.canonical_name,
            );
        }
    }
    for link in links {
        if let Some(person) = persons.iter().find(|p| p.id == link.antecedent) {
            add(link.sentence, link.token, link.token + 1, &person.canonical_name);
        }
    }
    by_sentence
}

fn render_sentence(document: &Document, sentence: &Sentence, markers: Option<&Markers>, debug: bool) -> String {
    let mut out = String::new();
    let text = &document.normalized_text;
    for (i, token) in sentence.tokens.iter().enumerate() {
        if i > 0 {
            if debug {
                out.push_str(", ");
            } else if text[sentence.tokens[i - 1].span.end..token.span.start]
                .chars()
                .any(char::is_whitespace)
            {
                out.push(' ');
            }
        }
        if let Some(names) = markers.and_then(|m| m.open.get(&i)) {
            for name in names {
                let _ = write!(out, "<Person Name={name}>");
                if debug {
                    out.push(' ');
                }
            }
        }
        if debug {
            let _ = write!(out, "({}, {})", token.surface, token.tag);
        } else {
            out.push_str(&token.surface);
        }
        if let Some(&count) = markers.and_then(|m| m.close.get(&i)) {
            for _ in 0..count {
                out.push_str(if debug { " </Person>" } else { "</Person>" });
            }
        }
    }
    out
}

/// Renders every sentence on its own line, wrapped in its label tag
/// (non-modal sentences stay bare), and builds the matching records.
/// `attitude` is `None` when the attitude stage was skipped.
pub fn annotate_document(
    id: &str,
    document: &Document,
    persons: &[PersonEntity],
    links: &[PronounLink],
    analyses: &[SentenceAnalysis],
    attitude: Option<&[AttitudeRecord]>,
    debug: bool,
) -> AnnotatedDocument {
    let markers = person_markers(persons, links);
    let by_sentence: BTreeMap<usize, &AttitudeRecord> =
        attitude.unwrap_or(&[]).iter().map(|r| (r.sentence, r)).collect();
    let mut text = String::new();
    let mut records = Vec::with_capacity(analyses.len());
    for (sentence, analysis) in document.sentences.iter().zip(analyses) {
        let body = render_sentence(document, sentence, markers.get(&sentence.index), debug);
        match analysis.label {
            Label::NonModal => text.push_str(&body),
            label => {
                let _ = write!(text, "<{label}>{body}</{label}>");
            }
        }
        text.push('\n');
        let record = by_sentence.get(&sentence.index);
        records.push(SentenceRecord {
            sentence: sentence.index,
            labels: analysis
                .label
                .classes()
                .into_iter()
                .map(|c| match c {
                    ModalityClass::Epistemic => "EPISTEMIC",
                    ModalityClass::Deontic => "DEONTIC",
                })
                .collect(),
            occurrences: analysis.occurrences.iter().map(OccurrenceRecord::from).collect(),
            holder: record.map(|r| r.holder_name.clone()),
            id: format!("{id}:{}", sentence.index),
            document: id.to_string(),
            label: analysis.label,
            text: document
                .sentence_text(sentence)
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" "),
            attitude: record.map(|r| AttitudeSummary {
                modal: r.modal,
                proposition: r.proposition,
                group: r.group,
            }),
        });
    }
    AnnotatedDocument { text, records }
}
