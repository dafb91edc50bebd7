//! Decision channels for the two human-assisted steps (name candidates and
//! proposition polarity), backed by JSON-lines transcripts and an optional
//! plain-text console prompt.
//!
//! A channel answers from its transcript first and only asks the console
//! about the rest; every answer is recorded so the run can be replayed.

use crate::attitude::{AttitudeProposal, ModalPolarity, PropositionChannel, PropositionDecision, PropositionPolarity};
use crate::error::{Error, Result};
use crate::persons::{NameDecider, NameDecision, NameQuery};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NameTranscriptRow {
    pub candidate: String,
    pub sentence: usize,
    pub decision: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttitudeTranscriptRow {
    pub sentence: usize,
    pub proposition: PropositionPolarity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modal: Option<ModalPolarity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
}

/// Parses JSON lines; blank lines are skipped, errors name the 1-based row.
pub fn parse_jsonl<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| Error::Transcript {
                row: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn parse_attitude_transcript(text: &str) -> Result<Vec<AttitudeTranscriptRow>> {
    let rows: Vec<AttitudeTranscriptRow> = parse_jsonl(text)?;
    if let Some(row) = rows
        .iter()
        .position(|r| r.proposition == PropositionPolarity::Undecided)
    {
        return Err(Error::Transcript {
            row: row + 1,
            message: "proposition must be \"H\" or \"notH\"".into(),
        });
    }
    Ok(rows)
}

pub fn to_jsonl<T: Serialize>(rows: &[T]) -> String {
    rows.iter()
        .map(|r| serde_json::to_string(r).expect("transcript row serializes") + "\n")
        .collect()
}

/// Line-oriented prompt over any reader/writer pair.
pub struct Console<'a> {
    input: Box<dyn BufRead + 'a>,
    output: Box<dyn Write + 'a>,
}

impl<'a> Console<'a> {
    pub fn new(input: impl BufRead + 'a, output: impl Write + 'a) -> Self {
        Console {
            input: Box::new(input),
            output: Box::new(output),
        }
    }

    /// Shows `prompt` and reads one trimmed line; `None` at end of input.
    pub fn ask(&mut self, prompt: &str) -> Result<Option<String>> {
        self.output.write_all(prompt.as_bytes()).map_err(Error::Interactive)?;
        self.output.flush().map_err(Error::Interactive)?;
        let mut line = String::new();
        let n = self.input.read_line(&mut line).map_err(Error::Interactive)?;
        Ok((n > 0).then(|| line.trim().to_string()))
    }
}

fn applies_to(row_document: &Option<String>, document: &str) -> bool {
    row_document.as_deref().is_none_or(|d| d == document)
}

/// Name decisions for one document.
pub struct NameChannel<'c, 'a> {
    document: String,
    transcript: &'c [NameTranscriptRow],
    console: Option<&'c mut Console<'a>>,
    recorded: Vec<NameTranscriptRow>,
}

impl<'c, 'a> NameChannel<'c, 'a> {
    pub fn new(document: &str, transcript: &'c [NameTranscriptRow], console: Option<&'c mut Console<'a>>) -> Self {
        NameChannel {
            document: document.to_string(),
            transcript,
            console,
            recorded: Vec::new(),
        }
    }

    /// Every decision taken, in the order asked.
    pub fn into_recorded(self) -> Vec<NameTranscriptRow> {
        self.recorded
    }

    fn ask(&mut self, query: &NameQuery) -> Result<NameDecision> {
        let Some(console) = self.console.as_deref_mut() else {
            return Ok(NameDecision::Reject);
        };
        let prompt = format!(
            "[{} sentence {}] {}\nIs `{}` a person? [y]es / [n]o / =Canonical Name: ",
            self.document, query.sentence, query.sentence_text, query.candidate
        );
        loop {
            let Some(answer) = console.ask(&prompt)? else {
                return Ok(NameDecision::Reject);
            };
            match answer.as_str() {
                "y" | "yes" => return Ok(NameDecision::Accept { canonical_name: None }),
                "" | "n" | "no" => return Ok(NameDecision::Reject),
                other => {
                    if let Some(name) = other.strip_prefix('=').map(str::trim).filter(|n| !n.is_empty()) {
                        return Ok(NameDecision::Accept {
                            canonical_name: Some(name.to_string()),
                        });
                    }
                }
            }
        }
    }
}

impl NameDecider for NameChannel<'_, '_> {
    fn decide(&mut self, query: &NameQuery) -> Result<NameDecision> {
        let replayed = self
            .transcript
            .iter()
            .find(|r| {
                applies_to(&r.document, &self.document)
                    && r.sentence == query.sentence
                    && r.candidate == query.candidate
            })
            .map(|r| match r.decision {
                Verdict::Accept => NameDecision::Accept {
                    canonical_name: r.canonical_name.clone(),
                },
                Verdict::Reject => NameDecision::Reject,
            });
        let decision = match replayed {
            Some(d) => d,
            None => self.ask(query)?,
        };
        let (verdict, canonical_name) = match &decision {
            NameDecision::Accept { canonical_name } => (Verdict::Accept, canonical_name.clone()),
            NameDecision::Reject => (Verdict::Reject, None),
        };
        self.recorded.push(NameTranscriptRow {
            candidate: query.candidate.clone(),
            sentence: query.sentence,
            decision: verdict,
            canonical_name,
            document: Some(self.document.clone()),
        });
        Ok(decision)
    }
}

/// Proposition decisions for one document.
pub struct AttitudeChannel<'c, 'a> {
    document: String,
    transcript: Vec<&'c AttitudeTranscriptRow>,
    console: Option<&'c mut Console<'a>>,
    recorded: Vec<AttitudeTranscriptRow>,
}

impl<'c, 'a> AttitudeChannel<'c, 'a> {
    /// Fails when a transcript row names a sentence of this document that
    /// is not awaiting a decision.
    pub fn new(
        document: &str,
        transcript: &'c [AttitudeTranscriptRow],
        epistemic_sentences: &BTreeSet<usize>,
        console: Option<&'c mut Console<'a>>,
    ) -> Result<Self> {
        let rows: Vec<&AttitudeTranscriptRow> = transcript
            .iter()
            .filter(|r| applies_to(&r.document, document))
            .collect();
        if let Some(row) = rows.iter().find(|r| !epistemic_sentences.contains(&r.sentence)) {
            return Err(Error::UnknownSentence {
                document: Some(document.to_string()),
                sentence: row.sentence,
            });
        }
        Ok(AttitudeChannel {
            document: document.to_string(),
            transcript: rows,
            console,
            recorded: Vec::new(),
        })
    }

    pub fn into_recorded(self) -> Vec<AttitudeTranscriptRow> {
        self.recorded
    }

    fn ask(&mut self, proposal: &AttitudeProposal) -> Result<Option<PropositionDecision>> {
        let Some(console) = self.console.as_deref_mut() else {
            return Ok(None);
        };
        let modal = match proposal.modal {
            ModalPolarity::M => "M",
            ModalPolarity::NotM => "notM",
        };
        let prompt = format!(
            "[{} sentence {}] holder {}, modal part {}\n{}\nProposition? H / notH / empty to skip (append M or notM to override the modal part): ",
            self.document, proposal.sentence, proposal.holder_name, modal, proposal.text
        );
        loop {
            let Some(answer) = console.ask(&prompt)? else {
                return Ok(None);
            };
            let words: Vec<&str> = answer.split_whitespace().collect();
            let proposition = match words.first() {
                None => return Ok(None),
                Some(&"H") => PropositionPolarity::H,
                Some(&"notH") => PropositionPolarity::NotH,
                Some(_) => continue,
            };
            let modal = match words.get(1) {
                None => None,
                Some(&"M") => Some(ModalPolarity::M),
                Some(&"notM") => Some(ModalPolarity::NotM),
                Some(_) => continue,
            };
            return Ok(Some(PropositionDecision { proposition, modal }));
        }
    }
}

impl PropositionChannel for AttitudeChannel<'_, '_> {
    fn decide(&mut self, proposal: &AttitudeProposal) -> Result<Option<PropositionDecision>> {
        let replayed = self
            .transcript
            .iter()
            .find(|r| r.sentence == proposal.sentence)
            .map(|r| PropositionDecision {
                proposition: r.proposition,
                modal: r.modal,
            });
        let decision = match replayed {
            Some(d) => Some(d),
            None => self.ask(proposal)?,
        };
        if let Some(d) = decision {
            self.recorded.push(AttitudeTranscriptRow {
                sentence: proposal.sentence,
                proposition: d.proposition,
                modal: d.modal,
                document: Some(self.document.clone()),
            });
        }
        Ok(decision)
    }
}
