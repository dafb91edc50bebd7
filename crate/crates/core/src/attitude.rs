//! Attitude records for epistemic sentences and the Pro/Contra/Neutral
//! holder graph.
//!
//! The modal polarity (M / notM) is proposed automatically. The proposition
//! polarity (H / notH) always comes from a decision channel.

use crate::error::Result;
use crate::lexica::{data_lines, read_file, ModalityClass, BUNDLED_DOWNTONERS};
use crate::modality::ModalOccurrence;
use crate::persons::{PersonEntity, PronounLink};
use crate::preprocess::Token;
use crate::tag::Tag;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// How far (in non-punctuation tokens) a downtoner may sit from a trigger.
pub const DOWNTONER_WINDOW: usize = 2;

/// Words that weaken the modal part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Downtoners {
    words: BTreeSet<String>,
}

impl Default for Downtoners {
    fn default() -> Self {
        Self::parse(BUNDLED_DOWNTONERS)
    }
}

impl Downtoners {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&read_file(path.as_ref())?))
    }

    pub fn parse(text: &str) -> Self {
        Downtoners {
            words: data_lines(text).map(|(_, l)| l.trim().to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.words.contains(lemma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModalPolarity {
    M,
    #[serde(rename = "notM")]
    NotM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropositionPolarity {
    H,
    #[serde(rename = "notH")]
    NotH,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Group {
    Pro,
    Contra,
    Neutral,
}

/// Who holds an opinion: the author, or a detected person (entity id).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Holder {
    Author,
    Person(usize),
}

impl Serialize for Holder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Holder::Author => serializer.serialize_str("AUTHOR"),
            Holder::Person(id) => serializer.serialize_u64(*id as u64),
        }
    }
}

/// notM when an epistemic trigger is negated or has a downtoner within
/// [`DOWNTONER_WINDOW`] non-punctuation tokens on either side.
pub fn propose_modal_polarity(
    tokens: &[Token],
    occurrences: &[ModalOccurrence],
    downtoners: &Downtoners,
) -> ModalPolarity {
    let near_downtoner = |at: usize| {
        let content = |t: &&Token| t.tag != Tag::Punct;
        let hit = |t: &Token| downtoners.contains(&t.lemma);
        tokens[..at]
            .iter()
            .rev()
            .filter(content)
            .take(DOWNTONER_WINDOW)
            .any(hit)
            || tokens[at + 1..].iter().filter(content).take(DOWNTONER_WINDOW).any(hit)
    };
    let weakened = occurrences
        .iter()
        .filter(|o| o.class == Some(ModalityClass::Epistemic))
        .any(|o| o.negated || near_downtoner(o.token));
    if weakened {
        ModalPolarity::NotM
    } else {
        ModalPolarity::M
    }
}

fn distance(trigger: usize, range: &std::ops::Range<usize>) -> usize {
    if trigger < range.start {
        range.start - trigger
    } else if trigger >= range.end {
        trigger + 1 - range.end
    } else {
        0
    }
}

/// The person mentioned (or referred to by a linked pronoun) nearest to the
/// first epistemic trigger of the sentence; the author when there is none.
pub fn resolve_holder(
    sentence: usize,
    occurrences: &[ModalOccurrence],
    persons: &[PersonEntity],
    links: &[PronounLink],
) -> Holder {
    let trigger = occurrences
        .iter()
        .find(|o| o.class == Some(ModalityClass::Epistemic))
        .or(occurrences.first())
        .map_or(0, |o| o.token);
    let mentions = persons.iter().flat_map(|p| {
        p.mentions
            .iter()
            .filter(|m| m.sentence == sentence)
            .map(move |m| (distance(trigger, &m.tokens), m.tokens.start, p.id))
    });
    let pronouns = links
        .iter()
        .filter(|l| l.sentence == sentence)
        .map(|l| (distance(trigger, &(l.token..l.token + 1)), l.token, l.antecedent));
    mentions
        .chain(pronouns)
        .min()
        .map_or(Holder::Author, |(_, _, id)| Holder::Person(id))
}

/// An epistemic sentence awaiting its proposition polarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttitudeProposal {
    pub sentence: usize,
    pub text: String,
    pub holder: Holder,
    pub holder_name: String,
    pub modal: ModalPolarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropositionDecision {
    pub proposition: PropositionPolarity,
    /// Overrides the proposed modal polarity.
    pub modal: Option<ModalPolarity>,
}

pub trait PropositionChannel {
    /// `None` leaves the sentence undecided.
    fn decide(&mut self, proposal: &AttitudeProposal) -> Result<Option<PropositionDecision>>;
}

/// Leaves every proposition undecided.
pub struct Undecided;

impl PropositionChannel for Undecided {
    fn decide(&mut self, _proposal: &AttitudeProposal) -> Result<Option<PropositionDecision>> {
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttitudeRecord {
    pub sentence: usize,
    pub holder: Holder,
    pub holder_name: String,
    pub modal: ModalPolarity,
    pub proposition: PropositionPolarity,
    pub group: Group,
}

/// Asks the channel about each proposal, in sentence order.
pub fn collect_proposition_polarity(
    proposals: &[AttitudeProposal],
    channel: &mut dyn PropositionChannel,
) -> Result<Vec<AttitudeRecord>> {
    let mut ordered: Vec<&AttitudeProposal> = proposals.iter().collect();
    ordered.sort_by_key(|p| p.sentence);
    ordered
        .into_iter()
        .map(|p| {
            let decision = channel.decide(p)?;
            let modal = decision.and_then(|d| d.modal).unwrap_or(p.modal);
            let proposition = decision.map_or(PropositionPolarity::Undecided, |d| d.proposition);
            Ok(AttitudeRecord {
                sentence: p.sentence,
                holder: p.holder,
                holder_name: p.holder_name.clone(),
                modal,
                proposition,
                group: assign_group(modal, proposition),
            })
        })
        .collect()
}

/// M(H) and notM(notH) are Pro, M(notH) and notM(H) Contra, anything
/// undecided Neutral.
pub fn assign_group(modal: ModalPolarity, proposition: PropositionPolarity) -> Group {
    use ModalPolarity::*;
    use PropositionPolarity::*;
    match (modal, proposition) {
        (_, Undecided) => Group::Neutral,
        (M, H) | (NotM, NotH) => Group::Pro,
        (M, NotH) | (NotM, H) => Group::Contra,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AttitudeGraph {
    pub pro: BTreeSet<Holder>,
    pub contra: BTreeSet<Holder>,
    pub neutral: BTreeSet<Holder>,
}

impl AttitudeGraph {
    pub fn group_of(&self, holder: Holder) -> Option<Group> {
        if self.pro.contains(&holder) {
            Some(Group::Pro)
        } else if self.contra.contains(&holder) {
            Some(Group::Contra)
        } else if self.neutral.contains(&holder) {
            Some(Group::Neutral)
        } else {
            None
        }
    }
}

/// Each holder joins the group most of its records fall into; a tie for
/// the top count sends it to Neutral. The author is always placed.
pub fn build_attitude_graph(records: &[AttitudeRecord]) -> AttitudeGraph {
    let mut counts: BTreeMap<Holder, [usize; 3]> = BTreeMap::new();
    counts.entry(Holder::Author).or_default();
    for record in records {
        let slot = match record.group {
            Group::Pro => 0,
            Group::Contra => 1,
            Group::Neutral => 2,
        };
        counts.entry(record.holder).or_default()[slot] += 1;
    }
    let mut graph = AttitudeGraph::default();
    for (holder, [pro, contra, neutral]) in counts {
        let set = if pro > contra && pro > neutral {
            &mut graph.pro
        } else if contra > pro && contra > neutral {
            &mut graph.contra
        } else {
            &mut graph.neutral
        };
        set.insert(holder);
    }
    graph
}
