//! Modality triggers, the modal-verb collocation automaton and sentence
//! labels.

mod annotate;

pub use annotate::{annotate_document, AnnotatedDocument, SentenceRecord};

use crate::lexica::{LexCategory, LexClass, ModalityClass, ModalityLexicon, PosLexicon};
use crate::preprocess::{Sentence, Token};
use crate::tag::Tag;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// At most this many adverbs may sit between a modal verb and its auxiliaries.
pub const MAX_SKIPPED_ADVERBS: usize = 2;
/// At most this many negators may sit between a modal verb and its auxiliaries.
pub const MAX_SKIPPED_NEGATIONS: usize = 1;

/// Auxiliary sequences that make a modal verb epistemic, longest first.
pub const COLLOCATIONS: [(PatternKind, &[Tag]); 4] = [
    (PatternKind::HaveBeenVpr, &[Tag::Have, Tag::Been, Tag::Vpr]),
    (PatternKind::HaveBeen, &[Tag::Have, Tag::Been]),
    (PatternKind::HaveVpa, &[Tag::Have, Tag::Vpa]),
    (PatternKind::BeVpr, &[Tag::Be, Tag::Vpr]),
];

/// Modal verbs with a fixed reading whatever their context.
pub fn unconditional_reading(lemma: &str) -> Option<ModalityClass> {
    match lemma {
        "could" | "may" | "might" | "will" | "would" => Some(ModalityClass::Epistemic),
        "shall" => Some(ModalityClass::Deontic),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    HaveBeenVpr,
    HaveBeen,
    HaveVpa,
    BeVpr,
    UncondEpistemic,
    UncondDeontic,
    FallbackDeontic,
    /// A negated `can` outside every collocation: no modal reading.
    FallbackNonModal,
    LexMarker,
}

impl PatternKind {
    pub const ALL: [PatternKind; 9] = [
        PatternKind::HaveBeenVpr,
        PatternKind::HaveBeen,
        PatternKind::HaveVpa,
        PatternKind::BeVpr,
        PatternKind::UncondEpistemic,
        PatternKind::UncondDeontic,
        PatternKind::FallbackDeontic,
        PatternKind::FallbackNonModal,
        PatternKind::LexMarker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::HaveBeenVpr => "MV_HAVE_BEEN_VPR",
            PatternKind::HaveBeen => "MV_HAVE_BEEN",
            PatternKind::HaveVpa => "MV_HAVE_VPA",
            PatternKind::BeVpr => "MV_BE_VPR",
            PatternKind::UncondEpistemic => "UNCOND_EPISTEMIC",
            PatternKind::UncondDeontic => "UNCOND_DEONTIC",
            PatternKind::FallbackDeontic => "FALLBACK_DEONTIC",
            PatternKind::FallbackNonModal => "FALLBACK_NON_MODAL",
            PatternKind::LexMarker => "LEX_MARKER",
        }
    }

    pub fn is_collocation(self) -> bool {
        matches!(
            self,
            PatternKind::HaveBeenVpr | PatternKind::HaveBeen | PatternKind::HaveVpa | PatternKind::BeVpr
        )
    }
}

/// The automaton path an occurrence took. Negated paths render with a
/// `neg` prefix, e.g. `negMV_HAVE_VPA`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub kind: PatternKind,
    pub negated: bool,
}

impl Pattern {
    pub fn new(kind: PatternKind, negated: bool) -> Self {
        Pattern { kind, negated }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("neg")?;
        }
        f.write_str(self.kind.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negated, rest) = match s.strip_prefix("neg") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        PatternKind::ALL
            .into_iter()
            .find(|k| k.name() == rest)
            .map(|kind| Pattern { kind, negated })
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of the modal-verb automaton for one trigger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub pattern: Pattern,
    pub class: Option<ModalityClass>,
    pub diagnostic: Option<String>,
}

/// Length of the NEG/RB zone after `trigger` and whether it holds a negator.
fn skip_zone(tags: &[Tag], trigger: usize) -> (usize, bool) {
    let (mut negs, mut adverbs) = (0, 0);
    let mut pos = trigger + 1;
    while let Some(&tag) = tags.get(pos) {
        match tag {
            Tag::Neg if negs < MAX_SKIPPED_NEGATIONS => negs += 1,
            Tag::Rb if adverbs < MAX_SKIPPED_ADVERBS => adverbs += 1,
            _ => break,
        }
        pos += 1;
    }
    (pos - trigger - 1, negs > 0)
}

/// The longest collocation at the start of `tags`.
fn match_collocation(tags: &[Tag]) -> Option<PatternKind> {
    COLLOCATIONS
        .iter()
        .find(|(_, seq)| tags.starts_with(seq))
        .map(|(kind, _)| *kind)
}

/// Resolves the modal verb at `tags[trigger]`.
///
/// `must` and `should` are epistemic inside a collocation and deontic
/// otherwise. `can` is deontic; negated, it follows the collocations and
/// has no modal reading outside them. The remaining verbs have a fixed
/// reading, and the epistemic ones still record a matching collocation.
pub fn disambiguate_modal(tags: &[Tag], trigger: usize, lemma: &str) -> Resolution {
    let (skipped, negated) = skip_zone(tags, trigger);
    let collocation = match_collocation(&tags[(trigger + 1 + skipped).min(tags.len())..]);
    let resolved = |kind: PatternKind, class: Option<ModalityClass>| Resolution {
        pattern: Pattern::new(kind, negated),
        class,
        diagnostic: None,
    };
    let epistemic_or = |fallback: PatternKind, class: Option<ModalityClass>| match collocation {
        Some(kind) => resolved(kind, Some(ModalityClass::Epistemic)),
        None => resolved(fallback, class),
    };
    match lemma {
        "must" | "should" => epistemic_or(PatternKind::FallbackDeontic, Some(ModalityClass::Deontic)),
        "can" if negated => epistemic_or(PatternKind::FallbackNonModal, None),
        "can" => resolved(PatternKind::UncondDeontic, Some(ModalityClass::Deontic)),
        other => match unconditional_reading(other) {
            Some(ModalityClass::Epistemic) => {
                epistemic_or(PatternKind::UncondEpistemic, Some(ModalityClass::Epistemic))
            }
            Some(ModalityClass::Deontic) => resolved(PatternKind::UncondDeontic, Some(ModalityClass::Deontic)),
            None => Resolution {
                diagnostic: Some(format!(
                    "modal verb `{other}` has no disambiguation rule; read as deontic"
                )),
                ..resolved(PatternKind::FallbackDeontic, Some(ModalityClass::Deontic))
            },
        },
    }
}

/// One modality trigger in a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModalOccurrence {
    pub sentence: usize,
    pub token: usize,
    /// The lexicon lemma that matched.
    pub lemma: String,
    pub category: LexCategory,
    pub negated: bool,
    pub pattern: Pattern,
    /// `None` only for a negated `can` outside every collocation.
    pub class: Option<ModalityClass>,
}

/// Whether `word` (case-folded) is `lemma` or a regular inflection of it
/// for the given category. Cognitive verbs accept -s/-es/-d/-ed/-ing,
/// nouns a plural -s/-es; everything else must match exactly.
pub fn matches_lemma(word: &str, lemma: &str, category: LexCategory) -> bool {
    if word == lemma {
        return true;
    }
    let Some(rest) = word.strip_prefix(lemma) else {
        // Verbs ending in -e drop it before -ing / -ed.
        return category == LexCategory::CognitiveVerb
            && lemma
                .strip_suffix('e')
                .is_some_and(|stem| word.strip_prefix(stem).is_some_and(|r| r == "ing" || r == "ed"));
    };
    match category {
        LexCategory::CognitiveVerb => matches!(rest, "s" | "es" | "d" | "ed" | "ing"),
        LexCategory::Noun => matches!(rest, "s" | "es"),
        _ => false,
    }
}

fn tag_fits(category: LexCategory, token: &Token, pos: &PosLexicon) -> bool {
    match category {
        LexCategory::ModalVerb => token.tag == Tag::Mv,
        LexCategory::CognitiveVerb => token.tag.is_verbal() || pos.has_verbal_reading(&token.surface),
        LexCategory::Adverb => token.tag == Tag::Rb,
        LexCategory::Adjective => token.tag == Tag::Adj,
        LexCategory::Noun => matches!(token.tag, Tag::Nn | Tag::Nns),
    }
}

/// Every trigger of a tagged sentence, resolved. The first lexicon entry
/// (in file order) whose category fits the token wins.
pub fn find_modal_occurrences(
    sentence: usize,
    tokens: &[Token],
    lexicon: &ModalityLexicon,
    pos: &PosLexicon,
    diagnostics: &mut Vec<String>,
) -> Vec<ModalOccurrence> {
    let tags: Vec<Tag> = tokens.iter().map(|t| t.tag).collect();
    let mut out = Vec::new();
    for (index, token) in tokens.iter().enumerate() {
        let Some(entry) = lexicon
            .entries()
            .iter()
            .find(|e| matches_lemma(&token.lemma, &e.lemma, e.category) && tag_fits(e.category, token, pos))
        else {
            continue;
        };
        let occurrence = match entry.class {
            LexClass::Fixed(class) if entry.category != LexCategory::ModalVerb => ModalOccurrence {
                sentence,
                token: index,
                lemma: entry.lemma.clone(),
                category: entry.category,
                negated: false,
                pattern: Pattern::new(PatternKind::LexMarker, false),
                class: Some(class),
            },
            _ => {
                let resolution = disambiguate_modal(&tags, index, &entry.lemma);
                if let Some(d) = resolution.diagnostic {
                    diagnostics.push(format!("sentence {sentence}: {d}"));
                }
                ModalOccurrence {
                    sentence,
                    token: index,
                    lemma: entry.lemma.clone(),
                    category: entry.category,
                    negated: resolution.pattern.negated,
                    pattern: resolution.pattern,
                    class: resolution.class,
                }
            }
        };
        out.push(occurrence);
    }
    out
}

/// Sentence-level modality label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Epistemic,
    Deontic,
    NonModal,
    EpistemicDeontic,
}

impl Label {
    pub const ALL: [Label; 4] = [
        Label::Epistemic,
        Label::Deontic,
        Label::NonModal,
        Label::EpistemicDeontic,
    ];

    pub fn from_classes(epistemic: bool, deontic: bool) -> Label {
        match (epistemic, deontic) {
            (true, true) => Label::EpistemicDeontic,
            (true, false) => Label::Epistemic,
            (false, true) => Label::Deontic,
            (false, false) => Label::NonModal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Epistemic => "EPISTEMIC",
            Label::Deontic => "DEONTIC",
            Label::NonModal => "NON-MODAL",
            Label::EpistemicDeontic => "EPISTEMIC-DEONTIC",
        }
    }

    /// The label set: empty for NON-MODAL.
    pub fn classes(self) -> Vec<ModalityClass> {
        match self {
            Label::Epistemic => vec![ModalityClass::Epistemic],
            Label::Deontic => vec![ModalityClass::Deontic],
            Label::NonModal => vec![],
            Label::EpistemicDeontic => vec![ModalityClass::Epistemic, ModalityClass::Deontic],
        }
    }

    pub fn is_epistemic(self) -> bool {
        matches!(self, Label::Epistemic | Label::EpistemicDeontic)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown label `{s}`"))
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Union of the resolved classes.
pub fn classify_sentence(occurrences: &[ModalOccurrence]) -> Label {
    let has = |c| occurrences.iter().any(|o| o.class == Some(c));
    Label::from_classes(has(ModalityClass::Epistemic), has(ModalityClass::Deontic))
}

/// Occurrences and label of one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceAnalysis {
    pub sentence: usize,
    pub label: Label,
    pub occurrences: Vec<ModalOccurrence>,
}

pub fn analyze_sentence(
    sentence: &Sentence,
    lexicon: &ModalityLexicon,
    pos: &PosLexicon,
    diagnostics: &mut Vec<String>,
) -> SentenceAnalysis {
    let occurrences = find_modal_occurrences(sentence.index, &sentence.tokens, lexicon, pos, diagnostics);
    SentenceAnalysis {
        sentence: sentence.index,
        label: classify_sentence(&occurrences),
        occurrences,
    }
}
