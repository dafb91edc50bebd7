//! The reduced syntactic tagset.
//!
//! Every automaton in the pipeline is defined over these symbols. Raw Brown
//! corpus tags are folded into them by [`Tag::from_brown`].

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// One reduced syntactic category.
///
/// The declaration order is significant: it breaks ties between equally
/// frequent lexicon entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Tag {
    Art,
    Adj,
    Nn,
    Nns,
    Np,
    In,
    Ppo,
    Pps,
    Wps,
    Rb,
    Mv,
    Neg,
    Have,
    Be,
    Been,
    Vb,
    Vpa,
    Vpr,
    Conj,
    Punct,
    Other,
    /// Placeholder between the two tagging passes. Never in final output.
    None,
}

impl Tag {
    pub const ALL: [Tag; 22] = [
        Tag::Art,
        Tag::Adj,
        Tag::Nn,
        Tag::Nns,
        Tag::Np,
        Tag::In,
        Tag::Ppo,
        Tag::Pps,
        Tag::Wps,
        Tag::Rb,
        Tag::Mv,
        Tag::Neg,
        Tag::Have,
        Tag::Be,
        Tag::Been,
        Tag::Vb,
        Tag::Vpa,
        Tag::Vpr,
        Tag::Conj,
        Tag::Punct,
        Tag::Other,
        Tag::None,
    ];

    /// Canonical name, as used in lexicon files.
    pub fn name(self) -> &'static str {
        match self {
            Tag::Art => "ART",
            Tag::Adj => "ADJ",
            Tag::Nn => "NN",
            Tag::Nns => "NNS",
            Tag::Np => "NP",
            Tag::In => "IN",
            Tag::Ppo => "PPO",
            Tag::Pps => "PPS",
            Tag::Wps => "WPS",
            Tag::Rb => "RB",
            Tag::Mv => "MV",
            Tag::Neg => "NEG",
            Tag::Have => "HAVE",
            Tag::Be => "BE",
            Tag::Been => "BEEN",
            Tag::Vb => "VB",
            Tag::Vpa => "VPA",
            Tag::Vpr => "VPR",
            Tag::Conj => "CONJ",
            Tag::Punct => "PUNCT",
            Tag::Other => "OTHER",
            Tag::None => "NONE",
        }
    }

    /// Surface form in annotated output. Negation renders as `*`.
    pub fn rendered(self) -> &'static str {
        match self {
            Tag::Neg => "*",
            other => other.name(),
        }
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Tag::Vb | Tag::Vpa | Tag::Vpr)
    }

    /// Folds a Brown corpus tag into the reduced tagset.
    ///
    /// Title/headline/cited-word suffixes (`-TL`, `-HL`, `-NC`), the
    /// foreign-word prefix `FW-`, negation (`*`) and possessive (`$`)
    /// markers are stripped first; contracted tags (`PPS+BEZ`) use their
    /// first component. Unknown tags become [`Tag::Other`].
    pub fn from_brown(raw: &str) -> Tag {
        let mut tag = raw.trim();
        if tag == "*" {
            return Tag::Neg;
        }
        if let Some(first) = tag.split('+').next() {
            tag = first;
        }
        tag = tag.strip_prefix("FW-").unwrap_or(tag);
        for suffix in ["-TL", "-HL", "-NC"] {
            while let Some(stripped) = tag.strip_suffix(suffix) {
                tag = stripped;
            }
        }
        let tag = tag.trim_end_matches('*');
        let base = tag.trim_end_matches('$');
        match base {
            "AT" => Tag::Art,
            "JJ" | "JJR" | "JJS" | "JJT" => Tag::Adj,
            "NN" | "NR" => Tag::Nn,
            "NNS" | "NRS" => Tag::Nns,
            "NP" | "NPS" => Tag::Np,
            "IN" => Tag::In,
            "PPO" => Tag::Ppo,
            "PPS" | "PPSS" => Tag::Pps,
            "WPS" => Tag::Wps,
            "RB" | "RBR" | "RBT" | "RN" | "RP" | "QL" | "QLP" => Tag::Rb,
            "MD" => Tag::Mv,
            "HV" | "HVD" | "HVZ" | "HVG" | "HVN" => Tag::Have,
            "BE" | "BEZ" | "BED" | "BEDZ" | "BEM" | "BER" | "BEG" => Tag::Be,
            "BEN" => Tag::Been,
            "VB" | "VBD" | "VBZ" | "DO" | "DOD" | "DOZ" => Tag::Vb,
            "VBN" => Tag::Vpa,
            "VBG" => Tag::Vpr,
            "CC" | "CS" => Tag::Conj,
            "." | "," | ":" | "(" | ")" | "--" | "'" | "''" | "``" => Tag::Punct,
            _ => Tag::Other,
        }
    }

    /// Parses a lexicon tag column: reduced names (and `*`) first, Brown
    /// tags otherwise. `NONE` is not a valid lexicon tag.
    pub fn from_lexicon_column(raw: &str) -> Option<Tag> {
        match raw.parse::<Tag>() {
            Ok(Tag::None) => None,
            Ok(tag) => Some(tag),
            Err(_) => Some(Tag::from_brown(raw)),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rendered())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown tag `{}`", self.0)
    }
}

impl std::error::Error for UnknownTag {}

impl FromStr for Tag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "*" {
            return Ok(Tag::Neg);
        }
        Tag::ALL
            .iter()
            .copied()
            .find(|tag| tag.name() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

impl From<Tag> for String {
    fn from(tag: Tag) -> String {
        tag.rendered().to_string()
    }
}

impl TryFrom<String> for Tag {
    type Error = UnknownTag;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}
