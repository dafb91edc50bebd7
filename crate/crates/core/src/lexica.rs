//! Lexical resources: the POS lexicon, first-name lists and the modality
//! lexicon, plus the small configuration lists used by later stages.
//!
//! Everything here is immutable after loading and can be shared freely
//! between worker threads.

use crate::attitude::Downtoners;
use crate::error::{Error, Result};
use crate::modality::unconditional_reading;
use crate::postag::SuffixRules;
use crate::preprocess::Abbreviations;
use crate::tag::Tag;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

pub const POS_FILE: &str = "pos.tsv";
pub const FEMALE_NAMES_FILE: &str = "names/female.txt";
pub const MALE_NAMES_FILE: &str = "names/male.txt";
pub const MODALITY_FILE: &str = "modality.tsv";
pub const ABBREVIATIONS_FILE: &str = "abbreviations.txt";
pub const SUFFIXES_FILE: &str = "suffixes.tsv";
pub const DOWNTONERS_FILE: &str = "downtoners.txt";

/// Upper bound on synonym expansion rounds.
pub const MAX_SEED_EXPANSION_DEPTH: usize = 3;

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim_end_matches('\r')))
        .filter(|(_, line)| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TagCount {
    pub tag: Tag,
    pub count: u64,
}

/// Word form → tags ordered by descending count (ties by tag order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosLexicon {
    entries: BTreeMap<String, Vec<TagCount>>,
}

impl PosLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&read_file(path)?, path)
    }

    /// Parses `word<TAB>TAG<TAB>count` rows. Tags may be reduced names or raw
    /// Brown tags; repeated (word, tag) rows add up.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut counts: BTreeMap<String, BTreeMap<Tag, u64>> = BTreeMap::new();
        for (line_no, line) in data_lines(text) {
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(Error::malformed(
                    origin,
                    line_no,
                    format!("expected 3 tab-separated columns, found {}", cols.len()),
                ));
            }
            let word = cols[0].trim();
            if word.is_empty() {
                return Err(Error::malformed(origin, line_no, "empty word"));
            }
            let tag = Tag::from_lexicon_column(cols[1].trim())
                .ok_or_else(|| Error::malformed(origin, line_no, "NONE is not a lexicon tag"))?;
            let count: u64 = cols[2]
                .trim()
                .parse()
                .map_err(|_| Error::malformed(origin, line_no, format!("bad count `{}`", cols[2])))?;
            *counts.entry(word.to_string()).or_default().entry(tag).or_default() += count;
        }
        if counts.is_empty() {
            return Err(Error::EmptyLexicon {
                path: origin.to_path_buf(),
            });
        }
        let entries = counts
            .into_iter()
            .map(|(word, tags)| {
                let mut list: Vec<TagCount> = tags.into_iter().map(|(tag, count)| TagCount { tag, count }).collect();
                list.sort_by(|a, b| b.count.cmp(&a.count).then(a.tag.cmp(&b.tag)));
                (word, list)
            })
            .collect();
        Ok(PosLexicon { entries })
    }

    /// Exact-key lookup.
    pub fn get(&self, word: &str) -> Option<&[TagCount]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    /// Case-folded lookup, falling back to the original casing for words
    /// that start with an uppercase letter.
    pub fn lookup(&self, surface: &str) -> Option<&[TagCount]> {
        let folded = surface.to_lowercase();
        self.get(&folded).or_else(|| {
            let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
            if capitalized {
                self.get(surface)
            } else {
                None
            }
        })
    }

    pub fn most_frequent(&self, surface: &str) -> Option<Tag> {
        self.lookup(surface).and_then(|list| list.first()).map(|tc| tc.tag)
    }

    /// True when any lexicon reading of the word is verbal.
    pub fn has_verbal_reading(&self, surface: &str) -> bool {
        self.lookup(surface)
            .is_some_and(|list| list.iter().any(|tc| tc.tag.is_verbal()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[TagCount])> {
        self.entries.iter().map(|(w, l)| (w.as_str(), l.as_slice()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gender {
    Female,
    Male,
}

/// First-name lists. Membership is case-insensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NameLexicon {
    female: BTreeSet<String>,
    male: BTreeSet<String>,
}

impl NameLexicon {
    pub fn load(female_path: impl AsRef<Path>, male_path: impl AsRef<Path>) -> Result<Self> {
        let female = read_file(female_path.as_ref())?;
        let male = read_file(male_path.as_ref())?;
        Ok(Self::parse(&female, &male))
    }

    pub fn parse(female: &str, male: &str) -> Self {
        let set = |text: &str| -> BTreeSet<String> { data_lines(text).map(|(_, l)| l.trim().to_lowercase()).collect() };
        NameLexicon {
            female: set(female),
            male: set(male),
        }
    }

    pub fn female_len(&self) -> usize {
        self.female.len()
    }

    pub fn male_len(&self) -> usize {
        self.male.len()
    }

    pub fn is_female(&self, name: &str) -> bool {
        self.female.contains(&name.to_lowercase())
    }

    pub fn is_male(&self, name: &str) -> bool {
        self.male.contains(&name.to_lowercase())
    }

    pub fn contains(&self, name: &str) -> bool {
        !name.is_empty() && (self.is_female(name) || self.is_male(name))
    }

    /// Gender of a first name; `None` for unknown or unisex names.
    pub fn gender(&self, name: &str) -> Option<Gender> {
        match (self.is_female(name), self.is_male(name)) {
            (true, false) => Some(Gender::Female),
            (false, true) => Some(Gender::Male),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LexCategory {
    ModalVerb,
    CognitiveVerb,
    Adverb,
    Adjective,
    Noun,
}

impl LexCategory {
    pub fn name(self) -> &'static str {
        match self {
            LexCategory::ModalVerb => "modal-verb",
            LexCategory::CognitiveVerb => "cognitive-verb",
            LexCategory::Adverb => "adverb",
            LexCategory::Adjective => "adjective",
            LexCategory::Noun => "noun",
        }
    }
}

impl FromStr for LexCategory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "modal-verb" => LexCategory::ModalVerb,
            "cognitive-verb" => LexCategory::CognitiveVerb,
            "adverb" => LexCategory::Adverb,
            "adjective" => LexCategory::Adjective,
            "noun" => LexCategory::Noun,
            other => return Err(format!("unknown category `{other}`")),
        })
    }
}

/// The two modality readings a trigger can resolve to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModalityClass {
    Epistemic,
    Deontic,
}

impl ModalityClass {
    pub fn name(self) -> &'static str {
        match self {
            ModalityClass::Epistemic => "epistemic",
            ModalityClass::Deontic => "deontic",
        }
    }
}

impl fmt::Display for ModalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class column of the modality lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LexClass {
    Fixed(ModalityClass),
    /// Resolved per occurrence by the modal-verb automaton.
    Contextual,
}

impl FromStr for LexClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "epistemic" => LexClass::Fixed(ModalityClass::Epistemic),
            "deontic" => LexClass::Fixed(ModalityClass::Deontic),
            "contextual" => LexClass::Contextual,
            other => return Err(format!("unknown class `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModalityEntry {
    pub lemma: String,
    pub category: LexCategory,
    pub class: LexClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModalityLexicon {
    entries: Vec<ModalityEntry>,
}

impl ModalityLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&read_file(path)?, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut entries: Vec<ModalityEntry> = Vec::new();
        let mut seen = BTreeSet::new();
        for (line_no, line) in data_lines(text) {
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(Error::malformed(
                    origin,
                    line_no,
                    format!("expected 3 tab-separated columns, found {}", cols.len()),
                ));
            }
            let lemma = cols[0].to_lowercase();
            if lemma.is_empty() {
                return Err(Error::malformed(origin, line_no, "empty lemma"));
            }
            let category: LexCategory = cols[1].parse().map_err(|m| Error::malformed(origin, line_no, m))?;
            let class: LexClass = cols[2].parse().map_err(|m| Error::malformed(origin, line_no, m))?;
            match (category, class) {
                (LexCategory::ModalVerb, LexClass::Fixed(fixed)) => {
                    if unconditional_reading(&lemma) != Some(fixed) {
                        return Err(Error::malformed(
                            origin,
                            line_no,
                            format!("modal verb `{lemma}` must be contextual unless it has a fixed {fixed} reading"),
                        ));
                    }
                }
                (LexCategory::ModalVerb, LexClass::Contextual) => {}
                (_, LexClass::Contextual) => {
                    return Err(Error::malformed(origin, line_no, "only modal verbs can be contextual"));
                }
                _ => {}
            }
            if !seen.insert((lemma.clone(), category)) {
                return Err(Error::malformed(
                    origin,
                    line_no,
                    format!("duplicate entry `{lemma}` ({})", category.name()),
                ));
            }
            entries.push(ModalityEntry { lemma, category, class });
        }
        Ok(ModalityLexicon { entries })
    }

    pub fn entries(&self) -> &[ModalityEntry] {
        &self.entries
    }

    /// All entries for a (case-folded) lemma.
    pub fn lookup<'a>(&'a self, lemma: &'a str) -> impl Iterator<Item = &'a ModalityEntry> + 'a {
        self.entries.iter().filter(move |e| e.lemma == lemma)
    }
}

/// Closure of `seeds` under `synonyms`, applied at most `depth` times
/// (capped at [`MAX_SEED_EXPANSION_DEPTH`]). Output is case-folded, unique
/// and sorted.
pub fn expand_modality_seeds<S, F, I>(seeds: &[S], mut synonyms: F, depth: usize) -> Vec<String>
where
    S: AsRef<str>,
    F: FnMut(&str) -> I,
    I: IntoIterator<Item = String>,
{
    let depth = depth.min(MAX_SEED_EXPANSION_DEPTH);
    let mut found: BTreeSet<String> = seeds.iter().map(|s| s.as_ref().to_lowercase()).collect();
    let mut frontier: VecDeque<String> = found.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = VecDeque::new();
        while let Some(word) = frontier.pop_front() {
            for synonym in synonyms(&word) {
                let synonym = synonym.to_lowercase();
                if !synonym.is_empty() && found.insert(synonym.clone()) {
                    next.push_back(synonym);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    found.into_iter().collect()
}

/// Everything the pipeline reads from a lexicon directory.
#[derive(Debug, Clone, Serialize)]
pub struct Lexica {
    pub pos: PosLexicon,
    pub names: NameLexicon,
    pub modality: ModalityLexicon,
    pub abbreviations: Abbreviations,
    pub suffixes: SuffixRules,
    pub downtoners: Downtoners,
}

pub(crate) const BUNDLED_POS: &str = include_str!("../lexicons/pos.tsv");
pub(crate) const BUNDLED_FEMALE: &str = include_str!("../lexicons/names/female.txt");
pub(crate) const BUNDLED_MALE: &str = include_str!("../lexicons/names/male.txt");
pub(crate) const BUNDLED_MODALITY: &str = include_str!("../lexicons/modality.tsv");
pub(crate) const BUNDLED_ABBREVIATIONS: &str = include_str!("../lexicons/abbreviations.txt");
pub(crate) const BUNDLED_SUFFIXES: &str = include_str!("../lexicons/suffixes.tsv");
pub(crate) const BUNDLED_DOWNTONERS: &str = include_str!("../lexicons/downtoners.txt");

impl Lexica {
    /// Loads a lexicon directory. `pos.tsv`, `modality.tsv` and the two name
    /// lists are required; the configuration lists fall back to the bundled
    /// defaults when absent.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        if !dir.is_dir() {
            return Err(Error::io(
                dir,
                std::io::Error::new(std::io::ErrorKind::NotFound, "lexicon directory not found"),
            ));
        }
        let optional = |name: &str| -> Option<PathBuf> {
            let path = dir.join(name);
            path.is_file().then_some(path)
        };
        Ok(Lexica {
            pos: PosLexicon::load(dir.join(POS_FILE))?,
            names: NameLexicon::load(dir.join(FEMALE_NAMES_FILE), dir.join(MALE_NAMES_FILE))?,
            modality: ModalityLexicon::load(dir.join(MODALITY_FILE))?,
            abbreviations: match optional(ABBREVIATIONS_FILE) {
                Some(path) => Abbreviations::load(path)?,
                None => Abbreviations::default(),
            },
            suffixes: match optional(SUFFIXES_FILE) {
                Some(path) => SuffixRules::load(path)?,
                None => SuffixRules::default(),
            },
            downtoners: match optional(DOWNTONERS_FILE) {
                Some(path) => Downtoners::load(path)?,
                None => Downtoners::default(),
            },
        })
    }

    /// The lexica shipped with the crate, parsed once per process.
    pub fn bundled() -> &'static Lexica {
        static BUNDLED: OnceLock<Lexica> = OnceLock::new();
        BUNDLED.get_or_init(|| Lexica {
            pos: PosLexicon::parse(BUNDLED_POS, Path::new(POS_FILE)).expect("bundled POS lexicon"),
            names: NameLexicon::parse(BUNDLED_FEMALE, BUNDLED_MALE),
            modality: ModalityLexicon::parse(BUNDLED_MODALITY, Path::new(MODALITY_FILE))
                .expect("bundled modality lexicon"),
            abbreviations: Abbreviations::default(),
            suffixes: SuffixRules::default(),
            downtoners: Downtoners::default(),
        })
    }
}

/// Directory holding the bundled lexicon files in a source checkout.
pub fn bundled_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("lexicons")
}
