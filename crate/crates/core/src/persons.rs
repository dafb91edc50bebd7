//! Person detection and pronoun linking.
//!
//! Names come from two places: the document's own reference list, and
//! capitalized token runs that the name automaton accepts. Runs the
//! automaton rejects but that contain a known first name go to a decision
//! channel (a human, or a replayed transcript).

use crate::error::Result;
use crate::lexica::{Gender, NameLexicon};
use crate::preprocess::{is_initialism, Document, Sentence, Token};
use crate::tag::Tag;
use regex::Regex;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

/// Longest candidate run handed to the automaton.
pub const MAX_RUN_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamePattern {
    #[serde(rename = "FN_LN")]
    FnLn,
    #[serde(rename = "ABB_LN")]
    AbbLn,
    #[serde(rename = "FN_ABB_LN")]
    FnAbbLn,
    #[serde(rename = "ABB_ABB_LN")]
    AbbAbbLn,
    #[serde(rename = "FN")]
    Fn,
    #[serde(rename = "LN")]
    Ln,
}

impl NamePattern {
    pub fn name(self) -> &'static str {
        match self {
            NamePattern::FnLn => "FN_LN",
            NamePattern::AbbLn => "ABB_LN",
            NamePattern::FnAbbLn => "FN_ABB_LN",
            NamePattern::AbbAbbLn => "ABB_ABB_LN",
            NamePattern::Fn => "FN",
            NamePattern::Ln => "LN",
        }
    }

    fn has_last_name(self) -> bool {
        self != NamePattern::Fn
    }
}

impl fmt::Display for NamePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PersonSource {
    ReferenceList,
    NameLexicon,
    Manual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mention {
    pub sentence: usize,
    pub tokens: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PersonEntity {
    pub id: usize,
    pub canonical_name: String,
    /// `None` for persons accepted through the decision channel.
    pub pattern: Option<NamePattern>,
    pub mentions: Vec<Mention>,
    pub source: PersonSource,
    /// Known from a first name in one of the mentions.
    pub gender: Option<Gender>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PronounLink {
    pub sentence: usize,
    pub token: usize,
    pub antecedent: usize,
    pub antecedent_mention: Mention,
}

/// Shape of one token inside a candidate run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Fn,
    Abb,
    Ln,
}

/// Names harvested from the trailing reference section.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReferenceNames {
    pub names: BTreeSet<String>,
    /// First sentence of the reference section; it and everything after it
    /// is not searched for mentions.
    pub section_start: Option<usize>,
}

impl ReferenceNames {
    pub fn contains(&self, word: &str) -> bool {
        let word = word.to_lowercase();
        self.names.iter().any(|n| n.to_lowercase() == word)
    }
}

fn reference_entry_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(\p{Lu}[\p{L}'’-]*\p{Ll}[\p{L}'’-]*),?\s+(?:(?:\p{Lu}\.\s*)+|\(?\d{4}[a-z]?\)?)")
            .expect("valid regex")
    })
}

fn is_reference_heading(line: &str) -> bool {
    let heading = line
        .trim()
        .trim_start_matches(|c: char| c == '#' || c.is_ascii_digit() || c == '.' || c.is_whitespace())
        .trim_end_matches(':')
        .trim();
    heading.eq_ignore_ascii_case("references") || heading.eq_ignore_ascii_case("bibliography")
}

/// Last names from the document's trailing "References"/"Bibliography"
/// section: capitalized words followed by initials or a year.
pub fn extract_reference_names(document: &Document) -> ReferenceNames {
    let text = &document.normalized_text;
    let mut offset = 0;
    let mut heading_at = None;
    for line in text.split_inclusive('\n') {
        if is_reference_heading(line) {
            heading_at = Some(offset);
        }
        offset += line.len();
    }
    let Some(start) = heading_at else {
        return ReferenceNames::default();
    };
    let names = reference_entry_regex()
        .captures_iter(&text[start..])
        .map(|c| c[1].to_string())
        .collect();
    let section_start = document.sentences.iter().find(|s| s.span.end > start).map(|s| s.index);
    ReferenceNames { names, section_start }
}

fn is_capitalized_word(surface: &str) -> bool {
    surface.chars().next().is_some_and(char::is_uppercase) && surface.chars().any(char::is_lowercase)
}

fn is_abbreviation_shape(surface: &str) -> bool {
    is_initialism(surface) && surface.chars().next().is_some_and(char::is_uppercase)
}

const FUNCTION_TAGS: [Tag; 10] = [
    Tag::Art,
    Tag::In,
    Tag::Pps,
    Tag::Ppo,
    Tag::Wps,
    Tag::Conj,
    Tag::Neg,
    Tag::Be,
    Tag::Have,
    Tag::Been,
];

/// Maximal runs of capitalized words and initials, cut into pieces of at
/// most [`MAX_RUN_LENGTH`] tokens. The first word of a sentence counts
/// only when tagged NP.
pub fn detect_name_candidates(sentence: &Sentence) -> Vec<Range<usize>> {
    let first_word = sentence.tokens.iter().position(|t| t.tag != Tag::Punct);
    let eligible = |i: usize, t: &Token| {
        let shaped = is_capitalized_word(&t.surface) || is_abbreviation_shape(&t.surface);
        let initial_ok = Some(i) != first_word || t.tag == Tag::Np;
        shaped && initial_ok && !FUNCTION_TAGS.contains(&t.tag)
    };
    let mut runs = Vec::new();
    let mut start = None;
    for (i, token) in sentence.tokens.iter().enumerate() {
        match (eligible(i, token), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push(s..i);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push(s..sentence.tokens.len());
    }
    runs.into_iter()
        .flat_map(|run| {
            run.clone()
                .step_by(MAX_RUN_LENGTH)
                .map(move |s| s..(s + MAX_RUN_LENGTH).min(run.end))
        })
        .collect()
}

/// Token shape. Known last names (reference list or already accepted
/// persons) take precedence over first names.
pub fn token_shape(surface: &str, names: &NameLexicon, known_last_names: &BTreeSet<String>) -> Shape {
    if is_abbreviation_shape(surface) {
        Shape::Abb
    } else if known_last_names.contains(&surface.to_lowercase()) {
        Shape::Ln
    } else if names.contains(surface) {
        Shape::Fn
    } else {
        Shape::Ln
    }
}

/// Accepts FN LN, ABB LN, FN ABB LN, ABB ABB LN, FN, and a lone LN that is
/// a known last name.
pub fn run_name_automaton(
    run: &[&str],
    names: &NameLexicon,
    known_last_names: &BTreeSet<String>,
) -> Option<NamePattern> {
    let shapes: Vec<Shape> = run.iter().map(|s| token_shape(s, names, known_last_names)).collect();
    match shapes.as_slice() {
        [Shape::Fn, Shape::Ln] => Some(NamePattern::FnLn),
        [Shape::Abb, Shape::Ln] => Some(NamePattern::AbbLn),
        [Shape::Fn, Shape::Abb, Shape::Ln] => Some(NamePattern::FnAbbLn),
        [Shape::Abb, Shape::Abb, Shape::Ln] => Some(NamePattern::AbbAbbLn),
        [Shape::Fn] => Some(NamePattern::Fn),
        [Shape::Ln] if known_last_names.contains(&run[0].to_lowercase()) => Some(NamePattern::Ln),
        _ => None,
    }
}

/// A rejected run containing a first name, awaiting a decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameQuery {
    pub sentence: usize,
    pub tokens: Range<usize>,
    pub candidate: String,
    pub sentence_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NameDecision {
    Accept { canonical_name: Option<String> },
    Reject,
}

pub trait NameDecider {
    fn decide(&mut self, query: &NameQuery) -> Result<NameDecision>;
}

/// Rejects every queued candidate.
pub struct RejectAll;

impl NameDecider for RejectAll {
    fn decide(&mut self, _query: &NameQuery) -> Result<NameDecision> {
        Ok(NameDecision::Reject)
    }
}

struct EntityTable<'a> {
    names: &'a NameLexicon,
    by_key: BTreeMap<String, usize>,
    entities: Vec<PersonEntity>,
}

impl EntityTable<'_> {
    fn add(
        &mut self,
        canonical: &str,
        pattern: Option<NamePattern>,
        source: PersonSource,
        mention: Mention,
        surfaces: &[&str],
    ) {
        let key = canonical.to_lowercase();
        let gender = surfaces.iter().find_map(|s| self.names.gender(s));
        let id = *self.by_key.entry(key).or_insert_with(|| {
            self.entities.push(PersonEntity {
                id: self.entities.len(),
                canonical_name: canonical.to_string(),
                pattern,
                mentions: Vec::new(),
                source,
                gender: None,
            });
            self.entities.len() - 1
        });
        let entity = &mut self.entities[id];
        entity.mentions.push(mention);
        if entity.gender.is_none() {
            entity.gender = gender;
        }
    }
}

fn canonical_name(pattern: NamePattern, run: &[&str]) -> String {
    if pattern.has_last_name() {
        run[run.len() - 1].to_string()
    } else {
        run.join(" ")
    }
}

/// Person entities of a tagged document, ids in order of first mention.
pub fn mark_persons(
    document: &Document,
    names: &NameLexicon,
    references: &ReferenceNames,
    decider: &mut dyn NameDecider,
) -> Result<Vec<PersonEntity>> {
    let body: Vec<&Sentence> = document
        .sentences
        .iter()
        .filter(|s| references.section_start.is_none_or(|start| s.index < start))
        .collect();
    let reference_keys: BTreeSet<String> = references.names.iter().map(|n| n.to_lowercase()).collect();

    // Last names accepted anywhere in the document count as known, so lone
    // later (or earlier) mentions resolve.
    let mut known = reference_keys.clone();
    for sentence in &body {
        for run in detect_name_candidates(sentence) {
            let surfaces = surfaces(sentence, &run);
            if let Some(pattern) = run_name_automaton(&surfaces, names, &reference_keys) {
                if pattern.has_last_name() {
                    known.insert(canonical_name(pattern, &surfaces).to_lowercase());
                }
            }
        }
    }

    let mut table = EntityTable {
        names,
        by_key: BTreeMap::new(),
        entities: Vec::new(),
    };
    for sentence in &body {
        for run in detect_name_candidates(sentence) {
            let surfaces = surfaces(sentence, &run);
            let mention = Mention {
                sentence: sentence.index,
                tokens: run.clone(),
            };
            if let Some(pattern) = run_name_automaton(&surfaces, names, &known) {
                let canonical = canonical_name(pattern, &surfaces);
                let source = if reference_keys.contains(&canonical.to_lowercase()) {
                    PersonSource::ReferenceList
                } else {
                    PersonSource::NameLexicon
                };
                table.add(&canonical, Some(pattern), source, mention, &surfaces);
                continue;
            }
            let mut matched_known = false;
            for (offset, surface) in surfaces.iter().enumerate() {
                if known.contains(&surface.to_lowercase()) {
                    matched_known = true;
                    let source = if reference_keys.contains(&surface.to_lowercase()) {
                        PersonSource::ReferenceList
                    } else {
                        PersonSource::NameLexicon
                    };
                    let at = run.start + offset;
                    let single = Mention {
                        sentence: sentence.index,
                        tokens: at..at + 1,
                    };
                    table.add(surface, Some(NamePattern::Ln), source, single, &[]);
                }
            }
            let has_first_name = surfaces.iter().any(|s| token_shape(s, names, &known) == Shape::Fn);
            if matched_known || !has_first_name {
                continue;
            }
            let query = NameQuery {
                sentence: sentence.index,
                tokens: run.clone(),
                candidate: surfaces.join(" "),
                sentence_text: document.sentence_text(sentence).to_string(),
            };
            if let NameDecision::Accept { canonical_name } = decider.decide(&query)? {
                let canonical = canonical_name
                    .filter(|c| !c.trim().is_empty())
                    .unwrap_or_else(|| surfaces[surfaces.len() - 1].to_string());
                table.add(&canonical, None, PersonSource::Manual, mention, &surfaces);
            }
        }
    }
    for entity in &mut table.entities {
        entity
            .mentions
            .sort_by_key(|m| (m.sentence, m.tokens.start, m.tokens.end));
    }
    Ok(table.entities)
}

fn surfaces<'s>(sentence: &'s Sentence, run: &Range<usize>) -> Vec<&'s str> {
    sentence.tokens[run.clone()]
        .iter()
        .map(|t| t.surface.as_str())
        .collect()
}

fn pronoun_gender(lemma: &str) -> Option<Gender> {
    match lemma {
        "he" => Some(Gender::Male),
        "she" => Some(Gender::Female),
        _ => None,
    }
}

/// Links `who` to the nearest preceding mention in its sentence, and
/// `he`/`she` to the nearest preceding mention in the current or previous
/// sentence, skipping persons of the other gender when one of the same
/// gender is in scope.
pub fn link_pronouns(document: &Document, persons: &[PersonEntity]) -> Vec<PronounLink> {
    let mut by_sentence: BTreeMap<usize, Vec<(&Mention, &PersonEntity)>> = BTreeMap::new();
    for person in persons {
        for mention in &person.mentions {
            by_sentence.entry(mention.sentence).or_default().push((mention, person));
        }
    }
    for list in by_sentence.values_mut() {
        list.sort_by_key(|(m, _)| (m.tokens.end, m.tokens.start));
    }
    let mut links = Vec::new();
    for sentence in &document.sentences {
        let here = by_sentence.get(&sentence.index).map(Vec::as_slice).unwrap_or(&[]);
        for (i, token) in sentence.tokens.iter().enumerate() {
            let preceding_here = here.iter().rev().filter(|(m, _)| m.tokens.end <= i);
            let chosen = match (token.tag, token.lemma.as_str()) {
                (Tag::Wps, "who") => preceding_here.copied().next(),
                (Tag::Pps, lemma @ ("he" | "she")) => {
                    let previous = sentence
                        .index
                        .checked_sub(1)
                        .and_then(|p| by_sentence.get(&p))
                        .map(Vec::as_slice)
                        .unwrap_or(&[]);
                    let scope: Vec<(&Mention, &PersonEntity)> =
                        preceding_here.chain(previous.iter().rev()).copied().collect();
                    let wanted = pronoun_gender(lemma);
                    scope
                        .iter()
                        .find(|(_, p)| p.gender.is_none() || p.gender == wanted)
                        .or_else(|| scope.first())
                        .copied()
                }
                _ => None,
            };
            if let Some((mention, person)) = chosen {
                links.push(PronounLink {
                    sentence: sentence.index,
                    token: i,
                    antecedent: person.id,
                    antecedent_mention: mention.clone(),
                });
            }
        }
    }
    links
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexica::Lexica;
    use crate::postag::tag_tokens;
    use crate::preprocess::Abbreviations;
    use proptest::prelude::*;

    fn tagged(text: &str) -> Document {
        let lex = Lexica::bundled();
        let mut doc = Document::new(text, &Abbreviations::default());
        for s in &mut doc.sentences {
            tag_tokens(&mut s.tokens, &lex.pos, &lex.suffixes);
        }
        doc
    }

    fn names() -> &'static NameLexicon {
        &Lexica::bundled().names
    }

    fn automaton(run: &[&str], known: &[&str]) -> Option<NamePattern> {
        let known: BTreeSet<String> = known.iter().map(|s| s.to_lowercase()).collect();
        run_name_automaton(run, names(), &known)
    }

    #[test]
    fn automaton_paths() {
        assert_eq!(automaton(&["Peter", "Green"], &[]), Some(NamePattern::FnLn));
        assert_eq!(automaton(&["P.", "Green"], &[]), Some(NamePattern::AbbLn));
        assert_eq!(automaton(&["Peter", "J.", "Green"], &[]), Some(NamePattern::FnAbbLn));
        assert_eq!(automaton(&["S.", "E.", "Brasier"], &[]), Some(NamePattern::AbbAbbLn));
        assert_eq!(automaton(&["Stanley"], &[]), Some(NamePattern::Fn));
        assert_eq!(automaton(&["Max-Planck", "Institute"], &[]), None);
        assert_eq!(automaton(&["Brasier"], &[]), None);
        assert_eq!(automaton(&["Brasier"], &["Brasier"]), Some(NamePattern::Ln));
        // "Lowe" is also a first name; a known last name wins.
        assert_eq!(automaton(&["Lowe"], &["Lowe"]), Some(NamePattern::Ln));
    }

    #[test]
    fn candidates() {
        let doc = tagged("It was said by Stanley Awramik, a stromatolite expert.");
        let s = &doc.sentences[0];
        let runs = detect_name_candidates(s);
        assert_eq!(runs.len(), 1);
        assert_eq!(surfaces(s, &runs[0]), ["Stanley", "Awramik"]);

        let doc = tagged("The cell divides.");
        assert!(detect_name_candidates(&doc.sentences[0]).is_empty());

        let doc = tagged("Yesterday P. Green spoke.");
        let s = &doc.sentences[0];
        assert_eq!(surfaces(s, &detect_name_candidates(s)[0]), ["P.", "Green"]);
    }

    #[test]
    fn long_runs_are_chunked() {
        let doc = tagged("then Alpha Beta Gamma Delta Epsilon Zeta spoke");
        let runs = detect_name_candidates(&doc.sentences[0]);
        assert_eq!(runs, vec![1..5, 5..7]);
    }

    #[test]
    fn reference_harvest() {
        let doc = tagged("Body text here.\n\nReferences\n\nPalmer, S.E. (1999). Vision science.\nPalmer, S.E. (2002). More vision.\nLowe, D. (2004). Features.\n");
        let refs = extract_reference_names(&doc);
        assert_eq!(refs.names, BTreeSet::from(["Lowe".to_string(), "Palmer".to_string()]));
        assert_eq!(refs.section_start, Some(1));
        assert_eq!(
            extract_reference_names(&tagged("No section here.")),
            ReferenceNames::default()
        );
    }

    #[test]
    fn awramik_entity_and_who_link() {
        let doc = tagged("\"The individual grains in them could not have accumulated mechanically because the slope of the cone is too great,\" says Stanley Awramik, a stromatolite expert at the University of California, Santa Barbara, who was not involved in the research.");
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        assert_eq!(persons.len(), 1);
        assert_eq!(persons[0].canonical_name, "Awramik");
        assert_eq!(persons[0].pattern, Some(NamePattern::FnLn));
        let links = link_pronouns(&doc, &persons);
        assert_eq!(links.len(), 1);
        assert_eq!(doc.sentences[0].tokens[links[0].token].surface, "who");
        assert_eq!(links[0].antecedent, persons[0].id);
    }

    #[test]
    fn lone_reference_name_is_a_person() {
        let doc = tagged("Lowe pointed out the flaw.\n\nReferences\n\nLowe, D. (2004). Features.\n");
        let refs = extract_reference_names(&doc);
        let persons = mark_persons(&doc, names(), &refs, &mut RejectAll).unwrap();
        assert_eq!(persons.len(), 1);
        assert_eq!(persons[0].pattern, Some(NamePattern::Ln));
        assert_eq!(persons[0].source, PersonSource::ReferenceList);
        assert_eq!(persons[0].mentions.len(), 1);
    }

    #[test]
    fn institutions_are_not_persons() {
        let doc = tagged("She works at the Max-Planck Institute today.");
        assert!(mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll)
            .unwrap()
            .is_empty());
        assert!(
            mark_persons(&tagged(""), names(), &ReferenceNames::default(), &mut RejectAll)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn mentions_merge_by_last_name() {
        let doc = tagged("Yesterday Martin Brasier spoke. Later Brasier left.");
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        assert_eq!(persons.len(), 1);
        assert_eq!(persons[0].mentions.len(), 2);
        assert_eq!(persons[0].gender, Some(Gender::Male));
    }

    struct AcceptAll(Vec<String>);

    impl NameDecider for AcceptAll {
        fn decide(&mut self, query: &NameQuery) -> Result<NameDecision> {
            self.0.push(query.candidate.clone());
            Ok(NameDecision::Accept { canonical_name: None })
        }
    }

    #[test]
    fn ambiguous_runs_go_to_the_channel() {
        let doc = tagged("They met in Santa Barbara yesterday.");
        let mut decider = AcceptAll(Vec::new());
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut decider).unwrap();
        assert_eq!(decider.0, ["Santa Barbara"]);
        assert_eq!(persons[0].source, PersonSource::Manual);
        assert_eq!(persons[0].pattern, None);
    }

    #[test]
    fn pronoun_links() {
        let doc = tagged(
            "Yesterday Martin Brasier of Oxford University spoke. He also objects to the reasoning. Then they argue.",
        );
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        let links = link_pronouns(&doc, &persons);
        assert_eq!(links.len(), 1);
        assert_eq!((links[0].sentence, links[0].token), (1, 0));
        assert_eq!(persons[links[0].antecedent].canonical_name, "Brasier");
    }

    #[test]
    fn gender_filter_is_advisory() {
        let doc = tagged("Yesterday Barbara Brasier met Peter Jones. She left early.");
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        let links = link_pronouns(&doc, &persons);
        assert_eq!(persons[links[0].antecedent].canonical_name, "Brasier");

        let doc = tagged("Yesterday Peter Jones spoke. She left early.");
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        let links = link_pronouns(&doc, &persons);
        assert_eq!(persons[links[0].antecedent].canonical_name, "Jones");
    }

    #[test]
    fn links_never_point_forward() {
        let doc = tagged("He said that Peter Green left. Who knows who Peter Green is.");
        let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
        for link in link_pronouns(&doc, &persons) {
            let m = &link.antecedent_mention;
            assert!(m.sentence < link.sentence || (m.sentence == link.sentence && m.tokens.end <= link.token));
        }
    }

    proptest! {
        #[test]
        fn links_point_backwards_and_who_stays_in_its_sentence(
            sentences in prop::collection::vec(
                prop::collection::vec(prop::sample::select(vec![
                    "Stanley", "Awramik", "Martin", "Brasier", "Barbara", "Jones", "who", "he", "she",
                    "said", "the", "result", "of", "Oxford", "University", "P.", "Green",
                ]), 1..10),
                1..5,
            ),
        ) {
            let text = sentences
                .iter()
                .map(|s| format!("Then {}.", s.join(" ")))
                .collect::<Vec<_>>()
                .join(" ");
            let doc = tagged(&text);
            let persons = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
            for link in link_pronouns(&doc, &persons) {
                let m = &link.antecedent_mention;
                prop_assert!(
                    m.sentence < link.sentence || (m.sentence == link.sentence && m.tokens.end <= link.token)
                );
                prop_assert!(link.sentence - m.sentence <= 1);
                if doc.sentences[link.sentence].tokens[link.token].lemma == "who" {
                    prop_assert_eq!(m.sentence, link.sentence);
                }
            }
            let again = mark_persons(&doc, names(), &ReferenceNames::default(), &mut RejectAll).unwrap();
            prop_assert_eq!(persons, again);
        }
    }
}
