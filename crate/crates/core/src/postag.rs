//! Two-pass unigram tagger: lexicon lookup first, suffix guessing for the
//! words the lexicon does not know.

use crate::error::{Error, Result};
use crate::lexica::{data_lines, read_file, PosLexicon, BUNDLED_SUFFIXES, SUFFIXES_FILE};
use crate::preprocess::Token;
use crate::tag::Tag;
use serde::Serialize;
use std::path::Path;

/// Ordered fallback rules for out-of-lexicon words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuffixRules {
    suffixes: Vec<(String, Tag)>,
    capitalized: Tag,
    default: Tag,
}

impl Default for SuffixRules {
    fn default() -> Self {
        Self::parse(BUNDLED_SUFFIXES, Path::new(SUFFIXES_FILE)).expect("bundled suffix rules")
    }
}

impl SuffixRules {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&read_file(path)?, path)
    }

    /// Rows are `-suffix<TAB>TAG`, `@capitalized<TAB>TAG` and a final
    /// `@default<TAB>TAG`.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut suffixes = Vec::new();
        let mut capitalized = None;
        let mut default = None;
        for (line_no, line) in data_lines(text) {
            if default.is_some() {
                return Err(Error::malformed(origin, line_no, "rule after @default"));
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 2 {
                return Err(Error::malformed(
                    origin,
                    line_no,
                    format!("expected 2 tab-separated columns, found {}", cols.len()),
                ));
            }
            let tag: Tag = cols[1]
                .parse()
                .ok()
                .filter(|t| *t != Tag::None)
                .ok_or_else(|| Error::malformed(origin, line_no, format!("unknown tag `{}`", cols[1])))?;
            match cols[0] {
                "@capitalized" => capitalized = Some(tag),
                "@default" => default = Some(tag),
                rule => match rule.strip_prefix('-') {
                    Some(suffix) if !suffix.is_empty() => suffixes.push((suffix.to_lowercase(), tag)),
                    _ => return Err(Error::malformed(origin, line_no, format!("bad rule `{rule}`"))),
                },
            }
        }
        let default = default.ok_or_else(|| Error::malformed(origin, 0, "missing @default rule"))?;
        Ok(SuffixRules {
            suffixes,
            capitalized: capitalized.unwrap_or(default),
            default,
        })
    }

    /// Tag for a word absent from the lexicon. The first matching rule wins.
    pub fn morph_guess(&self, surface: &str) -> Tag {
        let lower = surface.to_lowercase();
        if let Some((_, tag)) = self
            .suffixes
            .iter()
            .find(|(suffix, _)| lower.len() > suffix.len() && lower.ends_with(suffix.as_str()))
        {
            return *tag;
        }
        if surface.chars().next().is_some_and(char::is_uppercase) {
            self.capitalized
        } else {
            self.default
        }
    }
}

fn is_punctuation(surface: &str) -> bool {
    !surface.is_empty() && !surface.chars().any(char::is_alphanumeric)
}

/// Pass 1 alone: the lexicon's most frequent tag, or [`Tag::None`].
pub fn lexicon_pass(tokens: &mut [Token], lexicon: &PosLexicon) {
    for token in tokens {
        token.tag = if token.lemma == "not" {
            Tag::Neg
        } else if let Some(tag) = lexicon.most_frequent(&token.surface) {
            tag
        } else if is_punctuation(&token.surface) {
            Tag::Punct
        } else {
            Tag::None
        };
    }
}

/// Tags every token; no [`Tag::None`] survives.
pub fn tag_tokens(tokens: &mut [Token], lexicon: &PosLexicon, rules: &SuffixRules) {
    lexicon_pass(tokens, lexicon);
    for token in tokens.iter_mut().filter(|t| t.tag == Tag::None) {
        token.tag = rules.morph_guess(&token.surface);
    }
}

/// `surface<TAB>TAG` per token, with a third column listing the lexicon's
/// other readings when the word is ambiguous.
pub fn debug_lines(tokens: &[Token], lexicon: &PosLexicon) -> Vec<String> {
    tokens
        .iter()
        .map(|token| {
            let others: Vec<&str> = lexicon
                .lookup(&token.surface)
                .unwrap_or(&[])
                .iter()
                .filter(|tc| tc.tag != token.tag)
                .map(|tc| tc.tag.name())
                .collect();
            if others.is_empty() {
                format!("{}\t{}", token.surface, token.tag.name())
            } else {
                format!("{}\t{}\t{}", token.surface, token.tag.name(), others.join(","))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexica::Lexica;
    use crate::preprocess::{tokenize, Abbreviations, Span};
    use proptest::prelude::*;

    fn tagged(text: &str) -> Vec<(String, Tag)> {
        let lex = Lexica::bundled();
        let mut tokens = tokenize(text, Span::new(0, text.len()), &Abbreviations::default());
        tag_tokens(&mut tokens, &lex.pos, &lex.suffixes);
        tokens.into_iter().map(|t| (t.surface, t.tag)).collect()
    }

    #[test]
    fn suffix_rules() {
        let rules = SuffixRules::default();
        assert_eq!(rules.morph_guess("flobbulation"), Tag::Nn);
        assert_eq!(rules.morph_guess("flobbulations"), Tag::Nns);
        assert_eq!(rules.morph_guess("glorping"), Tag::Vpr);
        assert_eq!(rules.morph_guess("zorbed"), Tag::Vpa);
        assert_eq!(rules.morph_guess("quaffly"), Tag::Rb);
        assert_eq!(rules.morph_guess("blorpic"), Tag::Adj);
        assert_eq!(rules.morph_guess("Awramik"), Tag::Np);
        assert_eq!(rules.morph_guess("zzyzx"), Tag::Nn);
    }

    #[test]
    fn suffix_file_validation() {
        let parse = |t: &str| SuffixRules::parse(t, Path::new("s.tsv"));
        assert!(parse("-ing\tVPR\n").is_err());
        assert!(parse("@default\tNN\n-ing\tVPR\n").is_err());
        assert!(parse("-ing\tXX\n@default\tNN\n").is_err());
        assert_eq!(parse("@default\tNN\n").unwrap().morph_guess("Foo"), Tag::Nn);
    }

    #[test]
    fn lexicon_words_and_modals() {
        assert_eq!(tagged("must"), vec![("must".into(), Tag::Mv)]);
        assert_eq!(tagged("flobbulation"), vec![("flobbulation".into(), Tag::Nn)]);
    }

    #[test]
    fn negation_is_hard_coded() {
        let lex = PosLexicon::parse("not\tRB\t100\n", Path::new("t")).unwrap();
        let mut tokens = vec![Token::new("not", Span::new(0, 3))];
        tag_tokens(&mut tokens, &lex, &SuffixRules::default());
        assert_eq!(tokens[0].tag, Tag::Neg);
    }

    #[test]
    fn lexicon_takes_priority_over_suffixes() {
        let lex = PosLexicon::parse("nation\tVB\t1\n", Path::new("t")).unwrap();
        let mut tokens = vec![Token::new("nation", Span::new(0, 6))];
        tag_tokens(&mut tokens, &lex, &SuffixRules::default());
        assert_eq!(tokens[0].tag, Tag::Vb);
    }

    #[test]
    fn tagging_trace_prefix() {
        let got: Vec<String> = tagged("The individual grains in them could not have accumulated mechanically")
            .into_iter()
            .map(|(_, t)| t.rendered().to_string())
            .collect();
        assert_eq!(got, ["ART", "ADJ", "NNS", "IN", "PPO", "MV", "*", "HAVE", "VPA", "RB"]);
    }

    #[test]
    fn debug_output_lists_runner_ups() {
        let lex = Lexica::bundled();
        let mut tokens = tokenize("show it", Span::new(0, 7), &Abbreviations::default());
        tag_tokens(&mut tokens, &lex.pos, &lex.suffixes);
        let lines = debug_lines(&tokens, &lex.pos);
        assert_eq!(lines[0], "show\tNN\tVB");
        assert_eq!(lines[1], "it\tPPS");
    }

    proptest! {
        #[test]
        fn tagging_is_total_and_deterministic(words in prop::collection::vec("[A-Za-z,.;()']{1,10}", 0..20)) {
            let lex = Lexica::bundled();
            let mut pos = 0;
            let tokens: Vec<Token> = words.iter().map(|w| {
                let t = Token::new(w.clone(), Span::new(pos, pos + w.len()));
                pos += w.len() + 1;
                t
            }).collect();
            let mut a = tokens.clone();
            let mut b = tokens;
            tag_tokens(&mut a, &lex.pos, &lex.suffixes);
            tag_tokens(&mut b, &lex.pos, &lex.suffixes);
            prop_assert!(a.iter().all(|t| t.tag != Tag::None));
            prop_assert_eq!(a, b);
        }
    }
}
