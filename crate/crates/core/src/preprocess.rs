//! Text normalization, sentence splitting and tokenization.
//!
//! All offsets are byte offsets into the placeholder-substituted text.

use crate::error::Result;
use crate::lexica::{data_lines, read_file, BUNDLED_ABBREVIATIONS};
use crate::tag::Tag;
use serde::Serialize;
use std::path::Path;

pub const MATH_PLACEHOLDER: &str = "MATH";
pub const FIGURE_PLACEHOLDER: &str = "FIG";

const MATH_ENVIRONMENTS: &[&str] = &[
    "equation",
    "equation*",
    "align",
    "align*",
    "eqnarray",
    "eqnarray*",
    "gather",
    "gather*",
    "multline",
    "multline*",
    "displaymath",
    "math",
];

/// Half-open byte range into [`Document::normalized_text`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn slice(self, text: &str) -> &str {
        &text[self.start..self.end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub span: Span,
    pub tag: Tag,
    pub lemma: String,
}

impl Token {
    pub fn new(surface: impl Into<String>, span: Span) -> Self {
        let surface = surface.into();
        let lemma = surface.to_lowercase();
        Token {
            surface,
            span,
            tag: Tag::None,
            lemma,
        }
    }

    pub fn is_capitalized(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub index: usize,
    pub span: Span,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    pub source_text: String,
    pub normalized_text: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    /// Substitutes placeholders, splits sentences and tokenizes. Tags are
    /// left as [`Tag::None`].
    pub fn new(raw: &str, abbreviations: &Abbreviations) -> Self {
        let normalized = substitute_placeholders(raw);
        let sentences = split_sentences(&normalized, abbreviations)
            .into_iter()
            .map(|span| tokenize(&normalized, span, abbreviations))
            .filter(|tokens| !tokens.is_empty())
            .enumerate()
            .map(|(index, tokens)| Sentence {
                index,
                span: Span::new(tokens[0].span.start, tokens[tokens.len() - 1].span.end),
                tokens,
            })
            .collect();
        Document {
            source_text: raw.to_string(),
            normalized_text: normalized,
            sentences,
        }
    }

    pub fn sentence_text(&self, sentence: &Sentence) -> &str {
        sentence.span.slice(&self.normalized_text)
    }
}

/// Words ending in a period that do not close a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abbreviations {
    entries: Vec<String>,
}

impl Default for Abbreviations {
    fn default() -> Self {
        Self::parse(BUNDLED_ABBREVIATIONS)
    }
}

impl Abbreviations {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&read_file(path.as_ref())?))
    }

    pub fn parse(text: &str) -> Self {
        Abbreviations {
            entries: data_lines(text).map(|(_, l)| l.trim().to_string()).collect(),
        }
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    /// Whether `text[..end]` ends with a listed abbreviation that starts at a
    /// word boundary.
    fn ends_with_abbreviation(&self, text: &str, end: usize) -> bool {
        let head = &text[..end];
        self.entries.iter().any(|abbr| {
            head.ends_with(abbr.as_str()) && {
                let before = &head[..head.len() - abbr.len()];
                before
                    .chars()
                    .next_back()
                    .is_none_or(|c| c.is_whitespace() || is_opening(c))
            }
        })
    }

    fn is_abbreviation(&self, word: &str) -> bool {
        self.entries.iter().any(|abbr| abbr == word)
    }
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '{' | '«' | '`')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | '“' | '‘' | ')' | ']' | '}' | '»')
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_trailing_punct(c: char) -> bool {
    matches!(c, '.' | ',' | ';' | ':' | '!' | '?' | '…') || is_closing(c)
}

/// `X.`, `S.E.`, `e.g.`: letters each followed by a period.
pub fn is_initialism(word: &str) -> bool {
    let mut chars = word.chars().peekable();
    if chars.peek().is_none() {
        return false;
    }
    while let Some(c) = chars.next() {
        if !c.is_alphabetic() || chars.next() != Some('.') {
            return false;
        }
    }
    true
}

/// A single capital letter followed by a period.
pub fn is_initial(word: &str) -> bool {
    let mut chars = word.chars();
    matches!((chars.next(), chars.next(), chars.next()), (Some(c), Some('.'), None) if c.is_uppercase())
}

/// Replaces TeX math with `MATH` and runs of figure-like lines (more than
/// half of the non-whitespace characters non-alphabetic) with `FIG`.
/// Idempotent.
pub fn substitute_placeholders(raw: &str) -> String {
    let mut text = raw.to_string();
    loop {
        let next = replace_math_once(&text);
        if next == text {
            break;
        }
        text = next;
    }
    replace_figure_lines(&text)
}

fn replace_math_once(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        if rest.starts_with("\\$") {
            out.push_str("\\$");
            i += 2;
            continue;
        }
        if let Some(end) = delimited_math(rest) {
            out.push_str(MATH_PLACEHOLDER);
            i += end;
            continue;
        }
        let c = rest.chars().next().expect("non-empty rest");
        out.push(c);
        i += c.len_utf8();
    }
    out
}

/// Length of the math segment at the start of `rest`, if any.
fn delimited_math(rest: &str) -> Option<usize> {
    if let Some(body) = rest.strip_prefix("$$") {
        return body.find("$$").filter(|&n| n > 0).map(|n| n + 4);
    }
    if let Some(body) = rest.strip_prefix("\\[") {
        return body.find("\\]").map(|n| n + 4);
    }
    if let Some(body) = rest.strip_prefix("\\(") {
        return body.find("\\)").map(|n| n + 4);
    }
    if let Some(body) = rest.strip_prefix("\\begin{") {
        let close = body.find('}')?;
        let env = &body[..close];
        if MATH_ENVIRONMENTS.contains(&env) {
            let end_marker = format!("\\end{{{env}}}");
            let after = &body[close + 1..];
            return after
                .find(&end_marker)
                .map(|n| "\\begin{".len() + close + 1 + n + end_marker.len());
        }
        return None;
    }
    if let Some(body) = rest.strip_prefix('$') {
        return inline_dollar_math(body).map(|n| n + 1);
    }
    None
}

/// Inline `$...$`: the opener must be followed by a non-space character, the
/// closer preceded by one and not followed by a digit; no blank lines inside.
fn inline_dollar_math(body: &str) -> Option<usize> {
    let first = body.chars().next()?;
    if first.is_whitespace() || first == '$' {
        return None;
    }
    let mut prev = first;
    let mut iter = body.char_indices().skip(1).peekable();
    while let Some((idx, c)) = iter.next() {
        if c == '\n' && prev == '\n' {
            return None;
        }
        if c == '$' && prev != '\\' && !prev.is_whitespace() {
            let next_is_digit = iter.peek().is_some_and(|&(_, n)| n.is_ascii_digit());
            if !next_is_digit {
                return Some(idx + 1);
            }
        }
        if !(c == ' ' || c == '\t' || c == '\r') {
            prev = c;
        } else {
            prev = ' ';
        }
    }
    None
}

fn is_figure_line(line: &str) -> bool {
    let (mut total, mut alpha) = (0usize, 0usize);
    for c in line.chars().filter(|c| !c.is_whitespace()) {
        total += 1;
        if c.is_alphabetic() {
            alpha += 1;
        }
    }
    total > 0 && (total - alpha) * 2 > total
}

fn replace_figure_lines(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_run = false;
    for line in text.split_inclusive('\n') {
        let (body, newline) = match line.strip_suffix('\n') {
            Some(body) => (body, "\n"),
            None => (line, ""),
        };
        if is_figure_line(body) {
            if !in_run {
                out.push_str(FIGURE_PLACEHOLDER);
                in_run = true;
            }
            if !newline.is_empty() {
                // The run's newline is emitted once it ends.
                continue;
            }
        } else {
            if in_run {
                out.push('\n');
                in_run = false;
            }
            out.push_str(body);
        }
        out.push_str(newline);
    }
    if in_run && text.ends_with('\n') {
        out.push('\n');
    }
    out
}

/// Sentence spans over `text`. Boundaries fall after `.`, `!` or `?` (plus
/// any closing quotes or brackets) when whitespace and an uppercase word
/// follow, and at blank lines. Listed abbreviations and single-letter
/// initials never end a sentence.
pub fn split_sentences(text: &str, abbreviations: &Abbreviations) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut last_end = 0;
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (i, c) = chars[k];
        if c.is_whitespace() {
            if c == '\n' && start.is_some() && blank_line_follows(&chars, k + 1) {
                spans.push(Span::new(start.take().unwrap(), last_end));
            }
            k += 1;
            continue;
        }
        if start.is_none() {
            start = Some(i);
        }
        last_end = i + c.len_utf8();
        if is_terminal(c) {
            // Swallow further terminals and closers.
            let mut j = k + 1;
            while j < chars.len() && (is_terminal(chars[j].1) || is_closing(chars[j].1)) {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |&(b, _)| b);
            let boundary = match chars.get(j) {
                None => true,
                Some(&(_, next)) if next.is_whitespace() => {
                    let mut m = j;
                    while m < chars.len() && chars[m].1.is_whitespace() {
                        m += 1;
                    }
                    while m < chars.len() && is_opening(chars[m].1) {
                        m += 1;
                    }
                    match chars.get(m) {
                        None => true,
                        Some(&(_, first)) => first.is_uppercase(),
                    }
                }
                Some(_) => false,
            };
            let exempt = c == '.' && {
                let dot_end = i + 1;
                let word_start = text[..i]
                    .char_indices()
                    .rev()
                    .find(|&(_, ch)| ch.is_whitespace())
                    .map_or(0, |(b, ch)| b + ch.len_utf8());
                let word = text[word_start..dot_end].trim_start_matches(is_opening);
                is_initial(word) || abbreviations.ends_with_abbreviation(text, dot_end)
            };
            if boundary && !exempt {
                spans.push(Span::new(start.take().unwrap(), end));
                last_end = end;
                k = j;
                continue;
            }
            last_end = end;
            k = j;
            continue;
        }
        k += 1;
    }
    if let Some(s) = start {
        spans.push(Span::new(s, last_end));
    }
    spans
}

fn blank_line_follows(chars: &[(usize, char)], mut k: usize) -> bool {
    while k < chars.len() {
        match chars[k].1 {
            '\n' => return true,
            c if c.is_whitespace() => k += 1,
            _ => return false,
        }
    }
    false
}

/// Tokens of one sentence span, untagged.
///
/// Splits on whitespace, detaches leading and trailing punctuation (keeping
/// abbreviations and initialisms whole) and expands `cannot` / `n't`
/// contractions into a verb plus `not`.
pub fn tokenize(text: &str, span: Span, abbreviations: &Abbreviations) -> Vec<Token> {
    let mut tokens = Vec::new();
    let region = span.slice(text);
    let mut chunk_start: Option<usize> = None;
    for (i, c) in region.char_indices().chain(std::iter::once((region.len(), ' '))) {
        if c.is_whitespace() {
            if let Some(s) = chunk_start.take() {
                tokenize_chunk(&region[s..i], span.start + s, abbreviations, &mut tokens);
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(i);
        }
    }
    tokens
}

fn tokenize_chunk(chunk: &str, offset: usize, abbreviations: &Abbreviations, out: &mut Vec<Token>) {
    let mut core_start = 0;
    for (i, c) in chunk.char_indices() {
        if is_opening(c) && i + c.len_utf8() <= chunk.len() {
            out.push(Token::new(
                c.to_string(),
                Span::new(offset + i, offset + i + c.len_utf8()),
            ));
            core_start = i + c.len_utf8();
        } else {
            break;
        }
    }
    let mut core_end = chunk.len();
    let mut trailing: Vec<(usize, char)> = Vec::new();
    loop {
        let core = &chunk[core_start..core_end];
        if core.is_empty() || abbreviations.is_abbreviation(core) || is_initialism(core) {
            break;
        }
        match core.chars().next_back() {
            Some(c) if is_trailing_punct(c) => {
                core_end -= c.len_utf8();
                trailing.push((core_end, c));
            }
            _ => break,
        }
    }
    push_core(&chunk[core_start..core_end], offset + core_start, out);

    // Trailing punctuation, restored to text order; runs of periods stay one token.
    trailing.reverse();
    let mut idx = 0;
    while idx < trailing.len() {
        let (pos, c) = trailing[idx];
        let mut end = pos + c.len_utf8();
        let mut surface = c.to_string();
        if c == '.' {
            while idx + 1 < trailing.len() && trailing[idx + 1].1 == '.' {
                idx += 1;
                surface.push('.');
                end += 1;
            }
        }
        out.push(Token::new(surface, Span::new(offset + pos, offset + end)));
        idx += 1;
    }
}

fn push_core(core: &str, offset: usize, out: &mut Vec<Token>) {
    if core.is_empty() {
        return;
    }
    let lower = core.to_lowercase();
    if lower == "cannot" {
        out.push(Token::new(&core[..3], Span::new(offset, offset + 3)));
        out.push(Token::new("not", Span::new(offset + 3, offset + core.len())));
        return;
    }
    if let Some(base_len) = negative_contraction(core) {
        let base = &core[..base_len];
        let (surface, split) = match base.to_lowercase().as_str() {
            // can't: the `n` belongs to the verb
            "ca" => (format!("{base}n"), base_len + 1),
            "wo" => (restore_case(base, "will"), base_len),
            "sha" => (restore_case(base, "shall"), base_len),
            _ => (base.to_string(), base_len),
        };
        if !surface.is_empty() {
            out.push(Token::new(surface, Span::new(offset, offset + split)));
        }
        out.push(Token::new("not", Span::new(offset + split, offset + core.len())));
        return;
    }
    out.push(Token::new(core, Span::new(offset, offset + core.len())));
}

/// Byte length of the verb part of an `n't` contraction.
fn negative_contraction(core: &str) -> Option<usize> {
    let rest = core.strip_suffix('t').or_else(|| core.strip_suffix('T'))?;
    let apostrophe = rest.chars().next_back()?;
    if !matches!(apostrophe, '\'' | '’' | '‘') {
        return None;
    }
    let rest = &rest[..rest.len() - apostrophe.len_utf8()];
    let rest = rest.strip_suffix('n').or_else(|| rest.strip_suffix('N'))?;
    Some(rest.len())
}

fn restore_case(original: &str, replacement: &str) -> String {
    if original.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = replacement.chars();
        chars
            .next()
            .map(|c| c.to_uppercase().chain(chars).collect())
            .unwrap_or_default()
    } else {
        replacement.to_string()
    }
}
