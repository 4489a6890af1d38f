//! Tokenization, sentence segmentation, open/closed word classification and
//! the three document counts every constraint is written against: total
//! words, sentences and function words.
//!
//! Sentence boundaries are deliberately simple. A sentence ends at `.`, `!`
//! or `?` (plus any closing quotes or brackets glued to it) when followed by
//! whitespace or the end of input. Abbreviations are not special-cased.

mod lexicon;

use std::ops::Range;

use serde::Serialize;

use crate::rational::{self, Rational};

pub use lexicon::{Lexicon, LexiconError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WordClass {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub is_word: bool,
    /// `None` for punctuation, and for words that have not been classified.
    pub word_class: Option<WordClass>,
    /// Byte range in the document's source text.
    pub span: Range<usize>,
}

impl Token {
    pub fn is_closed(&self) -> bool {
        self.word_class == Some(WordClass::Closed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub span: Range<usize>,
}

impl Sentence {
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word).count()
    }

    pub fn closed_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_closed()).count()
    }

    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub sentences: Vec<Sentence>,
    pub source_text: String,
}

impl Document {
    /// Tokenize and classify in one step.
    pub fn parse(raw: &str, lexicon: &Lexicon) -> Self {
        classify_words(tokenize(raw), lexicon)
    }

    /// Verbatim source slice for sentence `index` (0-based).
    pub fn sentence_text(&self, index: usize) -> &str {
        &self.source_text[self.sentences[index].span.clone()]
    }

    /// Sentences joined by single spaces, with runs of whitespace collapsed.
    pub fn normalized_text(&self) -> String {
        let joined = (0..self.sentences.len())
            .map(|i| self.sentence_text(i))
            .collect::<Vec<_>>()
            .join(" ");
        normalize_whitespace(&joined)
    }
}

pub fn normalize_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("ratio undefined for an empty document")]
pub struct EmptyDocument;

/// Document counts. Ratios are exact and only defined when the relevant
/// denominator is non-zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MetricsSummary {
    pub words: i64,
    pub sentences: i64,
    pub function_words: i64,
}

impl MetricsSummary {
    pub fn new(words: i64, sentences: i64, function_words: i64) -> Self {
        MetricsSummary {
            words,
            sentences,
            function_words,
        }
    }

    pub fn avg_sentence_length(&self) -> Result<Rational, EmptyDocument> {
        if self.sentences == 0 {
            return Err(EmptyDocument);
        }
        Ok(rational::ratio(self.words, self.sentences))
    }

    /// Function words over total words.
    pub fn lexical_density(&self) -> Result<Rational, EmptyDocument> {
        if self.words == 0 {
            return Err(EmptyDocument);
        }
        Ok(rational::ratio(self.function_words, self.words))
    }

    /// Counts after adding per-candidate deltas.
    pub fn shifted(&self, delta_function_words: i64, delta_words: i64, delta_sentences: i64) -> Self {
        MetricsSummary {
            words: self.words + delta_words,
            sentences: self.sentences + delta_sentences,
            function_words: self.function_words + delta_function_words,
        }
    }
}

impl std::ops::Add for MetricsSummary {
    type Output = MetricsSummary;

    fn add(self, rhs: Self) -> Self {
        self.shifted(rhs.function_words, rhs.words, rhs.sentences)
    }
}

/// Split raw text into sentences of word and punctuation tokens. Words are
/// left unclassified.
pub fn tokenize(raw: &str) -> Document {
    let tokens = lex(raw);
    let mut sentences = Vec::new();
    let mut current: Vec<Token> = Vec::new();

    let mut idx = 0;
    while idx < tokens.len() {
        let token = tokens[idx].clone();
        let terminal = !token.is_word && matches!(token.surface.as_str(), "." | "!" | "?");
        current.push(token);
        idx += 1;
        if !terminal {
            continue;
        }
        while idx < tokens.len()
            && !tokens[idx].is_word
            && is_closing(&tokens[idx].surface)
            && tokens[idx].span.start == current.last().unwrap().span.end
        {
            current.push(tokens[idx].clone());
            idx += 1;
        }
        let end = current.last().unwrap().span.end;
        let at_boundary = raw[end..].chars().next().is_none_or(char::is_whitespace);
        if at_boundary {
            close_sentence(&mut sentences, &mut current);
        }
    }
    close_sentence(&mut sentences, &mut current);
    // Trailing punctuation with no words joins the last sentence.
    if !current.is_empty() {
        if let Some(last) = sentences.last_mut() {
            last.tokens.append(&mut current);
            last.span.end = last.tokens.last().unwrap().span.end;
        }
    }

    Document {
        sentences,
        source_text: raw.to_string(),
    }
}

fn close_sentence(sentences: &mut Vec<Sentence>, current: &mut Vec<Token>) {
    if current.is_empty() {
        return;
    }
    if !current.iter().any(|t| t.is_word) {
        // A word-less run belongs to the previous sentence, or is carried
        // forward when there is none yet.
        if let Some(last) = sentences.last_mut() {
            last.tokens.append(current);
            last.span.end = last.tokens.last().unwrap().span.end;
        }
        return;
    }
    let tokens = std::mem::take(current);
    let span = tokens[0].span.start..tokens.last().unwrap().span.end;
    sentences.push(Sentence { tokens, span });
}

fn is_closing(surface: &str) -> bool {
    matches!(surface, "\"" | "'" | ")" | "]" | "}" | "\u{201d}" | "\u{2019}")
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-')
}

fn lex(raw: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = raw.char_indices().collect();
    let end_of = |k: usize| chars.get(k).map_or(raw.len(), |&(pos, _)| pos);
    let mut tokens = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (start, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if !c.is_alphanumeric() {
            k += 1;
            tokens.push(Token {
                surface: c.to_string(),
                is_word: false,
                word_class: None,
                span: start..end_of(k),
            });
            continue;
        }
        k += 1;
        while k < chars.len() {
            let c = chars[k].1;
            let next = chars.get(k + 1).map(|&(_, n)| n);
            let prev = chars[k - 1].1;
            let glued = c.is_alphanumeric()
                || (is_joiner(c) && next.is_some_and(char::is_alphanumeric))
                || (matches!(c, '.' | ',')
                    && prev.is_ascii_digit()
                    && next.is_some_and(|n| n.is_ascii_digit()));
            if !glued {
                break;
            }
            k += 1;
        }
        let span = start..end_of(k);
        tokens.push(Token {
            surface: raw[span.clone()].to_string(),
            is_word: true,
            word_class: None,
            span,
        });
    }
    tokens
}

/// Assign OPEN/CLOSED to every word token by lexicon lookup.
pub fn classify_words(mut doc: Document, lexicon: &Lexicon) -> Document {
    for token in doc.sentences.iter_mut().flat_map(|s| s.tokens.iter_mut()) {
        if token.is_word {
            token.word_class = Some(lexicon.classify(&token.surface));
        }
    }
    doc
}

pub fn compute_metrics(doc: &Document) -> MetricsSummary {
    let words = doc.sentences.iter().map(Sentence::word_count).sum::<usize>();
    let closed = doc.sentences.iter().map(Sentence::closed_count).sum::<usize>();
    MetricsSummary {
        words: words as i64,
        sentences: doc.sentences.len() as i64,
        function_words: closed as i64,
    }
}

/// Metrics of a standalone piece of text.
pub fn metrics_of(text: &str, lexicon: &Lexicon) -> MetricsSummary {
    compute_metrics(&Document::parse(text, lexicon))
}
