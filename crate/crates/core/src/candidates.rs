//! Candidate paraphrases, their constraint coefficients, and the JSON
//! candidate file.
//!
//! A candidate rewrites exactly one source sentence. Its coefficients are
//! the changes it causes in function words, words and sentences; they are
//! always re-derivable from the replacement text, and the derived values win
//! when a file disagrees.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cost_model::{classify_meaning_effect, compute_cost, CostBreakdown, CostWeights, MeaningClass};
use crate::text_metrics::{compute_metrics, normalize_whitespace, tokenize, Document, Lexicon, MetricsSummary, Sentence};

/// Per-candidate deltas: function words, words, sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Coefficients {
    #[serde(rename = "f")]
    pub function_words: i64,
    #[serde(rename = "w")]
    pub words: i64,
    #[serde(rename = "s")]
    pub sentences: i64,
}

impl Coefficients {
    pub const fn new(function_words: i64, words: i64, sentences: i64) -> Self {
        Coefficients {
            function_words,
            words,
            sentences,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Coefficients::default()
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(f={:+}, w={:+}, s={:+})",
            self.function_words, self.words, self.sentences
        )
    }
}

pub fn derive_coefficients(original: &Sentence, replacement_text: &str, lexicon: &Lexicon) -> Coefficients {
    let replacement = compute_metrics(&Document::parse(replacement_text, lexicon));
    Coefficients {
        function_words: replacement.function_words - original.closed_count() as i64,
        words: replacement.words - original.word_count() as i64,
        sentences: replacement.sentences - 1,
    }
}

/// True when the replacement tokenizes to exactly the original's tokens.
pub fn is_null_paraphrase(original: &Sentence, replacement_text: &str) -> bool {
    let replacement = tokenize(replacement_text);
    let original_tokens = original.tokens.iter().map(|t| t.surface.as_str());
    let replacement_tokens = replacement
        .sentences
        .iter()
        .flat_map(|s| &s.tokens)
        .map(|t| t.surface.as_str());
    original_tokens.eq(replacement_tokens)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaphraseCandidate {
    /// 1-based source sentence.
    pub sentence: usize,
    /// 1-based position among the candidates for the same sentence.
    pub index: usize,
    pub replacement: String,
    pub coefficients: Coefficients,
    pub meaning_class: MeaningClass,
    pub discourse_effect: u32,
}

impl ParaphraseCandidate {
    pub fn id(&self) -> (usize, usize) {
        (self.sentence, self.index)
    }

    pub fn cost(&self, weights: &CostWeights) -> CostBreakdown {
        compute_cost(self.meaning_class, self.discourse_effect, weights)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub document: Document,
    pub lexicon: Lexicon,
    /// Grouped by sentence, then by candidate index.
    pub candidates: Vec<ParaphraseCandidate>,
}

impl CandidateSet {
    pub fn new(document_text: &str, lexicon: Lexicon) -> Self {
        CandidateSet {
            document: Document::parse(document_text, &lexicon),
            lexicon,
            candidates: Vec::new(),
        }
    }

    /// Appends a candidate for 1-based `sentence`, deriving coefficients and
    /// meaning class from the text. Returns its `(i, j)` id.
    pub fn add(&mut self, sentence: usize, replacement: &str) -> Result<(usize, usize), LoadError> {
        self.add_annotated(sentence, replacement, None, 0)
    }

    pub fn add_annotated(
        &mut self,
        sentence: usize,
        replacement: &str,
        meaning_class: Option<MeaningClass>,
        discourse_effect: u32,
    ) -> Result<(usize, usize), LoadError> {
        let original = self.original(sentence).ok_or(LoadError::UnknownSentence {
            location: format!("sentence {sentence}"),
            sentence,
            sentences: self.document.sentences.len(),
        })?;
        let coefficients = derive_coefficients(original, replacement, &self.lexicon);
        let meaning_class =
            meaning_class.unwrap_or_else(|| classify_meaning_effect(original, replacement, &self.lexicon));
        let index = self.candidates.iter().filter(|c| c.sentence == sentence).count() + 1;
        let candidate = ParaphraseCandidate {
            sentence,
            index,
            replacement: replacement.to_string(),
            coefficients,
            meaning_class,
            discourse_effect,
        };
        let at = self.candidates.partition_point(|c| c.id() < candidate.id());
        self.candidates.insert(at, candidate);
        Ok((sentence, index))
    }

    pub fn original(&self, sentence: usize) -> Option<&Sentence> {
        sentence.checked_sub(1).and_then(|i| self.document.sentences.get(i))
    }

    pub fn base_metrics(&self) -> MetricsSummary {
        compute_metrics(&self.document)
    }

    pub fn position(&self, sentence: usize, index: usize) -> Option<usize> {
        self.candidates.iter().position(|c| c.id() == (sentence, index))
    }

    pub fn get(&self, sentence: usize, index: usize) -> Option<&ParaphraseCandidate> {
        self.position(sentence, index).map(|p| &self.candidates[p])
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    /// Replaces every stored coefficient with the value derived from text,
    /// returning one message per candidate that changed.
    pub fn reconcile(&mut self) -> Vec<String> {
        let mut changed = Vec::new();
        for c in &mut self.candidates {
            let Some(original) = c.sentence.checked_sub(1).and_then(|i| self.document.sentences.get(i)) else {
                continue;
            };
            let derived = derive_coefficients(original, &c.replacement, &self.lexicon);
            if derived != c.coefficients {
                changed.push(format!(
                    "candidate ({}, {}): stored {} replaced by derived {}",
                    c.sentence, c.index, c.coefficients, derived
                ));
                c.coefficients = derived;
            }
        }
        changed
    }

    pub fn to_file(&self) -> CandidateFile {
        CandidateFile {
            document: self.document.source_text.clone(),
            candidates: self
                .candidates
                .iter()
                .map(|c| CandidateRecord {
                    sentence: c.sentence,
                    replacement: c.replacement.clone(),
                    f: Some(c.coefficients.function_words),
                    w: Some(c.coefficients.words),
                    s: Some(c.coefficients.sentences),
                    meaning_class: Some(c.meaning_class),
                    discourse_effect: Some(c.discourse_effect),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("candidate file serializes")
    }
}

/// On-disk shape of a candidate file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateFile {
    pub document: String,
    #[serde(default)]
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateRecord {
    pub sentence: usize,
    pub replacement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meaning_class: Option<MeaningClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discourse_effect: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
    #[error("{location}: sentence {sentence} does not exist (document has {sentences})")]
    UnknownSentence {
        location: String,
        sentence: usize,
        sentences: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadOptions {
    /// Accept empty replacements, which delete their sentence.
    pub allow_sentence_deletion: bool,
}

pub fn load_candidates(path: impl AsRef<Path>, lexicon: &Lexicon, options: LoadOptions) -> Result<CandidateSet, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_candidates(&text, lexicon, options)
}

pub fn parse_candidates(json: &str, lexicon: &Lexicon, options: LoadOptions) -> Result<CandidateSet, LoadError> {
    from_file(parse_candidate_file(json)?, lexicon, options)
}

/// Parses the JSON shape only; nothing is checked against the document.
pub fn parse_candidate_file(json: &str) -> Result<CandidateFile, LoadError> {
    serde_json::from_str(json).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Builds a set from a parsed file. Coefficients present in the file are
/// kept as given; absent ones are derived. Meaning classes are derived when
/// absent.
pub fn from_file(file: CandidateFile, lexicon: &Lexicon, options: LoadOptions) -> Result<CandidateSet, LoadError> {
    let mut set = CandidateSet::new(&file.document, lexicon.clone());
    let sentences = set.document.sentences.len();
    for (pos, record) in file.candidates.into_iter().enumerate() {
        let location = format!("candidates[{pos}]");
        if record.sentence == 0 || record.sentence > sentences {
            return Err(LoadError::UnknownSentence {
                location,
                sentence: record.sentence,
                sentences,
            });
        }
        if normalize_whitespace(&record.replacement).is_empty() && !options.allow_sentence_deletion {
            return Err(LoadError::Schema {
                location,
                message: "empty replacement deletes the sentence, and sentence deletion is disabled".into(),
            });
        }
        let id = set.add_annotated(
            record.sentence,
            &record.replacement,
            record.meaning_class,
            record.discourse_effect.unwrap_or(0),
        )?;
        let pos = set.position(id.0, id.1).expect("just added");
        let coefficients = &mut set.candidates[pos].coefficients;
        if let Some(f) = record.f {
            coefficients.function_words = f;
        }
        if let Some(w) = record.w {
            coefficients.words = w;
        }
        if let Some(s) = record.s {
            coefficients.sentences = s;
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    CoefficientMismatch {
        sentence: usize,
        index: usize,
        stored: Coefficients,
        derived: Coefficients,
    },
    DuplicateCandidate {
        sentence: usize,
        index: usize,
    },
    SentenceOutOfRange {
        sentence: usize,
        index: usize,
        sentences: usize,
    },
    /// Some exclusivity-respecting selection leaves fewer than one sentence.
    SentenceUnderflow {
        minimum_sentences: i64,
    },
    /// Some exclusivity-respecting selection leaves fewer than one word.
    WordUnderflow {
        minimum_words: i64,
    },
    NullParaphrase {
        sentence: usize,
        index: usize,
    },
    SentenceDeletion {
        sentence: usize,
        index: usize,
    },
    /// A non-final replacement that would run into the next sentence.
    UnterminatedReplacement {
        sentence: usize,
        index: usize,
    },
}

impl ValidationIssue {
    /// Warnings do not stop a solve; everything else does.
    pub fn is_warning(&self) -> bool {
        matches!(
            self,
            ValidationIssue::CoefficientMismatch { .. } | ValidationIssue::NullParaphrase { .. }
        )
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            CoefficientMismatch {
                sentence,
                index,
                stored,
                derived,
            } => write!(
                f,
                "candidate ({sentence}, {index}): stored coefficients {stored} differ from derived {derived}"
            ),
            DuplicateCandidate { sentence, index } => {
                write!(f, "candidate ({sentence}, {index}): duplicate id")
            }
            SentenceOutOfRange {
                sentence,
                index,
                sentences,
            } => write!(
                f,
                "candidate ({sentence}, {index}): sentence index outside 1..={sentences}"
            ),
            SentenceUnderflow { minimum_sentences } => write!(
                f,
                "a permitted selection leaves {minimum_sentences} sentences; at least 1 is required"
            ),
            WordUnderflow { minimum_words } => write!(
                f,
                "a permitted selection leaves {minimum_words} words; at least 1 is required"
            ),
            NullParaphrase { sentence, index } => {
                write!(f, "candidate ({sentence}, {index}): replacement is identical to the original")
            }
            SentenceDeletion { sentence, index } => write!(
                f,
                "candidate ({sentence}, {index}): deletes its sentence, which is disabled"
            ),
            UnterminatedReplacement { sentence, index } => write!(
                f,
                "candidate ({sentence}, {index}): replacement must end with . ! or ? to stay a separate sentence"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| !i.is_warning())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| i.is_warning())
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidateOptions {
    pub per_sentence_exclusivity: bool,
    pub allow_sentence_deletion: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            per_sentence_exclusivity: true,
            allow_sentence_deletion: false,
        }
    }
}

pub fn validate_candidate_set(cs: &CandidateSet) -> ValidationReport {
    validate_with(cs, ValidateOptions::default())
}

pub fn validate_with(cs: &CandidateSet, options: ValidateOptions) -> ValidationReport {
    let mut issues = Vec::new();
    let sentences = cs.document.sentences.len();

    let mut seen = std::collections::HashSet::new();
    for c in &cs.candidates {
        let (sentence, index) = c.id();
        if !seen.insert(c.id()) {
            issues.push(ValidationIssue::DuplicateCandidate { sentence, index });
        }
        let Some(original) = cs.original(sentence) else {
            issues.push(ValidationIssue::SentenceOutOfRange {
                sentence,
                index,
                sentences,
            });
            continue;
        };
        let derived = derive_coefficients(original, &c.replacement, &cs.lexicon);
        if derived != c.coefficients {
            issues.push(ValidationIssue::CoefficientMismatch {
                sentence,
                index,
                stored: c.coefficients,
                derived,
            });
        }
        let empty = normalize_whitespace(&c.replacement).is_empty();
        if empty && !options.allow_sentence_deletion {
            issues.push(ValidationIssue::SentenceDeletion { sentence, index });
        }
        if !empty && is_null_paraphrase(original, &c.replacement) {
            issues.push(ValidationIssue::NullParaphrase { sentence, index });
        }
        if !empty && sentence < sentences && !ends_with_boundary(&c.replacement) {
            issues.push(ValidationIssue::UnterminatedReplacement { sentence, index });
        }
    }

    let base = cs.base_metrics();
    let (min_sentences, min_words) = worst_case_counts(
        &base,
        cs.candidates.iter().map(|c| (c.sentence, c.coefficients)),
        options.per_sentence_exclusivity,
    );
    if base.sentences >= 1 && min_sentences < 1 {
        issues.push(ValidationIssue::SentenceUnderflow {
            minimum_sentences: min_sentences,
        });
    }
    if base.words >= 1 && min_words < 1 {
        issues.push(ValidationIssue::WordUnderflow { minimum_words: min_words });
    }
    ValidationReport { issues }
}

/// Smallest reachable sentence and word totals. With exclusivity each
/// sentence contributes at most its single most negative candidate.
pub fn worst_case_counts(
    base: &MetricsSummary,
    candidates: impl IntoIterator<Item = (usize, Coefficients)>,
    per_sentence_exclusivity: bool,
) -> (i64, i64) {
    use std::collections::BTreeMap;
    let mut sentences = base.sentences;
    let mut words = base.words;
    if per_sentence_exclusivity {
        let mut worst: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        for (i, c) in candidates {
            let e = worst.entry(i).or_insert((0, 0));
            e.0 = e.0.min(c.sentences);
            e.1 = e.1.min(c.words);
        }
        for (s, w) in worst.values() {
            sentences += s;
            words += w;
        }
    } else {
        for (_, c) in candidates {
            sentences += c.sentences.min(0);
            words += c.words.min(0);
        }
    }
    (sentences, words)
}

fn ends_with_boundary(text: &str) -> bool {
    let alone = tokenize(text).sentences.len();
    let followed = tokenize(&format!("{text} X")).sentences.len();
    followed == alone + 1
}
