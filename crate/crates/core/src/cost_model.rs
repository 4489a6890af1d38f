//! Cost of a paraphrase: a meaning component from the open/closed makeup of
//! the changed words, plus a weighted discourse component from annotated
//! question counts.

use std::collections::HashMap;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::text_metrics::{tokenize, Lexicon, Sentence, WordClass};

const RELATIVE_PRONOUNS: &[&str] = &["which", "that", "who", "whom", "whose"];

/// Size of the change in meaning, smallest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MeaningClass {
    None,
    ClosedOnly,
    SingleOpen,
    MultiOpen,
}

impl MeaningClass {
    pub const ALL: [MeaningClass; 4] = [
        MeaningClass::None,
        MeaningClass::ClosedOnly,
        MeaningClass::SingleOpen,
        MeaningClass::MultiOpen,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("weight for {0:?} is negative")]
    NegativeWeight(MeaningClass),
    #[error("discourse weight is negative")]
    NegativeLambda,
    #[error("weight for NONE must be 0")]
    NonZeroNoneWeight,
    #[error("weights must not decrease with meaning class ({lower:?} > {higher:?})")]
    NotMonotone {
        lower: MeaningClass,
        higher: MeaningClass,
    },
    #[error("question counts must be non-negative (got {original} and {replacement})")]
    NegativeQuestionCount { original: i64, replacement: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostWeights {
    pub none: Rational,
    pub closed_only: Rational,
    pub single_open: Rational,
    pub multi_open: Rational,
    pub discourse_lambda: Rational,
}

impl Default for CostWeights {
    /// 0 / 1 / 3 / 6 with a discourse weight of 1.
    fn default() -> Self {
        CostWeights {
            none: rational::int(0),
            closed_only: rational::int(1),
            single_open: rational::int(3),
            multi_open: rational::int(6),
            discourse_lambda: rational::int(1),
        }
    }
}

impl CostWeights {
    pub fn validate(&self) -> Result<(), CostError> {
        for class in MeaningClass::ALL {
            if self.weight(class).is_negative() {
                return Err(CostError::NegativeWeight(class));
            }
        }
        if self.discourse_lambda.is_negative() {
            return Err(CostError::NegativeLambda);
        }
        if !self.none.is_zero() {
            return Err(CostError::NonZeroNoneWeight);
        }
        for pair in MeaningClass::ALL.windows(2) {
            if self.weight(pair[0]) > self.weight(pair[1]) {
                return Err(CostError::NotMonotone {
                    lower: pair[0],
                    higher: pair[1],
                });
            }
        }
        Ok(())
    }

    pub fn weight(&self, class: MeaningClass) -> &Rational {
        match class {
            MeaningClass::None => &self.none,
            MeaningClass::ClosedOnly => &self.closed_only,
            MeaningClass::SingleOpen => &self.single_open,
            MeaningClass::MultiOpen => &self.multi_open,
        }
    }

    /// Positivity floor: the smallest non-zero weight over 100.
    pub fn epsilon(&self) -> Rational {
        let smallest = MeaningClass::ALL
            .iter()
            .map(|&c| self.weight(c))
            .chain(std::iter::once(&self.discourse_lambda))
            .filter(|w| w.is_positive())
            .min()
            .cloned()
            .unwrap_or_else(|| rational::int(1));
        smallest / rational::int(100)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        CostWeights {
            none: &self.none * factor,
            closed_only: &self.closed_only * factor,
            single_open: &self.single_open * factor,
            multi_open: &self.multi_open * factor,
            discourse_lambda: &self.discourse_lambda * factor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    pub meaning_component: Rational,
    /// Already multiplied by the discourse weight.
    pub discourse_component: Rational,
    pub total: Rational,
    /// Set when both components were zero and the floor was used instead.
    pub floor_applied: bool,
}

/// Classifies a rewrite by the multiset difference of its words against the
/// original sentence (case-insensitive).
pub fn classify_meaning_effect(
    original: &Sentence,
    replacement_text: &str,
    lexicon: &Lexicon,
) -> MeaningClass {
    let original_words = original.words().map(|t| t.surface.as_str());
    let replacement = tokenize(replacement_text);
    let replacement_words = replacement
        .sentences
        .iter()
        .flat_map(|s| s.words())
        .map(|t| t.surface.as_str());
    classify_word_difference(original_words, replacement_words, lexicon)
}

pub fn classify_word_difference<'a>(
    original: impl IntoIterator<Item = &'a str>,
    replacement: impl IntoIterator<Item = &'a str>,
    lexicon: &Lexicon,
) -> MeaningClass {
    let mut balance: HashMap<String, i64> = HashMap::new();
    for word in original {
        *balance.entry(word.to_lowercase()).or_default() += 1;
    }
    for word in replacement {
        *balance.entry(word.to_lowercase()).or_default() -= 1;
    }

    let mut open = 0;
    let mut closed = 0;
    let mut relative = 0;
    for (word, count) in &balance {
        let n = count.abs();
        if n == 0 {
            continue;
        }
        match lexicon.classify(word) {
            WordClass::Open => open += n,
            WordClass::Closed => {
                closed += n;
                if RELATIVE_PRONOUNS.contains(&word.as_str()) {
                    relative += n;
                }
            }
        }
    }

    match open {
        0 if closed == relative => MeaningClass::None,
        0 => MeaningClass::ClosedOnly,
        1 => MeaningClass::SingleOpen,
        _ => MeaningClass::MultiOpen,
    }
}

/// Difference in the number of questions the original and rewritten
/// sentence can answer.
pub fn discourse_effect(questions_original: i64, questions_replacement: i64) -> Result<u32, CostError> {
    if questions_original < 0 || questions_replacement < 0 {
        return Err(CostError::NegativeQuestionCount {
            original: questions_original,
            replacement: questions_replacement,
        });
    }
    Ok(questions_original.abs_diff(questions_replacement) as u32)
}

pub fn compute_cost(
    meaning_class: MeaningClass,
    discourse_effect: u32,
    weights: &CostWeights,
) -> CostBreakdown {
    let meaning_component = weights.weight(meaning_class).clone();
    let discourse_component = &weights.discourse_lambda * rational::int(discourse_effect as i64);
    let sum = &meaning_component + &discourse_component;
    let floor_applied = !sum.is_positive();
    let total = if floor_applied { weights.epsilon() } else { sum };
    CostBreakdown {
        meaning_component,
        discourse_component,
        total,
        floor_applied,
    }
}
