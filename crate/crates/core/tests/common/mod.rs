#![allow(dead_code)]

use std::path::PathBuf;

use parasel::candidates::{CandidateFile, CandidateRecord, Coefficients};
use parasel::ilp_model::{build_model_from_parts, IlpModel, ModelConfig, Variable};
use parasel::prelude::*;
use parasel::rational::{int, ratio};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden").join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn golden_set() -> CandidateSet {
    let path = fixture("candidates.json");
    load_candidates(path, &Lexicon::default(), LoadOptions::default()).unwrap()
}

pub fn golden_config() -> ModelConfig {
    ModelConfig::new(0, int(10), rational::parse("0.525").unwrap())
}

pub fn golden_model(weights: &CostWeights) -> IlpModel {
    build_model(&golden_set(), &golden_config(), weights).unwrap()
}

/// A model with no text behind it.
pub struct RawInstance {
    pub base: MetricsSummary,
    pub variables: Vec<Variable>,
    pub costs: Vec<Rational>,
    pub config: ModelConfig,
}

impl RawInstance {
    pub fn model(&self) -> IlpModel {
        build_model_from_parts(self.base, self.variables.clone(), self.costs.clone(), &self.config).unwrap()
    }
}

/// `n` variables over a random number of sentences, coefficients in
/// `[-5, 5]`, bounds drawn near the base ratios. Base counts are large
/// enough that no selection empties the text.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> RawInstance {
    let groups = rng.gen_range(1..=n.max(1));
    let mut next_index = vec![0usize; groups + 1];
    let mut variables = Vec::with_capacity(n);
    for _ in 0..n {
        let sentence = rng.gen_range(1..=groups);
        next_index[sentence] += 1;
        let c = Coefficients::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        variables.push(Variable::new(sentence, next_index[sentence], c));
    }
    let sentences = 5 * n as i64 + rng.gen_range(1..=10);
    let words = 5 * n as i64 + rng.gen_range(sentences..=sentences * 12);
    let function_words = rng.gen_range(words / 4..=words * 3 / 4);
    let base = MetricsSummary::new(words, sentences, function_words);

    // a few small integer costs make ties common
    let costs = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                int(rng.gen_range(1..=3))
            } else {
                ratio(rng.gen_range(1..=40), rng.gen_range(1..=8))
            }
        })
        .collect();

    let k1 = rng.gen_range(-6..=0);
    let k2 = ratio(words * rng.gen_range(80..=110), sentences * 100);
    let k3_pct = rng.gen_range(90..=105);
    let k3 = ratio(function_words * k3_pct, words * 100).min(int(1));
    let mut config = ModelConfig::new(k1, k2, k3);
    config.per_sentence_exclusivity = rng.gen_bool(0.8);
    RawInstance {
        base,
        variables,
        costs,
        config,
    }
}

const CLOSED: &[&str] = &["the", "a", "of", "in", "on", "by", "was", "it", "and", "to", "with", "that", "had"];
const OPEN: &[&str] = &[
    "cat", "door", "owner", "ate", "cream", "sat", "red", "quickly", "house", "engineer", "bank", "robbery", "old",
    "green", "river", "walked", "bright",
];

fn render(words: &[&str]) -> String {
    let mut text = words.join(" ");
    if let Some(first) = text.get(0..1) {
        let upper = first.to_uppercase();
        text.replace_range(0..1, &upper);
    }
    text.push('.');
    text
}

fn random_words(rng: &mut ChaCha8Rng, len: usize) -> Vec<&'static str> {
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.45) {
                *CLOSED.choose(rng).unwrap()
            } else {
                *OPEN.choose(rng).unwrap()
            }
        })
        .collect()
}

/// A random rewrite of `words` by deletion, insertion or splitting.
fn rewrite(rng: &mut ChaCha8Rng, words: &[&'static str]) -> String {
    let mut w = words.to_vec();
    match rng.gen_range(0..4) {
        0 if w.len() > 3 => {
            let at = rng.gen_range(1..w.len());
            w.remove(at);
            render(&w)
        }
        1 if w.len() > 4 => {
            let at = rng.gen_range(1..w.len() - 1);
            w.drain(at..=at + 1);
            render(&w)
        }
        2 if w.len() > 5 => {
            let at = rng.gen_range(2..w.len() - 2);
            let (head, tail) = w.split_at(at);
            let mut second = vec!["it", "was"];
            second.extend_from_slice(tail);
            format!("{} {}", render(head), render(&second))
        }
        _ => {
            let at = rng.gen_range(1..=w.len());
            w.insert(at, CLOSED.choose(rng).unwrap());
            render(&w)
        }
    }
}

/// A document with generated rewrites, plus a TOML config with bounds
/// near the base values.
pub struct TextInstance {
    pub file: CandidateFile,
    pub config_toml: String,
}

pub fn random_text_instance(rng: &mut ChaCha8Rng) -> TextInstance {
    let sentences: Vec<Vec<&'static str>> = (0..rng.gen_range(2..=6))
        .map(|_| {
            let len = rng.gen_range(4..=14);
            random_words(rng, len)
        })
        .collect();
    let document = sentences.iter().map(|s| render(s)).collect::<Vec<_>>().join(" ");
    let mut candidates = Vec::new();
    for (i, words) in sentences.iter().enumerate() {
        for _ in 0..rng.gen_range(0..=3) {
            candidates.push(CandidateRecord {
                sentence: i + 1,
                replacement: rewrite(rng, words),
                f: None,
                w: None,
                s: None,
                meaning_class: None,
                discourse_effect: Some(rng.gen_range(0..=1)),
            });
        }
    }
    let base = parasel::text_metrics::metrics_of(&document, &Lexicon::default());
    let k1 = rng.gen_range(-3..=0);
    let k2_pct = rng.gen_range(85..=115);
    let k3_pct = rng.gen_range(85..=101);
    let k2 = ratio(base.words * k2_pct, base.sentences * 100);
    let k3 = ratio(base.function_words * k3_pct, base.words * 100).min(int(1));
    let config_toml = format!(
        "[constraints]\nk1 = {k1}\nk2 = \"{}\"\nk3 = \"{}\"\n",
        rational::exact(&k2),
        rational::exact(&k3)
    );
    TextInstance {
        file: CandidateFile { document, candidates },
        config_toml,
    }
}
