//! Flexibility (how far each metric can be pushed, ignoring cost), bound
//! sweeps, and applying a selection to produce the rewritten text.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::CandidateSet;
use crate::ilp_model::{variables_of, Assignment, ConstraintKind, IlpModel, ModelError, Variable};
use crate::rational::{self, Rational};
use crate::solver::{self, Solution, SolveError, SolverOptions, DEFAULT_ORACLE_LIMIT};
use crate::text_metrics::{compute_metrics, normalize_whitespace, Document, MetricsSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Metric {
    TotalWords,
    AvgSentenceLength,
    LexicalDensity,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::TotalWords, Metric::AvgSentenceLength, Metric::LexicalDensity];

    /// `(numerator, denominator)` of the metric, or `None` if the
    /// denominator is not positive.
    fn fraction(self, m: &MetricsSummary) -> Option<(i64, i64)> {
        let (num, den) = match self {
            Metric::TotalWords => (m.words, 1),
            Metric::AvgSentenceLength => (m.words, m.sentences),
            Metric::LexicalDensity => (m.function_words, m.words),
        };
        (den > 0).then_some((num, den))
    }

    pub fn value(self, m: &MetricsSummary) -> Option<Rational> {
        self.fraction(m).map(|(n, d)| rational::ratio(n, d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexibilityReport {
    pub metric: Metric,
    pub direction: Direction,
    pub extreme_value: Rational,
    /// Positions into the candidate list.
    pub achieving_assignment: Assignment,
    pub original_value: Rational,
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("document is empty")]
    EmptyDocument,
    #[error("selection contains unknown candidate position {0}")]
    UnknownCandidate(usize),
    #[error("selection applies more than one candidate to sentence {0}")]
    Conflict(usize),
    #[error("rewritten text counts {actual:?}, but the selected deltas predict {expected:?}")]
    DeltaMismatch {
        expected: MetricsSummary,
        actual: MetricsSummary,
    },
}

/// Extreme of `metric` over every selection with at most one candidate per
/// sentence; costs and the other constraints are ignored.
pub fn analyze_flexibility(
    cs: &CandidateSet,
    metric: Metric,
    direction: Direction,
) -> Result<FlexibilityReport, AnalysisError> {
    flexibility_of(&cs.base_metrics(), &variables_of(cs), true, metric, direction)
}

/// Same as [`analyze_flexibility`] over raw variables. Up to
/// `DEFAULT_ORACLE_LIMIT` variables every selection is scanned; beyond that
/// totals are optimized per sentence and ratios by iterated parametric
/// minimization.
pub fn flexibility_of(
    base: &MetricsSummary,
    variables: &[Variable],
    exclusive: bool,
    metric: Metric,
    direction: Direction,
) -> Result<FlexibilityReport, AnalysisError> {
    if variables.len() <= DEFAULT_ORACLE_LIMIT {
        extreme_exhaustive(base, variables, exclusive, metric, direction)
    } else {
        extreme_fractional(base, variables, exclusive, metric, direction)
    }
}

fn groups_of(variables: &[Variable], exclusive: bool) -> Vec<Vec<usize>> {
    if !exclusive {
        return (0..variables.len()).map(|v| vec![v]).collect();
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, v) in variables.iter().enumerate() {
        groups.entry(v.sentence).or_default().push(pos);
    }
    groups.into_values().collect()
}

fn metrics_of(base: &MetricsSummary, variables: &[Variable], selected: impl IntoIterator<Item = usize>) -> MetricsSummary {
    selected.into_iter().fold(*base, |m, v| {
        let c = variables[v].coefficients;
        m.shifted(c.function_words, c.words, c.sentences)
    })
}

fn original_value(base: &MetricsSummary, metric: Metric) -> Result<Rational, AnalysisError> {
    metric.value(base).ok_or(AnalysisError::EmptyDocument)
}

/// Scans every exclusivity-respecting selection. Ties go to the smallest
/// sorted position list.
pub fn extreme_exhaustive(
    base: &MetricsSummary,
    variables: &[Variable],
    exclusive: bool,
    metric: Metric,
    direction: Direction,
) -> Result<FlexibilityReport, AnalysisError> {
    let original = original_value(base, metric)?;
    let groups = groups_of(variables, exclusive);
    let mut choice = vec![0usize; groups.len()];
    let mut best: Option<((i64, i64), Vec<usize>)> = None;

    loop {
        let mut selected: Vec<usize> = choice
            .iter()
            .zip(&groups)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, g)| g[c - 1])
            .collect();
        selected.sort_unstable();
        if let Some(frac) = metric.fraction(&metrics_of(base, variables, selected.iter().copied())) {
            let better = match &best {
                None => true,
                Some((current, set)) => match (compare(frac, *current), direction) {
                    (Ordering::Less, Direction::Min) | (Ordering::Greater, Direction::Max) => true,
                    (Ordering::Equal, _) => selected < *set,
                    _ => false,
                },
            };
            if better {
                best = Some((frac, selected));
            }
        }

        // odometer step
        let mut k = 0;
        loop {
            if k == groups.len() {
                let ((n, d), set) = best.expect("the empty selection is always defined");
                return Ok(FlexibilityReport {
                    metric,
                    direction,
                    extreme_value: rational::ratio(n, d),
                    achieving_assignment: Assignment::from_positions(set),
                    original_value: original,
                });
            }
            choice[k] += 1;
            if choice[k] <= groups[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn compare(a: (i64, i64), b: (i64, i64)) -> Ordering {
    (a.0 as i128 * b.1 as i128).cmp(&(b.0 as i128 * a.1 as i128))
}

/// Exact optimization without enumeration. For `N/D` with `D > 0` (total
/// words is `W/1`), repeatedly solve the separable problem
/// `min Σ (n − t·d)` at the current value `t`; while it goes negative the
/// new selection strictly improves `t`.
pub fn extreme_fractional(
    base: &MetricsSummary,
    variables: &[Variable],
    exclusive: bool,
    metric: Metric,
    direction: Direction,
) -> Result<FlexibilityReport, AnalysisError> {
    let original = original_value(base, metric)?;
    let groups = groups_of(variables, exclusive);
    let sign = match direction {
        Direction::Min => 1,
        Direction::Max => -1,
    };
    let parts = |m: &MetricsSummary| metric.fraction(m).ok_or(AnalysisError::EmptyDocument);
    let delta = |v: &Variable| -> (i64, i64) {
        let c = v.coefficients;
        match metric {
            Metric::TotalWords => (c.words, 0),
            Metric::AvgSentenceLength => (c.words, c.sentences),
            Metric::LexicalDensity => (c.function_words, c.words),
        }
    };

    let (base_num, base_den) = parts(base)?;
    let mut selected: Vec<usize> = Vec::new();
    // current best value, negated for maximization
    let mut t = rational::ratio(sign * base_num, base_den);
    loop {
        let mut next = Vec::new();
        let mut total = rational::int(sign * base_num) - &t * rational::int(base_den);
        for group in &groups {
            let mut pick: Option<(Rational, usize)> = None;
            for &v in group {
                let (n, d) = delta(&variables[v]);
                let score = rational::int(sign * n) - &t * rational::int(d);
                let incumbent = pick.as_ref().map_or_else(Rational::zero, |(s, _)| s.clone());
                if score < incumbent {
                    pick = Some((score, v));
                }
            }
            if let Some((score, v)) = pick {
                total += score;
                next.push(v);
            }
        }
        if !total.is_negative() {
            break;
        }
        next.sort_unstable();
        let (n, d) = parts(&metrics_of(base, variables, next.iter().copied()))?;
        t = rational::ratio(sign * n, d);
        selected = next;
    }

    Ok(FlexibilityReport {
        metric,
        direction,
        extreme_value: t * rational::int(sign),
        achieving_assignment: Assignment::from_positions(selected),
        original_value: original,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPoint {
    pub value: Rational,
    pub solution: Solution,
}

/// Re-solve `model` with one bound set to each of `values`. Points are
/// solved in parallel when `options.threads > 1`; output follows input order.
pub fn sweep_constraint(
    model: &IlpModel,
    which: ConstraintKind,
    values: &[Rational],
    options: &SolverOptions,
) -> Result<Vec<SweepPoint>, AnalysisError> {
    let models = values
        .iter()
        .map(|v| model.with_bound(which, v))
        .collect::<Result<Vec<_>, _>>()?;
    let single = SolverOptions {
        threads: 1,
        ..*options
    };
    let solve_one = |(m, v): (&IlpModel, &Rational)| -> Result<SweepPoint, AnalysisError> {
        Ok(SweepPoint {
            value: v.clone(),
            solution: solver::solve_with(m, &single)?,
        })
    };
    if options.threads <= 1 || values.len() < 2 {
        return models.iter().zip(values).map(solve_one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
    pool.install(|| models.par_iter().zip(values.par_iter()).map(solve_one).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedText {
    pub text: String,
    pub metrics: MetricsSummary,
}

/// Substitute each selected candidate's replacement for its sentence. The
/// rest of the source, including inter-sentence whitespace, is copied as is.
/// Fails if the recount disagrees with the selected deltas.
pub fn apply_solution(cs: &CandidateSet, assignment: &Assignment) -> Result<AppliedText, AnalysisError> {
    let mut replacement: BTreeMap<usize, &str> = BTreeMap::new();
    let mut expected = cs.base_metrics();
    for &pos in &assignment.selected {
        let c = cs.candidates.get(pos).ok_or(AnalysisError::UnknownCandidate(pos))?;
        if replacement.insert(c.sentence, c.replacement.as_str()).is_some() {
            return Err(AnalysisError::Conflict(c.sentence));
        }
        let d = c.coefficients;
        expected = expected.shifted(d.function_words, d.words, d.sentences);
    }

    let text = rewrite(&cs.document, &replacement);
    let metrics = compute_metrics(&Document::parse(&text, &cs.lexicon));
    if metrics != expected {
        return Err(AnalysisError::DeltaMismatch {
            expected,
            actual: metrics,
        });
    }
    Ok(AppliedText { text, metrics })
}

fn rewrite(doc: &Document, replacement: &BTreeMap<usize, &str>) -> String {
    let src = doc.source_text.as_str();
    let (Some(first), Some(last)) = (doc.sentences.first(), doc.sentences.last()) else {
        return src.to_string();
    };
    let gap_after = |k: usize| &src[doc.sentences[k].span.end..doc.sentences[k + 1].span.start];

    let mut out = String::with_capacity(src.len());
    out.push_str(&src[..first.span.start]);
    let mut previous: Option<usize> = None;
    for (k, sentence) in doc.sentences.iter().enumerate() {
        let piece = replacement.get(&(k + 1)).copied().unwrap_or(&src[sentence.span.clone()]);
        if normalize_whitespace(piece).is_empty() {
            continue;
        }
        if let Some(p) = previous {
            out.push_str(gap_after(p));
        }
        out.push_str(piece);
        previous = Some(k);
    }
    out.push_str(&src[last.span.end..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::Coefficients;
    use crate::text_metrics::Lexicon;

    const SAMPLE: &str = "The cat sat on the mat which was by the door. \
        It ate the cream ladled out by its owner. \
        The owner, an eminent engineer, had a convertible used in a bank robbery.";

    fn golden_set() -> CandidateSet {
        let mut cs = CandidateSet::new(SAMPLE, Lexicon::default());
        cs.add(1, "The cat sat on the mat by the door.").unwrap();
        cs.add(2, "It ate the cream. It had been ladled out by its owner.").unwrap();
        cs.add(3, "The owner, an eminent engineer, had a convertible. It had been used in a bank robbery.")
            .unwrap();
        cs.add(3, "The owner had a convertible used in a bank robbery.").unwrap();
        cs
    }

    fn a(positions: &[usize]) -> Assignment {
        Assignment::from_positions(positions.iter().copied())
    }

    #[test]
    fn golden_flexibility() {
        let cs = golden_set();
        let words = analyze_flexibility(&cs, Metric::TotalWords, Direction::Min).unwrap();
        assert_eq!(words.extreme_value, rational::int(28));
        assert_eq!(words.achieving_assignment, a(&[0, 3]));
        assert_eq!(words.original_value, rational::int(33));

        let avg = analyze_flexibility(&cs, Metric::AvgSentenceLength, Direction::Min).unwrap();
        assert_eq!(avg.extreme_value, rational::ratio(37, 5));
        assert_eq!(avg.achieving_assignment, a(&[0, 1, 2]));
    }

    #[test]
    fn empty_candidates_keep_the_original() {
        let cs = CandidateSet::new(SAMPLE, Lexicon::default());
        for metric in Metric::ALL {
            for direction in [Direction::Min, Direction::Max] {
                let r = analyze_flexibility(&cs, metric, direction).unwrap();
                assert_eq!(r.extreme_value, r.original_value);
                assert!(r.achieving_assignment.is_empty());
            }
        }
    }

    #[test]
    fn fractional_matches_exhaustive_on_golden() {
        let cs = golden_set();
        let vars = variables_of(&cs);
        let base = cs.base_metrics();
        for metric in Metric::ALL {
            for direction in [Direction::Min, Direction::Max] {
                let e = extreme_exhaustive(&base, &vars, true, metric, direction).unwrap();
                let f = extreme_fractional(&base, &vars, true, metric, direction).unwrap();
                assert_eq!(e.extreme_value, f.extreme_value, "{metric:?} {direction:?}");
            }
        }
    }

    #[test]
    fn apply_parenthetical_deletion() {
        let cs = golden_set();
        let out = apply_solution(&cs, &a(&[3])).unwrap();
        assert!(out
            .text
            .ends_with("its owner. The owner had a convertible used in a bank robbery."));
        assert_eq!(out.metrics, MetricsSummary::new(30, 3, 16));
    }

    #[test]
    fn apply_three_rewrites() {
        let cs = golden_set();
        let out = apply_solution(&cs, &a(&[0, 1, 3])).unwrap();
        assert_eq!(out.metrics, MetricsSummary::new(31, 4, 17));
    }

    #[test]
    fn apply_nothing_is_identity() {
        let cs = golden_set();
        assert_eq!(apply_solution(&cs, &Assignment::empty()).unwrap().text, SAMPLE);
    }

    #[test]
    fn apply_rejects_conflicts_and_unknowns() {
        let cs = golden_set();
        assert!(matches!(apply_solution(&cs, &a(&[2, 3])), Err(AnalysisError::Conflict(3))));
        assert!(matches!(apply_solution(&cs, &a(&[9])), Err(AnalysisError::UnknownCandidate(9))));
    }

    #[test]
    fn apply_with_wrong_stored_deltas_fails() {
        let mut cs = golden_set();
        cs.candidates[3].coefficients = Coefficients::new(-1, -2, 0);
        assert!(matches!(
            apply_solution(&cs, &a(&[3])),
            Err(AnalysisError::DeltaMismatch { .. })
        ));
    }

    #[test]
    fn deletion_keeps_spacing() {
        let mut cs = CandidateSet::new("One two.  Three four.\nFive six.", Lexicon::default());
        cs.add(2, "").unwrap();
        cs.add(3, "").unwrap();
        assert_eq!(apply_solution(&cs, &a(&[0])).unwrap().text, "One two.  Five six.");
        assert_eq!(apply_solution(&cs, &a(&[1])).unwrap().text, "One two.  Three four.");
    }
}
