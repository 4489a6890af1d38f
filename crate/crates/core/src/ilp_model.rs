//! The 0/1 integer program: one binary variable per candidate, a cost
//! objective, and linear constraints for length, average sentence length,
//! function-word proportion and per-sentence exclusivity.
//!
//! The two ratio constraints are linearized by multiplying through by their
//! (positive) denominators:
//!
//! ```text
//! (W + Σw·p) / (S + Σs·p) ≤ k2   ⇔   Σ(w − k2·s)·p ≤ k2·S − W
//! (F + Σf·p) / (W + Σw·p) ≥ k3   ⇔   Σ(f − k3·w)·p ≥ k3·W − F
//! ```
//!
//! which is only valid while every permitted selection keeps at least one
//! sentence and one word. `build_model` rejects inputs where that fails.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use crate::candidates::{worst_case_counts, CandidateSet, Coefficients};
use crate::cost_model::{CostError, CostWeights};
use crate::rational::{self, Rational};
use crate::text_metrics::MetricsSummary;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelConfig {
    /// Largest allowed change in total words; never positive.
    pub k1: i64,
    /// Largest allowed average sentence length.
    pub k2: Rational,
    /// Smallest allowed proportion of function words.
    pub k3: Rational,
    pub per_sentence_exclusivity: bool,
}

impl ModelConfig {
    pub fn new(k1: i64, k2: Rational, k3: Rational) -> Self {
        ModelConfig {
            k1,
            k2,
            k3,
            per_sentence_exclusivity: true,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.k1 > 0 {
            return Err(ModelError::InvalidConfig(format!("k1 must be <= 0, got {}", self.k1)));
        }
        if self.k2.is_negative() {
            return Err(ModelError::InvalidConfig(format!(
                "k2 must be >= 0, got {}",
                rational::exact(&self.k2)
            )));
        }
        if self.k3.is_negative() || self.k3 > rational::int(1) {
            return Err(ModelError::InvalidConfig(format!(
                "k3 must lie in [0, 1], got {}",
                rational::exact(&self.k3)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid constraint configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Weights(#[from] CostError),
    #[error("candidate set has validation errors: {0}")]
    Validation(String),
    #[error("a permitted selection leaves {0} sentences; the readability constraint needs at least 1")]
    SentenceUnderflow(i64),
    #[error("a permitted selection leaves {0} words; the density constraint needs at least 1")]
    WordUnderflow(i64),
    #[error("variable ({0}, {1}) has non-positive cost {2}")]
    NonPositiveCost(usize, usize, String),
    #[error("variable ({0}, {1}) appears more than once")]
    DuplicateVariable(usize, usize),
    #[error("{variables} variables but {costs} costs")]
    CostCountMismatch { variables: usize, costs: usize },
    #[error("length bound must be an integer, got {0}")]
    NonIntegerLengthBound(String),
}

/// A decision variable: apply candidate `index` to sentence `sentence`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub sentence: usize,
    pub index: usize,
    pub coefficients: Coefficients,
}

impl Variable {
    pub fn new(sentence: usize, index: usize, coefficients: Coefficients) -> Self {
        Variable {
            sentence,
            index,
            coefficients,
        }
    }

    pub fn id(&self) -> (usize, usize) {
        (self.sentence, self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Length,
    Readability,
    LexicalDensity,
    /// At most one candidate for this 1-based sentence.
    Exclusivity(usize),
}

impl ConstraintKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "k1" | "length" => Some(ConstraintKind::Length),
            "k2" | "readability" => Some(ConstraintKind::Readability),
            "k3" | "density" | "lexical_density" => Some(ConstraintKind::LexicalDensity),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    /// Variable position → coefficient; zero coefficients are omitted.
    pub coefficients: BTreeMap<usize, Rational>,
    pub sense: Sense,
    pub rhs: Rational,
    pub label: String,
    pub kind: ConstraintKind,
}

impl LinearConstraint {
    fn new(kind: ConstraintKind, label: String, sense: Sense, rhs: Rational, dense: Vec<Rational>) -> Self {
        let coefficients = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LinearConstraint {
            coefficients,
            sense,
            rhs,
            label,
            kind,
        }
    }

    pub fn coefficient(&self, var: usize) -> Rational {
        self.coefficients.get(&var).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn lhs(&self, assignment: &Assignment) -> Rational {
        assignment
            .selected
            .iter()
            .filter_map(|v| self.coefficients.get(v))
            .fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn holds(&self, assignment: &Assignment) -> bool {
        let lhs = self.lhs(assignment);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
        }
    }

    /// Renders e.g. `-2·p11 + 3·p21 ≤ 0` using the model's variable names.
    pub fn render(&self, variables: &[Variable]) -> String {
        let mut out = String::new();
        for (k, (var, coef)) in self.coefficients.iter().enumerate() {
            let v = &variables[*var];
            let name = format!("p{}_{}", v.sentence, v.index);
            let magnitude = coef.abs();
            let sign = if coef.is_negative() { "-" } else { "+" };
            if k == 0 {
                if coef.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if magnitude != rational::int(1) {
                out.push_str(&format!("{}·", rational::exact(&magnitude)));
            }
            out.push_str(&name);
        }
        if out.is_empty() {
            out.push('0');
        }
        let op = match self.sense {
            Sense::Le => "≤",
            Sense::Ge => "≥",
        };
        format!("{out} {op} {}", rational::exact(&self.rhs))
    }
}

/// A selection of variables (positions into `IlpModel::variables`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub selected: std::collections::BTreeSet<usize>,
}

impl Assignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        Assignment {
            selected: positions.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.selected.contains(&var)
    }

    /// Ordering used for tie-breaks: sorted positions compared as sequences.
    pub fn lex_key(&self) -> Vec<usize> {
        self.selected.iter().copied().collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.selected.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel {
    /// Sorted by `(sentence, index)`.
    pub variables: Vec<Variable>,
    /// Strictly positive cost per variable.
    pub objective: Vec<Rational>,
    pub constraints: Vec<LinearConstraint>,
    pub base_metrics: MetricsSummary,
    pub config: ModelConfig,
}

impl IlpModel {
    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn position(&self, sentence: usize, index: usize) -> Option<usize> {
        self.variables.iter().position(|v| v.id() == (sentence, index))
    }

    pub fn assignment_of(&self, ids: &[(usize, usize)]) -> Option<Assignment> {
        ids.iter()
            .map(|&(i, j)| self.position(i, j))
            .collect::<Option<Vec<_>>>()
            .map(Assignment::from_positions)
    }

    pub fn ids(&self, assignment: &Assignment) -> Vec<(usize, usize)> {
        assignment.selected.iter().map(|&v| self.variables[v].id()).collect()
    }

    pub fn objective_value(&self, assignment: &Assignment) -> Rational {
        assignment
            .selected
            .iter()
            .fold(Rational::zero(), |acc, &v| acc + &self.objective[v])
    }

    /// Counts after applying the selection's deltas.
    pub fn metrics_after(&self, assignment: &Assignment) -> MetricsSummary {
        assignment.selected.iter().fold(self.base_metrics, |m, &v| {
            let c = self.variables[v].coefficients;
            m.shifted(c.function_words, c.words, c.sentences)
        })
    }

    pub fn constraint(&self, kind: ConstraintKind) -> Option<&LinearConstraint> {
        self.constraints.iter().find(|c| c.kind == kind)
    }

    /// Variable positions grouped by sentence, in order.
    pub fn sentence_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, v) in self.variables.iter().enumerate() {
            groups.entry(v.sentence).or_default().push(pos);
        }
        groups.into_values().collect()
    }

    /// Same variables and costs with one bound replaced.
    pub fn with_bound(&self, kind: ConstraintKind, value: &Rational) -> Result<IlpModel, ModelError> {
        let mut config = self.config.clone();
        match kind {
            ConstraintKind::Length => {
                if !value.is_integer() {
                    return Err(ModelError::NonIntegerLengthBound(rational::exact(value)));
                }
                config.k1 = i64::try_from(value.to_integer())
                    .map_err(|_| ModelError::NonIntegerLengthBound(rational::exact(value)))?;
            }
            ConstraintKind::Readability => config.k2 = value.clone(),
            ConstraintKind::LexicalDensity => config.k3 = value.clone(),
            ConstraintKind::Exclusivity(_) => {
                return Err(ModelError::InvalidConfig("exclusivity has no bound to sweep".into()))
            }
        }
        build_model_from_parts(self.base_metrics, self.variables.clone(), self.objective.clone(), &config)
    }
}

pub fn build_length_constraint(variables: &[Variable], k1: i64) -> LinearConstraint {
    let dense = variables.iter().map(|v| rational::int(v.coefficients.words)).collect();
    LinearConstraint::new(
        ConstraintKind::Length,
        "length".into(),
        Sense::Le,
        rational::int(k1),
        dense,
    )
}

pub fn build_readability_constraint(variables: &[Variable], base: &MetricsSummary, k2: &Rational) -> LinearConstraint {
    let dense = variables
        .iter()
        .map(|v| rational::int(v.coefficients.words) - k2 * rational::int(v.coefficients.sentences))
        .collect();
    let rhs = k2 * rational::int(base.sentences) - rational::int(base.words);
    LinearConstraint::new(ConstraintKind::Readability, "readability".into(), Sense::Le, rhs, dense)
}

pub fn build_lexical_density_constraint(
    variables: &[Variable],
    base: &MetricsSummary,
    k3: &Rational,
) -> LinearConstraint {
    let dense = variables
        .iter()
        .map(|v| rational::int(v.coefficients.function_words) - k3 * rational::int(v.coefficients.words))
        .collect();
    let rhs = k3 * rational::int(base.words) - rational::int(base.function_words);
    LinearConstraint::new(
        ConstraintKind::LexicalDensity,
        "lexical density".into(),
        Sense::Ge,
        rhs,
        dense,
    )
}

/// One `Σ_j p_ij ≤ 1` per sentence with two or more candidates.
pub fn build_exclusivity_constraints(variables: &[Variable]) -> Vec<LinearConstraint> {
    let mut by_sentence: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, v) in variables.iter().enumerate() {
        by_sentence.entry(v.sentence).or_default().push(pos);
    }
    by_sentence
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(sentence, members)| LinearConstraint {
            coefficients: members.into_iter().map(|p| (p, rational::int(1))).collect(),
            sense: Sense::Le,
            rhs: rational::int(1),
            label: format!("exclusivity s{sentence}"),
            kind: ConstraintKind::Exclusivity(sentence),
        })
        .collect()
}

/// Per-candidate cost under `weights`, in candidate order.
pub fn build_objective(cs: &CandidateSet, weights: &CostWeights) -> Result<Vec<Rational>, ModelError> {
    weights.validate()?;
    Ok(cs.candidates.iter().map(|c| c.cost(weights).total).collect())
}

pub fn variables_of(cs: &CandidateSet) -> Vec<Variable> {
    cs.candidates
        .iter()
        .map(|c| Variable::new(c.sentence, c.index, c.coefficients))
        .collect()
}

pub fn build_model(cs: &CandidateSet, config: &ModelConfig, weights: &CostWeights) -> Result<IlpModel, ModelError> {
    let report = crate::candidates::validate_with(
        cs,
        crate::candidates::ValidateOptions {
            per_sentence_exclusivity: config.per_sentence_exclusivity,
            allow_sentence_deletion: true,
        },
    );
    if report.has_errors() {
        let messages: Vec<_> = report.errors().map(|i| i.to_string()).collect();
        return Err(ModelError::Validation(messages.join("; ")));
    }
    let objective = build_objective(cs, weights)?;
    build_model_from_parts(cs.base_metrics(), variables_of(cs), objective, config)
}

/// Assembles a model from raw coefficients and costs, e.g. for instances
/// that have no underlying text.
pub fn build_model_from_parts(
    base: MetricsSummary,
    variables: Vec<Variable>,
    costs: Vec<Rational>,
    config: &ModelConfig,
) -> Result<IlpModel, ModelError> {
    config.validate()?;
    if variables.len() != costs.len() {
        return Err(ModelError::CostCountMismatch {
            variables: variables.len(),
            costs: costs.len(),
        });
    }
    let mut paired: Vec<(Variable, Rational)> = variables.into_iter().zip(costs).collect();
    paired.sort_by_key(|(v, _)| v.id());
    for pair in paired.windows(2) {
        if pair[0].0.id() == pair[1].0.id() {
            let (i, j) = pair[0].0.id();
            return Err(ModelError::DuplicateVariable(i, j));
        }
    }
    for (v, c) in &paired {
        if !c.is_positive() {
            return Err(ModelError::NonPositiveCost(v.sentence, v.index, rational::exact(c)));
        }
    }
    let (variables, objective): (Vec<_>, Vec<_>) = paired.into_iter().unzip();

    let (min_sentences, min_words) = worst_case_counts(
        &base,
        variables.iter().map(|v| (v.sentence, v.coefficients)),
        config.per_sentence_exclusivity,
    );
    if min_sentences < 1 {
        return Err(ModelError::SentenceUnderflow(min_sentences));
    }
    if min_words < 1 {
        return Err(ModelError::WordUnderflow(min_words));
    }

    let mut constraints = vec![
        build_length_constraint(&variables, config.k1),
        build_readability_constraint(&variables, &base, &config.k2),
        build_lexical_density_constraint(&variables, &base, &config.k3),
    ];
    if config.per_sentence_exclusivity {
        constraints.extend(build_exclusivity_constraints(&variables));
    }
    Ok(IlpModel {
        variables,
        objective,
        constraints,
        base_metrics: base,
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn golden_vars() -> Vec<Variable> {
        vec![
            Variable::new(1, 1, Coefficients::new(-2, -2, 0)),
            Variable::new(2, 1, Coefficients::new(3, 3, 1)),
            Variable::new(3, 1, Coefficients::new(3, 3, 1)),
            Variable::new(3, 2, Coefficients::new(-1, -3, 0)),
        ]
    }

    fn base() -> MetricsSummary {
        MetricsSummary::new(33, 3, 17)
    }

    fn dense(c: &LinearConstraint, n: usize) -> Vec<Rational> {
        (0..n).map(|v| c.coefficient(v)).collect()
    }

    fn a(positions: &[usize]) -> Assignment {
        Assignment::from_positions(positions.iter().copied())
    }

    #[test]
    fn length_constraint() {
        let c = build_length_constraint(&golden_vars(), 0);
        assert_eq!(dense(&c, 4), vec![int(-2), int(3), int(3), int(-3)]);
        assert_eq!((c.sense, c.rhs.clone()), (Sense::Le, int(0)));
        assert_eq!(c.render(&golden_vars()), "-2·p1_1 + 3·p2_1 + 3·p3_1 - 3·p3_2 ≤ 0");
    }

    #[test]
    fn length_constraint_edge_cases() {
        let empty = build_length_constraint(&[], 0);
        assert!(empty.coefficients.is_empty());
        assert!(empty.holds(&Assignment::empty()));

        let single = [Variable::new(1, 1, Coefficients::new(0, -5, 0))];
        let c = build_length_constraint(&single, -4);
        assert!(!c.holds(&Assignment::empty()));
        assert!(c.holds(&a(&[0])));
    }

    #[test]
    fn readability_constraint() {
        let c = build_readability_constraint(&golden_vars(), &base(), &int(10));
        assert_eq!(dense(&c, 4), vec![int(-2), int(-7), int(-7), int(-3)]);
        assert_eq!(c.rhs, int(-3));
        assert_eq!(c.lhs(&a(&[3])), int(-3));
        assert!(c.holds(&a(&[3])));
        assert!(!c.holds(&Assignment::empty()));
    }

    #[test]
    fn density_constraint() {
        let k3 = ratio(21, 40);
        let c = build_lexical_density_constraint(&golden_vars(), &base(), &k3);
        assert_eq!(c.sense, Sense::Ge);
        assert_eq!(c.rhs, ratio(13, 40));
        assert_eq!(c.lhs(&a(&[3])), ratio(23, 40));
        assert!(c.holds(&a(&[3])));
        assert!(!c.holds(&a(&[0, 3])));
        // ratio form of the same two checks
        assert!(ratio(16, 30) >= k3);
        assert!(ratio(14, 28) < k3);
    }

    #[test]
    fn exclusivity_constraints() {
        let cs = build_exclusivity_constraints(&golden_vars());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].kind, ConstraintKind::Exclusivity(3));
        assert_eq!(dense(&cs[0], 4), vec![int(0), int(0), int(1), int(1)]);

        let singles: Vec<_> = (1..=3).map(|i| Variable::new(i, 1, Coefficients::default())).collect();
        assert!(build_exclusivity_constraints(&singles).is_empty());

        let triple: Vec<_> = (1..=3).map(|j| Variable::new(1, j, Coefficients::default())).collect();
        let c = build_exclusivity_constraints(&triple);
        assert_eq!(c[0].coefficients.len(), 3);
        assert!(!c[0].holds(&a(&[0, 2])));
    }

    #[test]
    fn full_model_shape() {
        let cfg = ModelConfig::new(0, int(10), ratio(21, 40));
        let m = build_model_from_parts(base(), golden_vars(), vec![int(1); 4], &cfg).unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m.constraints.len(), 4);
        assert_eq!(m.objective_value(&a(&[0, 1, 3])), int(3));
        assert_eq!(m.objective_value(&Assignment::empty()), int(0));
        assert_eq!(m.metrics_after(&a(&[0, 1, 3])), MetricsSummary::new(31, 4, 17));
        assert_eq!(m.ids(&a(&[3])), vec![(3, 2)]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = ModelConfig::new(0, int(10), ratio(21, 40));
        let err = build_model_from_parts(base(), golden_vars(), vec![int(1), int(0), int(1), int(1)], &cfg);
        assert!(matches!(err, Err(ModelError::NonPositiveCost(2, 1, _))));

        let mut dup = golden_vars();
        dup[1] = dup[0];
        assert_eq!(
            build_model_from_parts(base(), dup, vec![int(1); 4], &cfg),
            Err(ModelError::DuplicateVariable(1, 1))
        );

        for bad in [
            ModelConfig::new(1, int(10), int(0)),
            ModelConfig::new(0, int(-1), int(0)),
            ModelConfig::new(0, int(10), ratio(11, 10)),
        ] {
            assert!(matches!(
                build_model_from_parts(base(), golden_vars(), vec![int(1); 4], &bad),
                Err(ModelError::InvalidConfig(_))
            ));
        }

        let shrinking = vec![Variable::new(1, 1, Coefficients::new(0, -3, -1))];
        assert_eq!(
            build_model_from_parts(MetricsSummary::new(10, 1, 5), shrinking, vec![int(1)], &cfg),
            Err(ModelError::SentenceUnderflow(0))
        );
    }

    #[test]
    fn with_bound_rebuilds_one_constraint() {
        let cfg = ModelConfig::new(0, int(10), ratio(21, 40));
        let m = build_model_from_parts(base(), golden_vars(), vec![int(1); 4], &cfg).unwrap();
        let relaxed = m.with_bound(ConstraintKind::Readability, &int(12)).unwrap();
        assert_eq!(relaxed.config.k2, int(12));
        assert_eq!(relaxed.constraint(ConstraintKind::Readability).unwrap().rhs, int(3));
        assert_eq!(relaxed.constraint(ConstraintKind::Length), m.constraint(ConstraintKind::Length));
        assert!(m.with_bound(ConstraintKind::Length, &ratio(1, 2)).is_err());
        assert!(m.with_bound(ConstraintKind::Length, &int(3)).is_err());
        assert_eq!(m.with_bound(ConstraintKind::Length, &int(-4)).unwrap().config.k1, -4);
    }
}
