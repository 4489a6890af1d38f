//! Minimal-change paraphrase selection.
//!
//! Given a document and a set of candidate rewrites for its sentences,
//! choose the cheapest set of rewrites (at most one per sentence) such that
//! the rewritten document satisfies
//!
//! - a length bound: total word change `≤ k1` (with `k1 ≤ 0`),
//! - a readability bound: average sentence length `≤ k2`,
//! - a density bound: function words / total words `≥ k3`.
//!
//! The problem is a 0/1 integer program over exact rationals, solved by
//! branch-and-bound ([`solver`]) and checkable by exhaustive enumeration.
//!
//! ```
//! use parasel::prelude::*;
//!
//! let text = "The cat sat on the mat which was by the door. \
//!             It ate the cream ladled out by its owner. \
//!             The owner, an eminent engineer, had a convertible used in a bank robbery.";
//! let mut cs = CandidateSet::new(text, Lexicon::default());
//! cs.add(1, "The cat sat on the mat by the door.").unwrap();
//! cs.add(3, "The owner had a convertible used in a bank robbery.").unwrap();
//!
//! let config = ModelConfig::new(0, rational::int(10), rational::parse("0.525").unwrap());
//! let model = build_model(&cs, &config, &CostWeights::default()).unwrap();
//! let solution = solve_branch_and_bound(&model).unwrap();
//! assert_eq!(model.ids(&solution.assignment), vec![(3, 1)]);
//! ```

pub mod analysis;
pub mod candidates;
pub mod cli;
pub mod config;
pub mod cost_model;
pub mod ilp_model;
pub mod rational;
pub mod report;
pub mod solver;
pub mod text_metrics;

pub mod prelude {
    pub use crate::analysis::{
        analyze_flexibility, apply_solution, sweep_constraint, Direction, FlexibilityReport, Metric,
    };
    pub use crate::candidates::{
        derive_coefficients, load_candidates, validate_candidate_set, CandidateSet, Coefficients, LoadOptions,
        ParaphraseCandidate,
    };
    pub use crate::cost_model::{classify_meaning_effect, compute_cost, discourse_effect, CostWeights, MeaningClass};
    pub use crate::ilp_model::{build_model, build_model_from_parts, Assignment, ConstraintKind, IlpModel, ModelConfig, Variable};
    pub use crate::rational::{self, Rational};
    pub use crate::solver::{
        check_feasibility, enumerate_feasible_bruteforce, solve_branch_and_bound, solve_with, Solution, SolverOptions,
        Status,
    };
    pub use crate::text_metrics::{classify_words, compute_metrics, tokenize, Document, Lexicon, MetricsSummary};
}
