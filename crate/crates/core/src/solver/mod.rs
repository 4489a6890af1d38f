//! Minimum-cost feasible selection by depth-first branch-and-bound, plus an
//! exhaustive enumerator used to check it.
//!
//! Search works on an integer image of the model: every constraint is scaled
//! by the LCM of its denominators and costs by the LCM of theirs, so all
//! node arithmetic is exact `i128`/`i64`. The exhaustive path stays on
//! rationals.

mod oracle;
mod search;

use num::Zero;
use serde::Serialize;

use crate::ilp_model::{Assignment, IlpModel};
use crate::rational::Rational;

pub use oracle::{enumerate_feasible_bruteforce, oracle_optimum, DEFAULT_ORACLE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Optimal,
    Infeasible,
}

/// Search counters. They depend on the thread count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    /// Complete assignments evaluated (leaves reached, plus nodes whose only
    /// surviving completion was checked directly).
    pub nodes_explored: u64,
    /// Every search node entered, internal or leaf.
    pub nodes_visited: u64,
    pub nodes_pruned_bound: u64,
    pub nodes_pruned_infeasible: u64,
    /// 2^n, saturating.
    pub full_space: u128,
}

impl SolverStats {
    /// Share of the 2^n assignments never evaluated, in percent.
    pub fn reduction_percent(&self) -> f64 {
        if self.full_space == 0 {
            return 0.0;
        }
        100.0 * (1.0 - self.nodes_explored as f64 / self.full_space as f64)
    }

    fn absorb(&mut self, other: &SolverStats) {
        self.nodes_explored += other.nodes_explored;
        self.nodes_visited += other.nodes_visited;
        self.nodes_pruned_bound += other.nodes_pruned_bound;
        self.nodes_pruned_infeasible += other.nodes_pruned_infeasible;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    /// Empty when infeasible.
    pub assignment: Assignment,
    pub objective: Rational,
    pub stats: SolverStats,
}

impl Solution {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("assignment refers to variable {0}, but the model has {1}")]
    UnknownVariable(usize, usize),
    #[error("exhaustive enumeration over {0} variables exceeds the limit of {1}")]
    TooManyVariables(usize, usize),
    #[error("scaled coefficients do not fit in machine integers")]
    Overflow,
    #[error("cannot start worker threads: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// 0 or 1 runs single-threaded.
    pub threads: usize,
    /// Seed the incumbent with a greedy pass.
    pub warm_start: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            threads: 1,
            warm_start: true,
        }
    }
}

/// True iff every model constraint holds, evaluated exactly.
pub fn check_feasibility(model: &IlpModel, assignment: &Assignment) -> Result<bool, SolveError> {
    if let Some(&bad) = assignment.selected.iter().find(|&&v| v >= model.len()) {
        return Err(SolveError::UnknownVariable(bad, model.len()));
    }
    Ok(model.constraints.iter().all(|c| c.holds(assignment)))
}

pub fn solve_branch_and_bound(model: &IlpModel) -> Result<Solution, SolveError> {
    solve_with(model, &SolverOptions::default())
}

/// Returns the minimum-cost feasible selection; ties go to the
/// lexicographically smallest sorted set of variable positions. The
/// result (but not the statistics) is independent of `options.threads`.
pub fn solve_with(model: &IlpModel, options: &SolverOptions) -> Result<Solution, SolveError> {
    let compiled = search::Compiled::new(model)?;
    let (best, mut stats) = compiled.solve(options)?;
    stats.full_space = 1u128.checked_shl(model.len() as u32).unwrap_or(u128::MAX);
    Ok(match best {
        Some(selected) => {
            let assignment = Assignment::from_positions(selected);
            Solution {
                status: Status::Optimal,
                objective: model.objective_value(&assignment),
                assignment,
                stats,
            }
        }
        None => Solution {
            status: Status::Infeasible,
            assignment: Assignment::empty(),
            objective: Rational::zero(),
            stats,
        },
    })
}
