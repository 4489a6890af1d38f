use num::Zero;

use super::SolveError;
use crate::ilp_model::{Assignment, IlpModel, Sense};
use crate::rational::Rational;

pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// Every feasible assignment, found by visiting all 2^n of them in Gray-code
/// order with exact running sums. Sorted by their sorted position lists.
pub fn enumerate_feasible_bruteforce(model: &IlpModel, limit: usize) -> Result<Vec<Assignment>, SolveError> {
    let n = model.len();
    if n > limit || n >= 64 {
        return Err(SolveError::TooManyVariables(n, limit));
    }
    let dense: Vec<Vec<Rational>> = model
        .constraints
        .iter()
        .map(|c| (0..n).map(|v| c.coefficient(v)).collect())
        .collect();
    let mut lhs = vec![Rational::zero(); model.constraints.len()];
    let holds = |lhs: &[Rational]| {
        model.constraints.iter().zip(lhs).all(|(c, value)| match c.sense {
            Sense::Le => *value <= c.rhs,
            Sense::Ge => *value >= c.rhs,
        })
    };

    let mut feasible = Vec::new();
    let mut state = 0u64;
    if holds(&lhs) {
        feasible.push(state);
    }
    for k in 1..(1u64 << n) {
        let bit = k.trailing_zeros() as usize;
        state ^= 1 << bit;
        let adding = state & (1 << bit) != 0;
        for (value, row) in lhs.iter_mut().zip(&dense) {
            if adding {
                *value += &row[bit];
            } else {
                *value -= &row[bit];
            }
        }
        if holds(&lhs) {
            feasible.push(state);
        }
    }

    let mut out: Vec<Assignment> = feasible
        .into_iter()
        .map(|mask| Assignment::from_positions((0..n).filter(|v| mask & (1 << v) != 0)))
        .collect();
    out.sort_by_key(Assignment::lex_key);
    Ok(out)
}

/// Cheapest feasible assignment by exhaustive search, ties to the smallest
/// sorted position list. `None` when infeasible.
pub fn oracle_optimum(model: &IlpModel, limit: usize) -> Result<Option<(Assignment, Rational)>, SolveError> {
    let feasible = enumerate_feasible_bruteforce(model, limit)?;
    Ok(feasible
        .into_iter()
        .map(|a| {
            let z = model.objective_value(&a);
            (a, z)
        })
        .min_by(|(a, za), (b, zb)| za.cmp(zb).then_with(|| a.lex_key().cmp(&b.lex_key()))))
}
