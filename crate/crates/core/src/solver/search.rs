use std::sync::atomic::{AtomicI64, Ordering};

use num::bigint::BigInt;
use num::ToPrimitive;
use rayon::prelude::*;

use super::{SolveError, SolverOptions, SolverStats};
use crate::ilp_model::{IlpModel, Sense};
use crate::rational::{self, Rational};

/// A constraint in `Σ coef·x ≤ rhs` form with integer coefficients.
struct Row {
    coef: Vec<i128>,
    rhs: i128,
}

type Incumbent = Option<(i64, Vec<usize>)>;

pub(super) struct Compiled {
    n: usize,
    /// Branching order: descending |Δwords|, ties by variable position.
    order: Vec<usize>,
    costs: Vec<i64>,
    rows: Vec<Row>,
    group: Vec<usize>,
    groups: usize,
    exclusive: bool,
}

fn to_i128(value: &BigInt) -> Result<i128, SolveError> {
    value.to_i128().ok_or(SolveError::Overflow)
}

fn scale(values: &[&Rational]) -> Result<Vec<i128>, SolveError> {
    let lcm = rational::lcm_of_denominators(values.iter().copied());
    values
        .iter()
        .map(|v| to_i128(&(v.numer() * (&lcm / v.denom()))))
        .collect()
}

impl Compiled {
    pub(super) fn new(model: &IlpModel) -> Result<Self, SolveError> {
        let n = model.len();

        let cost_refs: Vec<&Rational> = model.objective.iter().collect();
        let costs = scale(&cost_refs)?
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| SolveError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        costs
            .iter()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(SolveError::Overflow)?;

        let mut rows = Vec::with_capacity(model.constraints.len());
        for c in &model.constraints {
            let dense: Vec<Rational> = (0..n).map(|v| c.coefficient(v)).collect();
            let mut refs: Vec<&Rational> = dense.iter().collect();
            refs.push(&c.rhs);
            let mut ints = scale(&refs)?;
            if c.sense == Sense::Ge {
                for x in &mut ints {
                    *x = x.checked_neg().ok_or(SolveError::Overflow)?;
                }
            }
            let rhs = ints.pop().expect("rhs present");
            ints.iter()
                .try_fold(rhs.checked_abs().ok_or(SolveError::Overflow)?, |acc: i128, x| {
                    acc.checked_add(x.checked_abs()?)
                })
                .ok_or(SolveError::Overflow)?;
            rows.push(Row { coef: ints, rhs });
        }

        let exclusive = model.config.per_sentence_exclusivity;
        let (group, groups) = if exclusive {
            let mut group = vec![0; n];
            for (g, members) in model.sentence_groups().iter().enumerate() {
                for &v in members {
                    group[v] = g;
                }
            }
            let count = model.sentence_groups().len();
            (group, count)
        } else {
            ((0..n).collect(), n)
        };

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(model.variables[v].coefficients.words.abs()), v));

        Ok(Compiled {
            n,
            order,
            costs,
            rows,
            group,
            groups,
            exclusive,
        })
    }

    pub(super) fn solve(&self, options: &SolverOptions) -> Result<(Option<Vec<usize>>, SolverStats), SolveError> {
        let bound = AtomicI64::new(i64::MAX);
        let mut best: Incumbent = None;
        if options.warm_start {
            if let Some(mut selected) = self.greedy() {
                selected.sort_unstable();
                let z = selected.iter().map(|&v| self.costs[v]).sum();
                bound.store(z, Ordering::Relaxed);
                best = Some((z, selected));
            }
        }

        let threads = options.threads.max(1);
        let results: Vec<(Incumbent, SolverStats)> = if threads == 1 || self.n < 2 {
            vec![self.run_prefix(0, 0, &bound)]
        } else {
            let extra = usize::BITS - (threads - 1).leading_zeros();
            let depth = self.n.min(extra as usize + 3);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
            pool.install(|| {
                (0..1u64 << depth)
                    .into_par_iter()
                    .map(|mask| self.run_prefix(mask, depth, &bound))
                    .collect()
            })
        };

        let mut stats = SolverStats::default();
        for (found, s) in results {
            stats.absorb(&s);
            if let Some(candidate) = found {
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        Ok((best.map(|(_, set)| set), stats))
    }

    /// Fix the first `depth` branching variables from `mask`, then search
    /// the rest.
    fn run_prefix(&self, mask: u64, depth: usize, bound: &AtomicI64) -> (Incumbent, SolverStats) {
        let mut worker = Worker::new(self, bound);
        for k in 0..depth {
            if mask & (1 << k) != 0 {
                let v = self.order[k];
                if self.exclusive && worker.taken[self.group[v]] {
                    return (None, SolverStats::default());
                }
                worker.include(v);
            }
        }
        worker.dfs(depth);
        (worker.best, worker.stats)
    }

    fn violation(&self, sums: &[i128]) -> i128 {
        self.rows
            .iter()
            .zip(sums)
            .map(|(row, &s)| (s - row.rhs).max(0))
            .sum()
    }

    /// Add the candidate with the best violation reduction per unit cost
    /// until every constraint holds, or nothing helps.
    fn greedy(&self) -> Option<Vec<usize>> {
        let mut sums = vec![0i128; self.rows.len()];
        let mut taken = vec![false; self.groups];
        let mut chosen = vec![false; self.n];
        let mut selected = Vec::new();
        loop {
            let current = self.violation(&sums);
            if current == 0 {
                return Some(selected);
            }
            let mut pick: Option<(f64, usize)> = None;
            for v in 0..self.n {
                if chosen[v] || (self.exclusive && taken[self.group[v]]) {
                    continue;
                }
                let after: i128 = self
                    .rows
                    .iter()
                    .zip(&sums)
                    .map(|(row, &s)| (s + row.coef[v] - row.rhs).max(0))
                    .sum();
                let progress = current - after;
                if progress <= 0 {
                    continue;
                }
                let score = progress as f64 / self.costs[v] as f64;
                if pick.is_none_or(|(best, _)| score > best) {
                    pick = Some((score, v));
                }
            }
            let (_, v) = pick?;
            for (s, row) in sums.iter_mut().zip(&self.rows) {
                *s += row.coef[v];
            }
            taken[self.group[v]] = true;
            chosen[v] = true;
            selected.push(v);
        }
    }
}

struct Worker<'a> {
    m: &'a Compiled,
    bound: &'a AtomicI64,
    sums: Vec<i128>,
    taken: Vec<bool>,
    chosen: Vec<usize>,
    cost: i64,
    best: Incumbent,
    stats: SolverStats,
    scratch: Vec<i128>,
}

impl<'a> Worker<'a> {
    fn new(m: &'a Compiled, bound: &'a AtomicI64) -> Self {
        Worker {
            m,
            bound,
            sums: vec![0; m.rows.len()],
            taken: vec![false; m.groups],
            chosen: Vec::new(),
            cost: 0,
            best: None,
            stats: SolverStats::default(),
            scratch: vec![0; m.groups],
        }
    }

    fn include(&mut self, v: usize) {
        for (s, row) in self.sums.iter_mut().zip(&self.m.rows) {
            *s += row.coef[v];
        }
        self.cost += self.m.costs[v];
        self.taken[self.m.group[v]] = true;
        self.chosen.push(v);
    }

    fn exclude_last(&mut self) {
        let v = self.chosen.pop().expect("something to undo");
        for (s, row) in self.sums.iter_mut().zip(&self.m.rows) {
            *s -= row.coef[v];
        }
        self.cost -= self.m.costs[v];
        self.taken[self.m.group[v]] = false;
    }

    fn committed_feasible(&self) -> bool {
        self.sums.iter().zip(&self.m.rows).all(|(&s, row)| s <= row.rhs)
    }

    /// Can every row still be satisfied by some completion? Each undecided
    /// group contributes its most favourable single member (or nothing).
    fn completable(&mut self, depth: usize) -> bool {
        let m = self.m;
        for (row, &sum) in m.rows.iter().zip(&self.sums) {
            self.scratch.fill(0);
            for &v in &m.order[depth..] {
                let g = m.group[v];
                if m.exclusive && self.taken[g] {
                    continue;
                }
                if row.coef[v] < self.scratch[g] {
                    self.scratch[g] = row.coef[v];
                }
            }
            let best_case: i128 = self.scratch.iter().sum();
            if sum + best_case > row.rhs {
                return false;
            }
        }
        true
    }

    fn offer(&mut self) {
        let mut set = self.chosen.clone();
        set.sort_unstable();
        let candidate = (self.cost, set);
        if self.best.as_ref().is_none_or(|b| candidate < *b) {
            self.best = Some(candidate);
        }
        self.bound.fetch_min(self.cost, Ordering::Relaxed);
    }

    fn dfs(&mut self, depth: usize) {
        self.stats.nodes_visited += 1;
        let bound = self.bound.load(Ordering::Relaxed);
        if self.cost > bound {
            self.stats.nodes_pruned_bound += 1;
            return;
        }
        if self.cost == bound {
            // Costs are positive: only the all-zero completion can tie.
            self.stats.nodes_explored += 1;
            if self.committed_feasible() {
                self.offer();
            }
            self.stats.nodes_pruned_bound += 1;
            return;
        }
        if depth == self.m.n {
            self.stats.nodes_explored += 1;
            if self.committed_feasible() {
                self.offer();
            }
            return;
        }
        if !self.completable(depth) {
            self.stats.nodes_pruned_infeasible += 1;
            return;
        }
        let v = self.m.order[depth];
        if !(self.m.exclusive && self.taken[self.m.group[v]]) {
            self.include(v);
            self.dfs(depth + 1);
            self.exclude_last();
        }
        self.dfs(depth + 1);
    }
}
