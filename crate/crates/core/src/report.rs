//! Output records for the command-line tool, in JSON and human form.
//!
//! Every rational is written as an exact `p/q` string with an `_approx`
//! float beside it. Search statistics vary with the thread count and live
//! under their own `stats` key so the rest of a record can be compared
//! byte for byte.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{Direction, Metric, SweepPoint};
use crate::ilp_model::{Assignment, IlpModel, ModelConfig};
use crate::rational::{self, Rational};
use crate::solver::{Solution, SolverStats, Status};
use crate::text_metrics::MetricsSummary;

pub type CandidateId = [usize; 2];

fn ids(model: &IlpModel, a: &Assignment) -> Vec<CandidateId> {
    model.ids(a).into_iter().map(|(i, j)| [i, j]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub words: i64,
    pub sentences: i64,
    pub function_words: i64,
    pub avg_sentence_length: Option<String>,
    pub avg_sentence_length_approx: Option<f64>,
    pub lexical_density: Option<String>,
    pub lexical_density_approx: Option<f64>,
}

impl From<&MetricsSummary> for MetricsRecord {
    fn from(m: &MetricsSummary) -> Self {
        let avg = m.avg_sentence_length().ok();
        let density = m.lexical_density().ok();
        MetricsRecord {
            words: m.words,
            sentences: m.sentences,
            function_words: m.function_words,
            avg_sentence_length: avg.as_ref().map(rational::exact),
            avg_sentence_length_approx: avg.as_ref().map(rational::approx),
            lexical_density: density.as_ref().map(rational::exact),
            lexical_density_approx: density.as_ref().map(rational::approx),
        }
    }
}

/// `W=33 S=3 F=17 avg=11 density=17/33`
pub fn metrics_line(m: &MetricsSummary) -> String {
    let show = |r: Option<Rational>| r.map_or_else(|| "undefined".to_string(), |v| rational::exact(&v));
    format!(
        "W={} S={} F={} avg={} density={}",
        m.words,
        m.sentences,
        m.function_words,
        show(m.avg_sentence_length().ok()),
        show(m.lexical_density().ok())
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRecord {
    pub k1: i64,
    pub k2: String,
    pub k3: String,
}

impl From<&ModelConfig> for BoundsRecord {
    fn from(c: &ModelConfig) -> Self {
        BoundsRecord {
            k1: c.k1,
            k2: rational::exact(&c.k2),
            k3: rational::exact(&c.k3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlexRecord {
    pub metric: Metric,
    pub direction: Direction,
    pub original: String,
    pub extreme: String,
    pub extreme_approx: f64,
    pub selected: Vec<CandidateId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRecord {
    pub feasible: Vec<Vec<CandidateId>>,
    pub optimum: Option<Vec<CandidateId>>,
    pub optimum_objective: Option<String>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveRecord {
    pub status: Status,
    pub bounds: BoundsRecord,
    pub selected: Vec<CandidateId>,
    pub objective: String,
    pub objective_approx: f64,
    pub before: MetricsRecord,
    pub after: Option<MetricsRecord>,
    pub rewritten_text: Option<String>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
    /// Best reachable value of each constrained metric, reported when no
    /// selection is feasible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearest_achievable: Option<Vec<FlexRecord>>,
    pub stats: SolverStats,
}

impl SolveRecord {
    pub fn new(model: &IlpModel, solution: &Solution) -> Self {
        SolveRecord {
            status: solution.status,
            bounds: BoundsRecord::from(&model.config),
            selected: ids(model, &solution.assignment),
            objective: rational::exact(&solution.objective),
            objective_approx: rational::approx(&solution.objective),
            before: MetricsRecord::from(&model.base_metrics),
            after: None,
            rewritten_text: None,
            warnings: Vec::new(),
            oracle: None,
            nearest_achievable: None,
            stats: solution.stats,
        }
    }
}

fn id_list(ids: &[CandidateId]) -> String {
    if ids.is_empty() {
        return "(none)".to_string();
    }
    ids.iter()
        .map(|[i, j]| format!("p{i}_{j}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn metric_name(m: Metric) -> &'static str {
    match m {
        Metric::TotalWords => "total words",
        Metric::AvgSentenceLength => "avg sentence length",
        Metric::LexicalDensity => "lexical density",
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Min => "min",
        Direction::Max => "max",
    }
}

fn exact_and_approx(exact: &str, approx: f64) -> String {
    if exact.contains('/') {
        format!("{exact} (≈{approx:.4})")
    } else {
        exact.to_string()
    }
}

pub fn render_stats(stats: &SolverStats) -> String {
    format!(
        "stats (vary with --threads): explored {} of {} assignments ({:.2}% not evaluated), \
         {} nodes visited, {} pruned by bound, {} pruned as infeasible",
        stats.nodes_explored,
        stats.full_space,
        stats.reduction_percent(),
        stats.nodes_visited,
        stats.nodes_pruned_bound,
        stats.nodes_pruned_infeasible
    )
}

fn render_flex_lines(out: &mut String, records: &[FlexRecord]) {
    for r in records {
        let _ = writeln!(
            out,
            "  {} {}: {} (original {}) via {}",
            direction_name(r.direction),
            metric_name(r.metric),
            exact_and_approx(&r.extreme, r.extreme_approx),
            r.original,
            id_list(&r.selected)
        );
    }
}

pub fn render_solve_human(r: &SolveRecord) -> String {
    let mut out = String::new();
    let status = match r.status {
        Status::Optimal => "OPTIMAL",
        Status::Infeasible => "INFEASIBLE",
    };
    let _ = writeln!(out, "status: {status}");
    let _ = writeln!(out, "bounds: k1={} k2={} k3={}", r.bounds.k1, r.bounds.k2, r.bounds.k3);
    if r.status == Status::Optimal {
        let _ = writeln!(out, "selected: {}", id_list(&r.selected));
        let _ = writeln!(out, "objective: {}", exact_and_approx(&r.objective, r.objective_approx));
    }
    let line = |m: &MetricsRecord| {
        format!(
            "W={} S={} F={} avg={} density={}",
            m.words,
            m.sentences,
            m.function_words,
            m.avg_sentence_length.as_deref().unwrap_or("undefined"),
            m.lexical_density.as_deref().unwrap_or("undefined")
        )
    };
    let _ = writeln!(out, "before: {}", line(&r.before));
    if let Some(after) = &r.after {
        let _ = writeln!(out, "after:  {}", line(after));
    }
    if let Some(text) = &r.rewritten_text {
        let _ = writeln!(out, "rewritten text:\n  {text}");
    }
    if let Some(nearest) = &r.nearest_achievable {
        let _ = writeln!(out, "nearest achievable:");
        render_flex_lines(&mut out, nearest);
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(out, "exhaustive check: {} feasible selection(s)", o.feasible.len());
        for set in &o.feasible {
            let _ = writeln!(out, "  {}", id_list(set));
        }
        let _ = writeln!(
            out,
            "exhaustive optimum {} the search",
            if o.agrees { "matches" } else { "DISAGREES WITH" }
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "{}", render_stats(&r.stats));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlexibilityRecord {
    pub original: MetricsRecord,
    pub extremes: Vec<FlexRecord>,
    /// `[label, total words, avg sentence length]` rows for the original
    /// text and for the selections minimizing each of the two.
    pub table: Vec<(String, i64, String)>,
}

pub fn render_flexibility_human(r: &FlexibilityRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<28}{:>16}  avg sentence length", "", "number of words");
    for (label, words, avg) in &r.table {
        let _ = writeln!(out, "{label:<28}{words:>16}  {avg}");
    }
    let _ = writeln!(out, "extremes:");
    render_flex_lines(&mut out, &r.extremes);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: String,
    pub status: Status,
    pub selected: Vec<CandidateId>,
    pub objective: Option<String>,
    pub objective_approx: Option<f64>,
    pub stats: SolverStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub constraint: String,
    pub bounds: BoundsRecord,
    pub points: Vec<SweepRow>,
}

impl SweepRow {
    pub fn new(model: &IlpModel, p: &SweepPoint) -> Self {
        let optimal = p.solution.is_optimal();
        SweepRow {
            value: rational::exact(&p.value),
            status: p.solution.status,
            selected: ids(model, &p.solution.assignment),
            objective: optimal.then(|| rational::exact(&p.solution.objective)),
            objective_approx: optimal.then(|| rational::approx(&p.solution.objective)),
            stats: p.solution.stats,
        }
    }
}

pub fn render_sweep_human(r: &SweepRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<12}{:<12}{:<22}selected", r.constraint, "status", "objective");
    for p in &r.points {
        let status = match p.status {
            Status::Optimal => "OPTIMAL",
            Status::Infeasible => "INFEASIBLE",
        };
        let objective = match (&p.objective, p.objective_approx) {
            (Some(e), Some(a)) => exact_and_approx(e, a),
            _ => "-".to_string(),
        };
        let selected = if p.status == Status::Optimal { id_list(&p.selected) } else { "-".to_string() };
        let _ = writeln!(out, "{:<12}{:<12}{:<22}{}", p.value, status, objective, selected);
    }
    out
}
