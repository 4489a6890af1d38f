//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use parasel::analysis::{analyze_flexibility, apply_solution, Direction, Metric};
use parasel::candidates::Coefficients;
use parasel::ilp_model::{build_model_from_parts, variables_of, ConstraintKind};
use parasel::prelude::*;
use parasel::rational::{int, ratio};
use parasel::solver::{oracle_optimum, DEFAULT_ORACLE_LIMIT};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn ac1_golden_metrics() -> Check {
    let start = Instant::now();
    let text = std::fs::read_to_string(common::fixture("document.txt")).map_err(|e| e.to_string())?;
    let m = compute_metrics(&Document::parse(&text, &Lexicon::default()));
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(m == MetricsSummary::new(33, 3, 17), || format!("got {m:?}"))?;
    Ok("W=33 S=3 F=17".into())
}

fn ac2_golden_coefficients() -> Check {
    let cs = common::golden_set();
    let expected = [(-2, -2, 0), (3, 3, 1), (3, 3, 1), (-1, -3, 0)];
    for (c, (f, w, s)) in cs.candidates.iter().zip(expected) {
        let original = cs.original(c.sentence).unwrap();
        let derived = derive_coefficients(original, &c.replacement, &cs.lexicon);
        ensure(derived == Coefficients::new(f, w, s), || {
            format!("({}, {}) derived {derived}, expected ({f}, {w}, {s})", c.sentence, c.index)
        })?;
    }
    ensure(cs.len() == 4, || format!("{} candidates", cs.len()))?;
    Ok("all four rows exact".into())
}

fn ac3_golden_optimum() -> Check {
    let cs = common::golden_set();
    let mut rng = common::rng(3);
    for trial in 0..50 {
        let costs: Vec<Rational> = (0..4).map(|_| ratio(rng.gen_range(1..=1000), rng.gen_range(1..=100))).collect();
        let model = build_model_from_parts(cs.base_metrics(), variables_of(&cs), costs.clone(), &common::golden_config())
            .map_err(|e| e.to_string())?;
        let s = solve_branch_and_bound(&model).map_err(|e| e.to_string())?;
        ensure(s.is_optimal() && model.ids(&s.assignment) == vec![(3, 2)], || {
            format!("trial {trial}: costs {costs:?} gave {:?}", model.ids(&s.assignment))
        })?;
    }
    Ok("{p32} in 50/50 cost vectors".into())
}

fn ac4_feasible_sets() -> Check {
    let model = common::golden_model(&CostWeights::default());
    let found = enumerate_feasible_bruteforce(&model, DEFAULT_ORACLE_LIMIT).map_err(|e| e.to_string())?;
    let ids: Vec<_> = found.iter().map(|a| model.ids(a)).collect();
    let expected = vec![vec![(1, 1), (2, 1), (3, 2)], vec![(2, 1), (3, 2)], vec![(3, 2)]];
    ensure(ids == expected, || format!("got {ids:?}"))?;
    // The set the worked example does not list satisfies every bound.
    let extra = model.assignment_of(&[(2, 1), (3, 2)]).unwrap();
    let after = model.metrics_after(&extra);
    ensure(after == MetricsSummary::new(33, 4, 19), || format!("{after:?}"))?;
    ensure(
        ratio(33, 4) <= int(10) && ratio(19, 33) >= ratio(21, 40),
        || "ratio check".into(),
    )?;
    Ok("3 feasible sets, including {p21, p32}".into())
}

fn ac5_oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(5);
    let (mut feasible, mut infeasible) = (0, 0);
    for k in 0..240 {
        let n = if k < 16 { 16 } else { rng.gen_range(0..=16) };
        let inst = common::random_instance(&mut rng, n);
        let model = inst.model();
        let bb = solve_branch_and_bound(&model).map_err(|e| e.to_string())?;
        let oracle = oracle_optimum(&model, DEFAULT_ORACLE_LIMIT).map_err(|e| e.to_string())?;
        match oracle {
            Some((a, z)) => {
                feasible += 1;
                ensure(bb.is_optimal() && bb.objective == z && bb.assignment == a, || {
                    format!("instance {k}: search {:?} z={}, oracle {a:?} z={z}", bb.assignment, bb.objective)
                })?;
            }
            None => {
                infeasible += 1;
                ensure(!bb.is_optimal(), || format!("instance {k}: search found a selection, oracle none"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("240 instances ({feasible} feasible, {infeasible} infeasible) in {:.2?}", start.elapsed()))
}

fn ac6_linearization() -> Check {
    let mut rng = common::rng(6);
    let mut checked = 0u64;
    for k in 0..120 {
        let n = rng.gen_range(1..=12);
        let inst = common::random_instance(&mut rng, n);
        let model = inst.model();
        let read = model.constraint(ConstraintKind::Readability).unwrap();
        let dens = model.constraint(ConstraintKind::LexicalDensity).unwrap();
        for mask in 0u32..(1 << n) {
            let a = Assignment::from_positions((0..n).filter(|v| mask & (1 << v) != 0));
            let m = model.metrics_after(&a);
            if m.sentences < 1 || m.words < 1 {
                continue;
            }
            let ratio_read = ratio(m.words, m.sentences) <= inst.config.k2;
            let ratio_dens = ratio(m.function_words, m.words) >= inst.config.k3;
            ensure(read.holds(&a) == ratio_read && dens.holds(&a) == ratio_dens, || {
                format!("instance {k}, assignment {a:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("120 instances, {checked} assignments agree"))
}

fn ac7_pruning() -> Check {
    let mut rng = common::rng(7);
    let full = 1u64 << 19;
    let mut reductions = Vec::new();
    let mut visited = Vec::new();
    let mut optimal = 0;
    for k in 0..30 {
        let mut inst = common::random_instance(&mut rng, 19);
        // binding: the untouched text already breaks the length bound
        inst.config.k1 = -rng.gen_range(3..=12);
        let model = inst.model();
        let s = solve_branch_and_bound(&model).map_err(|e| e.to_string())?;
        ensure(s.stats.nodes_explored < full, || {
            format!("instance {k}: explored {} of {full}", s.stats.nodes_explored)
        })?;
        optimal += s.is_optimal() as usize;
        reductions.push(s.stats.reduction_percent());
        visited.push(s.stats.nodes_visited as f64);
    }
    let mean = reductions.iter().sum::<f64>() / reductions.len() as f64;
    let min = reductions.iter().cloned().fold(f64::INFINITY, f64::min);
    // the full binary tree over 19 variables has 2^20 - 1 nodes
    let tree = ((1u64 << 20) - 1) as f64;
    let mean_visited = visited.iter().sum::<f64>() / visited.len() as f64;
    Ok(format!(
        "30/30 below 2^19 ({optimal} optimal); mean reduction {mean:.2}% of complete assignments \
         (smallest {min:.2}%), mean {mean_visited:.0} tree nodes visited ({:.2}% of 2^20 - 1)",
        100.0 * mean_visited / tree
    ))
}

fn ac8_flexibility() -> Check {
    let cs = common::golden_set();
    let words = analyze_flexibility(&cs, Metric::TotalWords, Direction::Min).map_err(|e| e.to_string())?;
    let avg = analyze_flexibility(&cs, Metric::AvgSentenceLength, Direction::Min).map_err(|e| e.to_string())?;

    // independent scan over every selection with at most one rewrite per sentence
    let vars = variables_of(&cs);
    let base = cs.base_metrics();
    let (mut min_w, mut min_avg): (Option<i64>, Option<Rational>) = (None, None);
    for mask in 0u32..(1 << vars.len()) {
        let chosen: Vec<_> = (0..vars.len()).filter(|v| mask & (1 << v) != 0).collect();
        let mut sentences: Vec<_> = chosen.iter().map(|&v| vars[v].sentence).collect();
        sentences.dedup();
        if sentences.len() != chosen.len() {
            continue;
        }
        let m = chosen.iter().fold(base, |m, &v| {
            let c = vars[v].coefficients;
            m.shifted(c.function_words, c.words, c.sentences)
        });
        min_w = Some(min_w.map_or(m.words, |w| w.min(m.words)));
        let a = ratio(m.words, m.sentences);
        min_avg = Some(min_avg.map_or(a.clone(), |b| b.min(a)));
    }
    ensure(words.extreme_value == int(28) && min_w == Some(28), || {
        format!("min words {} / scan {min_w:?}", words.extreme_value)
    })?;
    ensure(avg.extreme_value == ratio(37, 5) && min_avg == Some(ratio(37, 5)), || {
        format!("min avg {} / scan {min_avg:?}", avg.extreme_value)
    })?;
    Ok("min words 28, min avg 37/5".into())
}

fn ac9_delta_consistency() -> Check {
    let cs = common::golden_set();
    let model = common::golden_model(&CostWeights::default());
    let feasible = enumerate_feasible_bruteforce(&model, DEFAULT_ORACLE_LIMIT).map_err(|e| e.to_string())?;
    for a in &feasible {
        let applied = apply_solution(&cs, a).map_err(|e| e.to_string())?;
        let recount = compute_metrics(&Document::parse(&applied.text, &cs.lexicon));
        ensure(recount == model.metrics_after(a), || format!("{a:?}: {recount:?}"))?;
    }
    Ok(format!("{} feasible selections recount exactly", feasible.len()))
}

fn solve_json(candidates: &str, config: &str, threads: usize) -> (i32, String, String) {
    let threads = threads.to_string();
    let args = [
        "parasel", "solve", "--candidates", candidates, "--config", config, "--format", "json", "--threads", &threads,
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = parasel::cli::run(args, &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&out).unwrap_or(serde_json::Value::Null);
    if let Some(obj) = value.as_object_mut() {
        obj.remove("stats");
    }
    (code, value.to_string(), String::from_utf8(err).unwrap())
}

fn ac10_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut cases = vec![(
        common::fixture("candidates.json").display().to_string(),
        common::fixture("config.toml").display().to_string(),
    )];
    let mut rng = common::rng(10);
    for k in 0..20 {
        let inst = common::random_text_instance(&mut rng);
        let cand = dir.path().join(format!("cand{k}.json"));
        let conf = dir.path().join(format!("conf{k}.toml"));
        std::fs::write(&cand, serde_json::to_string(&inst.file).unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&conf, &inst.config_toml).map_err(|e| e.to_string())?;
        cases.push((cand.display().to_string(), conf.display().to_string()));
    }
    let (mut optimal, mut infeasible) = (0, 0);
    for (k, (cand, conf)) in cases.iter().enumerate() {
        let reference = solve_json(cand, conf, 1);
        ensure(reference.0 != 1, || format!("case {k}: solve failed: {}", reference.2))?;
        if reference.0 == 0 {
            optimal += 1;
        } else {
            infeasible += 1;
        }
        for threads in [2, 8] {
            let other = solve_json(cand, conf, threads);
            ensure(other.0 == reference.0 && other.1 == reference.1, || {
                format!("case {k}: output differs between 1 and {threads} threads")
            })?;
        }
    }
    Ok(format!("{} instances identical at 1/2/8 threads ({optimal} optimal, {infeasible} infeasible)", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 golden metrics", ac1_golden_metrics),
        ("AC2 golden coefficients", ac2_golden_coefficients),
        ("AC3 golden optimum", ac3_golden_optimum),
        ("AC4 feasible-set oracle", ac4_feasible_sets),
        ("AC5 oracle equivalence", ac5_oracle_equivalence),
        ("AC6 linearization equivalence", ac6_linearization),
        ("AC7 pruning", ac7_pruning),
        ("AC8 flexibility", ac8_flexibility),
        ("AC9 delta consistency", ac9_delta_consistency),
        ("AC10 determinism", ac10_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
