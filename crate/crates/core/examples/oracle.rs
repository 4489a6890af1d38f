//! Exhaustive enumeration of feasible selections, checked against the
//! branch-and-bound answer.

use parasel::prelude::*;
use parasel::solver::{oracle_optimum, DEFAULT_ORACLE_LIMIT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "The cat sat on the mat which was by the door. \
                It ate the cream ladled out by its owner. \
                The owner, an eminent engineer, had a convertible used in a bank robbery.";
    let mut cs = CandidateSet::new(text, Lexicon::default());
    cs.add(1, "The cat sat on the mat by the door.")?;
    cs.add(2, "It ate the cream. It had been ladled out by its owner.")?;
    cs.add(3, "The owner, an eminent engineer, had a convertible. It had been used in a bank robbery.")?;
    cs.add(3, "The owner had a convertible used in a bank robbery.")?;
    let config = ModelConfig::new(0, rational::int(10), rational::parse("0.525")?);
    let model = build_model(&cs, &config, &CostWeights::default())?;

    for a in enumerate_feasible_bruteforce(&model, DEFAULT_ORACLE_LIMIT)? {
        let m = model.metrics_after(&a);
        println!(
            "{:?}  z={}  W={} S={} F={}",
            model.ids(&a),
            rational::display(&model.objective_value(&a)),
            m.words,
            m.sentences,
            m.function_words
        );
    }
    let best = oracle_optimum(&model, DEFAULT_ORACLE_LIMIT)?.map(|(a, _)| model.ids(&a));
    let searched = solve_branch_and_bound(&model)?;
    println!("oracle {:?}, search {:?}", best, model.ids(&searched.assignment));
    Ok(())
}
