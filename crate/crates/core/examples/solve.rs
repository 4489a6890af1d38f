//! Cheapest selection of rewrites meeting the three bounds.

use parasel::prelude::*;

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
    for c in &model.constraints {
        println!("{:<16} {}", c.label, c.render(&model.variables));
    }

    let solution = solve_with(&model, &SolverOptions { threads: 4, ..Default::default() })?;
    println!("status {:?}, selected {:?}, z = {}", solution.status, model.ids(&solution.assignment), rational::display(&solution.objective));
    println!(
        "explored {} of {} assignments",
        solution.stats.nodes_explored, solution.stats.full_space
    );
    let applied = apply_solution(&cs, &solution.assignment)?;
    println!("{}", applied.text);
    Ok(())
}
