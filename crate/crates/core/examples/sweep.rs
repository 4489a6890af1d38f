//! Re-solve over a range of readability bounds.

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

    let values = ["7", "7.4", "7.75", "8", "9", "10", "11"]
        .iter()
        .map(|v| rational::parse(v))
        .collect::<Result<Vec<_>, _>>()?;
    let options = SolverOptions { threads: 4, ..Default::default() };
    for point in sweep_constraint(&model, ConstraintKind::Readability, &values, &options)? {
        let s = &point.solution;
        println!(
            "k2={:<6} {:?} {:?} z={}",
            rational::exact(&point.value),
            s.status,
            model.ids(&s.assignment),
            rational::display(&s.objective)
        );
    }
    Ok(())
}
