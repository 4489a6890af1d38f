//! Apply a hand-picked selection and recount the result.

use parasel::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "The cat sat on the mat which was by the door.\n\
                It ate the cream ladled out by its owner.\n\
                The owner, an eminent engineer, had a convertible used in a bank robbery.\n";
    let mut cs = CandidateSet::new(text, Lexicon::default());
    cs.add(1, "The cat sat on the mat by the door.")?;
    cs.add(2, "It ate the cream. It had been ladled out by its owner.")?;
    cs.add(3, "The owner had a convertible used in a bank robbery.")?;

    let pick = Assignment::from_positions([0, 1, 2]);
    let applied = apply_solution(&cs, &pick)?;
    print!("{}", applied.text);
    let m = applied.metrics;
    println!("W={} S={} F={}", m.words, m.sentences, m.function_words);
    Ok(())
}
