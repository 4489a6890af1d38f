//! Deltas (function words, words, sentences) and meaning class of each
//! candidate rewrite.

use parasel::prelude::*;

fn main() {
    let text = "The cat sat on the mat which was by the door. \
                It ate the cream ladled out by its owner. \
                The owner, an eminent engineer, had a convertible used in a bank robbery.";
    let mut cs = CandidateSet::new(text, Lexicon::default());
    cs.add(1, "The cat sat on the mat by the door.").unwrap();
    cs.add(2, "It ate the cream. It had been ladled out by its owner.").unwrap();
    cs.add(3, "The owner, an eminent engineer, had a convertible. It had been used in a bank robbery.")
        .unwrap();
    cs.add(3, "The owner had a convertible used in a bank robbery.").unwrap();

    println!("{:<8}{:>4}{:>4}{:>4}  meaning", "p_ij", "f", "w", "s");
    for c in &cs.candidates {
        let d = c.coefficients;
        println!(
            "p{}_{:<5}{:>4}{:>4}{:>4}  {:?}",
            c.sentence, c.index, d.function_words, d.words, d.sentences, c.meaning_class
        );
    }
    let report = parasel::candidates::validate_candidate_set(&cs);
    println!("validation issues: {}", report.issues.len());
}
