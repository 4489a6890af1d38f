//! Meaning classes, discourse effects and the resulting costs.

use parasel::prelude::*;

fn main() {
    let lexicon = Lexicon::default();
    let weights = CostWeights::default();

    // (original, rewrite, questions answered before, after)
    let pairs = [
        ("The mat which was by the door.", "The mat by the door.", 0, 0),
        ("The owner, an eminent engineer, had a convertible.", "The owner, an eminent engineer, had a car.", 0, 0),
        ("The owner, an eminent engineer, had a convertible.", "The owner had a convertible.", 0, 0),
        ("It was the owner who had a convertible.", "The owner had a convertible.", 1, 3),
    ];
    for (original, rewrite, q_orig, q_repl) in pairs {
        let doc = Document::parse(original, &lexicon);
        let class = classify_meaning_effect(&doc.sentences[0], rewrite, &lexicon);
        let discourse = discourse_effect(q_orig, q_repl).unwrap();
        let cost = compute_cost(class, discourse, &weights);
        println!("{original}\n  -> {rewrite}\n  {class:?}, discourse {discourse}, cost {}", rational::display(&cost.total));
    }
}
