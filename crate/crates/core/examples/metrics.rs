//! Word, sentence and function-word counts for a text.
//!
//! cargo run --example metrics -- [path]

use parasel::prelude::*;
use parasel::report::metrics_line;

const SAMPLE: &str = "The cat sat on the mat which was by the door. \
    It ate the cream ladled out by its owner. \
    The owner, an eminent engineer, had a convertible used in a bank robbery.";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let lexicon = Lexicon::default();
    let doc = Document::parse(&text, &lexicon);
    for (i, s) in doc.sentences.iter().enumerate() {
        let closed: Vec<_> = s.words().filter(|t| t.is_closed()).map(|t| t.surface.as_str()).collect();
        println!("{}: {} words, closed {:?}", i + 1, s.word_count(), closed);
    }
    println!("{}", metrics_line(&compute_metrics(&doc)));
    Ok(())
}
