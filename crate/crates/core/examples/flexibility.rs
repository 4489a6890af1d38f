//! How far each metric can move, ignoring cost and the other bounds.

use parasel::analysis::Direction;
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

    for metric in Metric::ALL {
        for direction in [Direction::Min, Direction::Max] {
            let r = analyze_flexibility(&cs, metric, direction)?;
            let ids: Vec<_> = r.achieving_assignment.selected.iter().map(|&p| cs.candidates[p].id()).collect();
            println!(
                "{:?} {:?}: {} (original {}) via {:?}",
                direction,
                metric,
                rational::display(&r.extreme_value),
                rational::display(&r.original_value),
                ids
            );
        }
    }
    Ok(())
}
