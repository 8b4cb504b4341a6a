//! Decide whether a DNF is a tautology with a bounded inclusion-exclusion
//! depth, and show what happens when the depth is too small.

use iesat::{taut, Formula, SolverConfig, Verdict};

fn main() {
    // x1 ∨ (¬x1 ∧ x2) ∨ (¬x1 ∧ ¬x2) covers every assignment.
    let f = Formula::dnf(2, &[&[1], &[-1, 2], &[-1, -2]]).unwrap();
    for k in 1..=3 {
        let out = taut(&f, &SolverConfig::new(k).unwrap()).unwrap();
        match out.verdict {
            Verdict::Decided { is_tautology, level } => {
                println!("K = {k}: decided at level {level}, tautology = {is_tautology}")
            }
            Verdict::Undecided { partial, level } => {
                println!("K = {k}: undecided, P_{level} = {partial}")
            }
        }
    }
    let out = taut(&f, &SolverConfig::new(3).unwrap()).unwrap();
    println!("{}", out.to_json());
}
