//! Brute-force enumeration as an independent reference for the solver.

use iesat::oracle::{count_satisfying, is_tautology_bruteforce};
use iesat::randgen::{rand_dnf, GenSpec};
use iesat::{taut, SolverConfig, Verdict};

fn main() {
    let mut agree = 0;
    for seed in 0..200 {
        let f = rand_dnf(&GenSpec::new(5, 10, seed).with_width(2)).unwrap();
        let truth = is_tautology_bruteforce(&f).unwrap();
        let out = taut(&f, &SolverConfig::new(f.len()).unwrap()).unwrap();
        if let Verdict::Decided { is_tautology, .. } = out.verdict {
            assert_eq!(is_tautology, truth, "seed {seed}");
            agree += 1;
        }
        if seed < 3 {
            println!(
                "seed {seed}: {} of 32 assignments satisfy, tautology = {truth}",
                count_satisfying(&f).unwrap()
            );
        }
    }
    println!("{agree}/200 verdicts match enumeration");
}
