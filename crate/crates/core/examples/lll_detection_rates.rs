//! How often each local-lemma variant certifies a random non-tautology.
//!
//! Usage: `cargo run --release --example lll_detection_rates -- [n] [trials] [seed]`

use iesat::experiments::{meta_lll, DnfParams, RunOptions};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() {
    let (n, trials, seed) = (arg(1, 100), arg(2, 100), arg(3, 0));
    for clauses in [5, 10, 15, 20] {
        let (_, s) = meta_lll(DnfParams::new(n, clauses, 3), trials, seed, &RunOptions::default()).unwrap();
        println!(
            "N = {clauses:>2}: non-tautologies {:>3}/{}, detected sym {:.2}, asym {:.2}",
            s.non_tautologies,
            s.determined(),
            s.prop_detected_sym(),
            s.prop_detected_asym()
        );
    }
}
