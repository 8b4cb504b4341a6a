//! Share of random DNFs decided within K levels as the clause count grows.
//!
//! Usage: `cargo run --release --example phase_sweep -- [n] [K] [trials] [seed]`

use iesat::experiments::{phase_sweep, DnfParams, RunOptions, SweepRange};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() {
    let (n, k, trials, seed) = (arg(1, 100), arg(2, 6), arg(3, 100), arg(4, 0));
    let range = SweepRange {
        from: 5,
        to: 30,
        step: 5,
    };
    let points = phase_sweep(DnfParams::new(n, 0, 3), k, range, trials, seed, &RunOptions::default()).unwrap();
    for p in points {
        let bar = "#".repeat((p.proportion() * 40.0).round() as usize);
        println!("N = {:>2}: {:>5.3} {bar}", p.num_clauses, p.proportion());
    }
}
