//! Per-trial runtime records for random DNFs, written as CSV.
//!
//! Usage: `cargo run --release --example runtime_trials -- [n] [N] [K] [trials] [seed]`

use iesat::experiments::{meta_taut, write_trials_csv, DnfParams, RunOptions};

fn arg<T: std::str::FromStr>(i: usize, default: T) -> T {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() {
    let (n, clauses, k, trials, seed) = (arg(1, 100), arg(2, 10), arg(3, 6), arg(4, 20), arg(5, 0));
    let records = meta_taut(DnfParams::new(n, clauses, 3), k, trials, seed, &RunOptions::default()).unwrap();
    write_trials_csv(&records, std::io::stdout()).unwrap();
    let mut times: Vec<_> = records.iter().map(|r| r.wall_time).collect();
    times.sort();
    eprintln!("median wall time {:?}", times[times.len() / 2]);
}
