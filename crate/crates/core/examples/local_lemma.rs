//! Local-lemma certificates of non-tautology on a dependency graph built
//! from the DNF's shared variables.

use iesat::lll::{dnf_to_pg, report, Variant};
use iesat::Formula;

fn main() {
    // Two independent width-3 clauses, then a star where clause 0 shares a
    // variable with every other clause.
    let sparse = Formula::dnf(6, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
    let star = Formula::dnf(
        9,
        &[&[1, 2, 3], &[1, 4, 5], &[2, 6, 7], &[3, 8, 9], &[-1, 4, 6], &[-2, 5, 8]],
    )
    .unwrap();
    for (name, f) in [("sparse", &sparse), ("star", &star)] {
        let g = dnf_to_pg(f).unwrap();
        println!(
            "{name}: max degree {}, max probability {}",
            g.max_degree(),
            g.max_prob()
        );
        for variant in [Variant::Sym, Variant::Asym] {
            println!("  {}", report(&g, variant).to_json());
        }
    }
}
