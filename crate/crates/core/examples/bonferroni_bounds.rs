//! Partial inclusion-exclusion sums alternate around the exact probability
//! that a random assignment satisfies the DNF.

use iesat::randgen::{rand_dnf, GenSpec};
use iesat::solver::{bonferroni_bounds, exact_union_probability};

fn main() {
    let f = rand_dnf(&GenSpec::new(6, 7, 11).with_width(2)).unwrap();
    println!("formula: {}", iesat::io::serialize_native(&f));
    let exact = exact_union_probability(&f).unwrap();
    println!("exact: {} ≈ {:.6}", exact.reduced(), exact.to_f64());
    for (k, p) in bonferroni_bounds(&f, f.len()).unwrap() {
        let side = if k % 2 == 1 { "upper" } else { "lower" };
        println!("P_{k} = {:<12} ≈ {:>9.6} ({side})", p.reduced().to_string(), p.to_f64());
    }
}
