//! Seeded random formulas under both literal models, in both file formats.

use iesat::io::{serialize_native, write_dimacs};
use iesat::randgen::{generator_id, rand_cnf, rand_dnf, GenSpec, LiteralSampling};

fn main() {
    for sampling in [LiteralSampling::Uniform, LiteralSampling::DistinctVars] {
        let spec = GenSpec::new(6, 4, 42).with_sampling(sampling);
        println!("{}", generator_id(sampling));
        println!("  DNF: {}", serialize_native(&rand_dnf(&spec).unwrap()));
        for line in write_dimacs(&rand_cnf(&spec).unwrap()).unwrap().lines() {
            println!("  {line}");
        }
    }
}
