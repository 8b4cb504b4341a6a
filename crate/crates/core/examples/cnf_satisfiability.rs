//! CNF satisfiability through the negated DNF, checked against enumeration.

use iesat::oracle::is_satisfiable_bruteforce;
use iesat::solver::{solve_cnf_sat, SatVerdict};
use iesat::{Formula, SolverConfig};

fn main() {
    let cases = [
        ("x1 ∧ ¬x1", Formula::cnf(1, &[&[1], &[-1]]).unwrap()),
        ("(x1 ∨ x2) ∧ (¬x1 ∨ x2)", Formula::cnf(2, &[&[1, 2], &[-1, 2]]).unwrap()),
        (
            "all four 2-clauses over x1, x2",
            Formula::cnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap(),
        ),
    ];
    for (name, f) in cases {
        let out = solve_cnf_sat(&f, &SolverConfig::new(f.len()).unwrap()).unwrap();
        let SatVerdict::Decided { is_satisfiable, level } = out.verdict else {
            unreachable!("threshold N always decides")
        };
        let truth = is_satisfiable_bruteforce(&f).unwrap();
        println!("{name}: satisfiable = {is_satisfiable} (level {level}, enumeration says {truth})");
    }
}
