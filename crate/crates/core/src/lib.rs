//! Deciding DNF tautology and CNF satisfiability by inclusion-exclusion.
//!
//! A DNF over `n` variables is a tautology iff a uniformly random assignment
//! satisfies it with probability 1. [`solver::taut`] computes that
//! probability level by level with exact dyadic arithmetic and stops as soon
//! as a Bonferroni bound settles the question. A CNF is satisfiable iff its
//! negation (a DNF) is not a tautology, see [`solver::solve_cnf_sat`].
//!
//! Alongside the solver:
//!
//! * [`oracle`]: brute-force ground truth over all `2^n` assignments,
//! * [`lll`]: Lovász local lemma certificates of non-tautology,
//! * [`randgen`]: seeded random normal forms,
//! * [`experiments`]: batch runs with CSV output,
//! * [`io`]: native JSON and DIMACS formats,
//! * [`cli`]: the `iesat` command.

pub mod cli;
pub mod dyadic;
pub mod experiments;
pub mod formula;
pub mod io;
pub mod lll;
pub mod oracle;
pub mod randgen;
pub mod solver;

pub use dyadic::DyadicProbability;
pub use formula::{merge, Assignment, Formula, FormulaError, Kind, Literal, LiteralSet};
pub use solver::{taut, SolverConfig, SolverOutcome, Verdict};
