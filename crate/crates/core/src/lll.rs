//! Non-tautology certificates from the Lovász local lemma.
//!
//! Let `A_i` be the event that clause `i` of a DNF holds under a uniform random
//! assignment. Two events are dependent only if their clauses share a
//! variable. If the local lemma applies to the resulting dependency graph then
//! `Pr[no A_i] > 0`, i.e. some assignment falsifies every clause and the DNF is
//! not a tautology. Failure to apply proves nothing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use crate::dyadic::DyadicProbability;
use crate::formula::{clause_probability, Formula, FormulaError, Kind};

/// Rational upper bound on `e` (20 decimals, last digit rounded up).
const E_UPPER_NUM: &str = "271828182845904523537";
const E_UPPER_DEN: &str = "100000000000000000000";

/// Clause probabilities and the shared-variable graph. Vertex `i` is clause
/// `i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    probs: Vec<DyadicProbability>,
    adjacency: Vec<Vec<usize>>,
}

impl DependencyGraph {
    /// Symmetrizes `adjacency` and drops self-loops.
    ///
    /// Panics if the lengths differ or an index is out of range.
    pub fn new(probs: Vec<DyadicProbability>, adjacency: Vec<Vec<usize>>) -> Self {
        assert_eq!(probs.len(), adjacency.len(), "one adjacency list per event");
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); probs.len()];
        for (i, nbrs) in adjacency.iter().enumerate() {
            for &j in nbrs {
                assert!(j < probs.len(), "neighbour {j} out of range");
                if i != j {
                    sets[i].insert(j);
                    sets[j].insert(i);
                }
            }
        }
        Self {
            probs,
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn probs(&self) -> &[DyadicProbability] {
        &self.probs
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_prob(&self) -> DyadicProbability {
        self.probs
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(|| DyadicProbability::zero(0))
    }
}

/// Clause probabilities `2^-|C_i|` (0 for contradictory clauses) and an edge
/// between every two clauses that mention a common variable, whatever the
/// signs.
pub fn dnf_to_pg(f: &Formula) -> Result<DependencyGraph, FormulaError> {
    f.expect_kind(Kind::Dnf)?;
    let n = f.num_vars();
    let probs = f
        .clauses()
        .iter()
        .map(|c| clause_probability(c, n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
    for (i, c) in f.clauses().iter().enumerate() {
        for v in c.vars() {
            by_var[v as usize].push(i);
        }
    }
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); f.len()];
    for clauses in by_var.iter().filter(|c| c.len() > 1) {
        for (a, &i) in clauses.iter().enumerate() {
            for &j in &clauses[a + 1..] {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    Ok(DependencyGraph {
        probs,
        adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sym,
    Asym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LllVerdict {
    NotTautology,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllReport {
    pub variant: Variant,
    /// The lemma applies.
    pub holds: bool,
    pub p_max: DyadicProbability,
    pub d_max: usize,
    /// Events whose condition fails. For the symmetric check, the events
    /// attaining `p_max` or `d_max` when the global condition fails.
    pub failing_indices: Vec<usize>,
}

impl LllReport {
    pub fn verdict(&self) -> LllVerdict {
        if self.holds {
            LllVerdict::NotTautology
        } else {
            LllVerdict::Inconclusive
        }
    }

    /// `{verdict, variant, p_max, p_max_exact, d_max, failing_indices}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": self.verdict(),
            "variant": self.variant,
            "p_max": self.p_max.to_f64(),
            "p_max_exact": self.p_max.to_string(),
            "d_max": self.d_max,
            "failing_indices": self.failing_indices,
        })
    }
}

fn rational(p: &DyadicProbability) -> BigRational {
    BigRational::new(p.numerator().clone(), BigInt::one() << p.exponent())
}

/// `e · p · (d + 1) ≤ 1` with `p = max P[i]`, `d = max degree`, checked with an
/// upper bound on `e` so a pass is never a rounding artifact.
pub fn symmetric_report(g: &DependencyGraph) -> LllReport {
    let p_max = g.max_prob();
    let d_max = g.max_degree();
    let e_upper = BigRational::new(
        E_UPPER_NUM.parse().expect("constant"),
        E_UPPER_DEN.parse().expect("constant"),
    );
    let lhs = e_upper * rational(&p_max) * BigRational::from_integer(BigInt::from(d_max + 1));
    let holds = g.is_empty() || lhs <= BigRational::one();
    let failing_indices = if holds {
        Vec::new()
    } else {
        (0..g.len())
            .filter(|&i| g.probs[i] == p_max || g.degree(i) == d_max)
            .collect()
    };
    LllReport {
        variant: Variant::Sym,
        holds,
        p_max,
        d_max,
        failing_indices,
    }
}

/// For every event: `P[i] ≤ x_i · Π_{j ∈ Γ(i)} (1 − x_j)` with
/// `x_i = 1 / (deg(i) + 1)`, in exact rationals. An isolated event has
/// `x_i = 1`, outside the lemma's range; it is independent of everything else
/// and passes iff `P[i] < 1`.
pub fn asymmetric_report(g: &DependencyGraph) -> LllReport {
    let weight = |i: usize| BigRational::new(BigInt::one(), BigInt::from(g.degree(i) + 1));
    let failing_indices: Vec<usize> = (0..g.len())
        .filter(|&i| {
            let p = rational(&g.probs[i]);
            if g.degree(i) == 0 {
                return p >= BigRational::one();
            }
            let bound = g.adjacency[i]
                .iter()
                .fold(weight(i), |acc, &j| acc * (BigRational::one() - weight(j)));
            p > bound
        })
        .collect();
    LllReport {
        variant: Variant::Asym,
        holds: failing_indices.is_empty(),
        p_max: g.max_prob(),
        d_max: g.max_degree(),
        failing_indices,
    }
}

pub fn lll_symmetric(g: &DependencyGraph) -> bool {
    symmetric_report(g).holds
}

pub fn lll_asymmetric(g: &DependencyGraph) -> bool {
    asymmetric_report(g).holds
}

pub fn report(g: &DependencyGraph, variant: Variant) -> LllReport {
    match variant {
        Variant::Sym => symmetric_report(g),
        Variant::Asym => asymmetric_report(g),
    }
}

/// Never answers "tautology": the lemma can only certify the opposite.
pub fn lll_check_dnf(f: &Formula, variant: Variant) -> Result<LllVerdict, FormulaError> {
    Ok(report(&dnf_to_pg(f)?, variant).verdict())
}
