//! Normal-form formulas over signed integer literals.
//!
//! A literal `v` stands for variable `|v|` when positive and its negation when
//! negative, so `[[1, -2], [3]]` read as a DNF is `(x1 ∧ ¬x2) ∨ x3`.

use std::cmp::Ordering;
use std::fmt;
use std::num::NonZeroI32;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::DyadicProbability;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("literal 0 is not allowed")]
    ZeroLiteral,
    #[error("literal {literal} is out of range for {num_vars} declared variables")]
    VariableOutOfRange { literal: i64, num_vars: u32 },
    #[error("expected a {expected} formula, got {found}")]
    KindMismatch { expected: Kind, found: Kind },
}

/// A nonzero signed variable reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal(NonZeroI32);

impl Literal {
    pub fn new(value: i32) -> Result<Self, FormulaError> {
        NonZeroI32::new(value).map(Literal).ok_or(FormulaError::ZeroLiteral)
    }

    pub fn value(self) -> i32 {
        self.0.get()
    }

    /// 1-based variable index.
    pub fn var(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    pub fn negated(self) -> Self {
        Literal(-self.0)
    }
}

/// Literals are ordered by variable first and negative before positive, which
/// puts `-v` and `v` next to each other.
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var()
            .cmp(&other.var())
            .then(self.is_positive().cmp(&other.is_positive()))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A set of literals kept as a sorted, duplicate-free array.
///
/// The set may contain a complementary pair; such a set is "inconsistent" and
/// stands for an unsatisfiable conjunction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralSet {
    literals: Vec<Literal>,
}

impl LiteralSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort_unstable();
        literals.dedup();
        Self { literals }
    }

    pub fn from_values(values: &[i32]) -> Result<Self, FormulaError> {
        let lits = values.iter().map(|&v| Literal::new(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_literals(lits))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn values(&self) -> Vec<i32> {
        self.literals.iter().map(|l| l.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    /// No variable occurs with both signs.
    pub fn is_consistent(&self) -> bool {
        self.literals.windows(2).all(|w| w[0].var() != w[1].var())
    }

    pub fn max_var(&self) -> u32 {
        self.literals.last().map_or(0, |l| l.var())
    }

    /// Variable indices, ascending, without repetition.
    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        let mut prev = 0;
        self.literals.iter().filter_map(move |l| {
            let v = l.var();
            (v != prev).then(|| {
                prev = v;
                v
            })
        })
    }

    pub fn negated(&self) -> Self {
        Self::from_literals(self.literals.iter().map(|l| l.negated()))
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Conjunction of two literal sets: the union, or `None` when the union holds
/// some variable together with its negation.
pub fn merge(a: &LiteralSet, b: &LiteralSet) -> Option<LiteralSet> {
    let (x, y) = (a.literals(), b.literals());
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        let (l, r) = (x[i], y[j]);
        match l.var().cmp(&r.var()) {
            Ordering::Less => {
                out.push(l);
                i += 1;
            }
            Ordering::Greater => {
                out.push(r);
                j += 1;
            }
            Ordering::Equal if l == r => {
                out.push(l);
                i += 1;
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    let merged = LiteralSet { literals: out };
    // Either input may already be inconsistent on its own.
    merged.is_consistent().then_some(merged)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dnf,
    Cnf,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dnf => "DNF",
            Kind::Cnf => "CNF",
        })
    }
}

/// A DNF or CNF with an explicit variable count.
///
/// `num_vars` may exceed the largest variable that actually occurs; it fixes
/// the probability space `{0,1}^num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    kind: Kind,
    num_vars: u32,
    clauses: Vec<LiteralSet>,
}

impl Formula {
    pub fn new(kind: Kind, num_vars: u32, clauses: Vec<LiteralSet>) -> Result<Self, FormulaError> {
        for clause in &clauses {
            if clause.max_var() > num_vars {
                let literal = clause
                    .literals()
                    .iter()
                    .find(|l| l.var() > num_vars)
                    .map_or(0, |l| i64::from(l.value()));
                return Err(FormulaError::VariableOutOfRange { literal, num_vars });
            }
        }
        Ok(Self {
            kind,
            num_vars,
            clauses,
        })
    }

    /// Builds a formula from raw integer clauses.
    pub fn from_clauses(kind: Kind, num_vars: u32, clauses: &[&[i32]]) -> Result<Self, FormulaError> {
        let sets = clauses
            .iter()
            .map(|c| LiteralSet::from_values(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(kind, num_vars, sets)
    }

    pub fn dnf(num_vars: u32, clauses: &[&[i32]]) -> Result<Self, FormulaError> {
        Self::from_clauses(Kind::Dnf, num_vars, clauses)
    }

    pub fn cnf(num_vars: u32, clauses: &[&[i32]]) -> Result<Self, FormulaError> {
        Self::from_clauses(Kind::Cnf, num_vars, clauses)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[LiteralSet] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn expect_kind(&self, expected: Kind) -> Result<(), FormulaError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(FormulaError::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }

    /// Appends a clause, checking it against `num_vars`.
    pub fn push(&mut self, clause: LiteralSet) -> Result<(), FormulaError> {
        if clause.max_var() > self.num_vars {
            return Err(FormulaError::VariableOutOfRange {
                literal: i64::from(clause.literals().last().map_or(0, |l| l.value())),
                num_vars: self.num_vars,
            });
        }
        self.clauses.push(clause);
        Ok(())
    }

    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        match self.kind {
            Kind::Dnf => self
                .clauses
                .iter()
                .any(|c| c.literals().iter().all(|&l| assignment.satisfies(l))),
            Kind::Cnf => self
                .clauses
                .iter()
                .all(|c| c.literals().iter().any(|&l| assignment.satisfies(l))),
        }
    }

    /// De Morgan dual with the opposite kind: every literal flipped, clause
    /// order kept. The result is true exactly where `self` is false.
    pub fn negated(&self) -> Formula {
        Formula {
            kind: match self.kind {
                Kind::Dnf => Kind::Cnf,
                Kind::Cnf => Kind::Dnf,
            },
            num_vars: self.num_vars,
            clauses: self.clauses.iter().map(LiteralSet::negated).collect(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}]{{", self.kind, self.num_vars)?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// `¬S` for a CNF `S`, as a DNF. `S` is satisfiable iff the result is not a
/// tautology.
pub fn negate_cnf_to_dnf(f: &Formula) -> Result<Formula, FormulaError> {
    f.expect_kind(Kind::Cnf)?;
    Ok(f.negated())
}

pub fn negate_dnf_to_cnf(f: &Formula) -> Result<Formula, FormulaError> {
    f.expect_kind(Kind::Dnf)?;
    Ok(f.negated())
}

/// Probability that a uniformly random assignment over `num_vars` variables
/// satisfies the conjunction `clause`: `2^-|clause|`, or 0 if inconsistent.
/// The result always carries exponent `num_vars`.
pub fn clause_probability(clause: &LiteralSet, num_vars: u32) -> Result<DyadicProbability, FormulaError> {
    if let Some(l) = clause.literals().iter().find(|l| l.var() > num_vars) {
        return Err(FormulaError::VariableOutOfRange {
            literal: i64::from(l.value()),
            num_vars,
        });
    }
    if !clause.is_consistent() {
        return Ok(DyadicProbability::zero(num_vars));
    }
    Ok(DyadicProbability::pow2_neg(clause.len() as u32, num_vars))
}

/// A total truth assignment to variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    /// `bits[i]` is the value of variable `i + 1`.
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Variable `i + 1` takes bit `i` of `mask`.
    pub fn from_mask(mask: u64, num_vars: u32) -> Self {
        Self::new((0..num_vars).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn num_vars(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn get(&self, var: u32) -> bool {
        self.bits[var as usize - 1]
    }

    pub fn satisfies(&self, lit: Literal) -> bool {
        self.get(lit.var()) == lit.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i32]) -> LiteralSet {
        LiteralSet::from_values(v).unwrap()
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge(&set(&[-1, 2]), &set(&[2, 3])), Some(set(&[-1, 2, 3])));
        assert_eq!(merge(&set(&[1, 2]), &set(&[-2, 3])), None);
        assert_eq!(merge(&LiteralSet::empty(), &set(&[5])), Some(set(&[5])));
        // an inconsistent operand never merges
        assert_eq!(merge(&set(&[1, -1]), &LiteralSet::empty()), None);
    }

    #[test]
    fn literal_ordering_keeps_complements_adjacent() {
        let s = set(&[4, -3, 1, 3]);
        assert_eq!(s.values(), vec![1, -3, 3, 4]);
        assert!(!s.is_consistent());
        assert_eq!(s.vars().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(set(&[2, 2, -1]).values(), vec![-1, 2]);
    }

    #[test]
    fn clause_probability_examples() {
        assert_eq!(
            clause_probability(&set(&[-3, 1, 4]), 4).unwrap(),
            DyadicProbability::new(1, 3)
        );
        assert_eq!(clause_probability(&set(&[-3, 1, 4]), 4).unwrap().exponent(), 4);
        assert_eq!(
            clause_probability(&LiteralSet::empty(), 3).unwrap(),
            DyadicProbability::one(0)
        );
        assert_eq!(
            clause_probability(&set(&[1, -1]), 2).unwrap(),
            DyadicProbability::zero(0)
        );
        assert_eq!(
            clause_probability(&set(&[5]), 4),
            Err(FormulaError::VariableOutOfRange {
                literal: 5,
                num_vars: 4
            })
        );
    }

    #[test]
    fn evaluate_examples() {
        let f = Formula::dnf(2, &[&[1, -2]]).unwrap();
        assert!(f.evaluate(&Assignment::new(vec![true, false])));
        let f = Formula::dnf(2, &[&[1], &[2]]).unwrap();
        assert!(!f.evaluate(&Assignment::new(vec![false, false])));
        let f = Formula::cnf(2, &[&[1, 2], &[-1], &[-2]]).unwrap();
        for mask in 0..4 {
            assert!(!f.evaluate(&Assignment::from_mask(mask, 2)));
        }
    }

    #[test]
    fn empty_formulas_and_clauses() {
        let a = Assignment::new(vec![true]);
        assert!(!Formula::dnf(1, &[]).unwrap().evaluate(&a));
        assert!(Formula::cnf(1, &[]).unwrap().evaluate(&a));
        assert!(Formula::dnf(1, &[&[]]).unwrap().evaluate(&a));
        assert!(!Formula::cnf(1, &[&[]]).unwrap().evaluate(&a));
    }

    #[test]
    fn negation_examples() {
        let f = Formula::cnf(2, &[&[1, 2], &[-1]]).unwrap();
        assert_eq!(
            negate_cnf_to_dnf(&f).unwrap(),
            Formula::dnf(2, &[&[-1, -2], &[1]]).unwrap()
        );
        let empty = Formula::cnf(3, &[]).unwrap();
        assert_eq!(negate_cnf_to_dnf(&empty).unwrap(), Formula::dnf(3, &[]).unwrap());
        let dnf = Formula::dnf(1, &[&[1]]).unwrap();
        assert_eq!(
            negate_cnf_to_dnf(&dnf),
            Err(FormulaError::KindMismatch {
                expected: Kind::Cnf,
                found: Kind::Dnf
            })
        );
        assert_eq!(negate_dnf_to_cnf(&dnf).unwrap().kind(), Kind::Cnf);
    }

    #[test]
    fn negated_unsat_cnf_covers_every_assignment() {
        let f = Formula::cnf(2, &[&[1, 2], &[-1], &[-2]]).unwrap();
        let g = negate_cnf_to_dnf(&f).unwrap();
        assert_eq!(g, Formula::dnf(2, &[&[-1, -2], &[1], &[2]]).unwrap());
        assert!((0..4).all(|m| g.evaluate(&Assignment::from_mask(m, 2))));
    }

    #[test]
    fn rejects_out_of_range_and_zero() {
        assert_eq!(
            Formula::dnf(2, &[&[1, -3]]),
            Err(FormulaError::VariableOutOfRange {
                literal: -3,
                num_vars: 2
            })
        );
        assert_eq!(Formula::dnf(2, &[&[0]]), Err(FormulaError::ZeroLiteral));
        let mut f = Formula::dnf(2, &[]).unwrap();
        assert!(f.push(set(&[3])).is_err());
        f.push(set(&[2])).unwrap();
        assert_eq!(f.len(), 1);
    }
}
