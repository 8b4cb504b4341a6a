//! Tautology checking for DNFs by inclusion-exclusion with Bonferroni early
//! exit.
//!
//! For a DNF `C_1 ∨ … ∨ C_N` over `n` variables let `A_i` be the event that a
//! uniformly random assignment satisfies `C_i`. The level-`k` term
//!
//! ```text
//! S_k = Σ_{|I| = k} Pr[A_I],   Pr[A_I] = 0 or 2^-|∪_{i∈I} C_i|
//! ```
//!
//! is accumulated into `P_k = S_1 - S_2 + S_3 - …`. Truncations at odd `k`
//! are upper bounds on `Pr[∪ A_i]`, truncations at even `k` lower bounds, and
//! `P_N` is exact. The DNF is a tautology iff `Pr[∪ A_i] = 1`, so:
//!
//! * odd `k` with `P_k < 1` proves a non-tautology,
//! * even `k` with `P_k ≥ 1` proves a tautology,
//! * `k = N` decides either way.
//!
//! Every `Pr[A_I]` is a multiple of `2^-n`, so all sums are exact big-integer
//! sums over the fixed denominator `2^n`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dyadic::DyadicProbability;
use crate::formula::{merge, negate_cnf_to_dnf, Formula, FormulaError, Kind, LiteralSet};

/// Tables smaller than this are expanded on the calling thread.
const PARALLEL_MIN_ENTRIES: usize = 2048;
const DEADLINE_CHECK_EVERY: usize = 256;

#[derive(Clone, Debug)]
pub struct SolverConfig {
    threshold: usize,
    pub max_table_entries: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Allow level expansion to use the current rayon pool.
    pub parallel: bool,
}

impl SolverConfig {
    pub fn new(threshold: usize) -> Result<Self, SolverError> {
        if threshold == 0 {
            return Err(SolverError::InvalidThreshold);
        }
        Ok(Self {
            threshold,
            max_table_entries: None,
            time_budget: None,
            parallel: true,
        })
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn with_max_table_entries(mut self, cap: usize) -> Self {
        self.max_table_entries = Some(cap);
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn limits(&self, start: Instant) -> Limits {
        Limits {
            max_entries: self.max_table_entries,
            deadline: self.time_budget.map(|b| start + b),
            parallel: self.parallel,
        }
    }
}

/// Resource limits applied while expanding one level.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub max_entries: Option<usize>,
    pub deadline: Option<Instant>,
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    TableEntries,
    TimeBudget,
    Multiplicity,
}

/// Why a level could not be completed. `level` is the level being built.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{kind:?} limit hit while building level {level}")]
pub struct ExpandError {
    pub kind: LimitKind,
    pub level: usize,
}

#[derive(Clone, Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("threshold must be at least 1")]
    InvalidThreshold,
    #[error("resource limit ({kind:?}) after completing level {level}; last bound P_{level} = {partial}")]
    ResourceLimit {
        kind: LimitKind,
        /// Last fully computed level (0 if none).
        level: usize,
        partial: DyadicProbability,
        stats: SolverStats,
    },
}

/// One aggregated row of the level table: `multiplicity` distinct clause
/// subsets whose largest clause index is `max_index` conjoin to `merged`.
/// Clause indices are 0-based positions in the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub merged: LiteralSet,
    pub max_index: usize,
    pub multiplicity: u128,
}

/// The compatible conjunctions of all `level`-subsets of clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTable {
    level: usize,
    entries: Vec<TableEntry>,
}

impl LevelTable {
    /// The level-1 table: one entry per consistent clause.
    pub fn first(f: &Formula) -> Self {
        let entries = f
            .clauses()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_consistent())
            .map(|(i, c)| TableEntry {
                merged: c.clone(),
                max_index: i,
                multiplicity: 1,
            })
            .collect();
        Self { level: 1, entries }
    }

    pub fn from_entries(level: usize, mut entries: Vec<TableEntry>) -> Self {
        entries.sort_unstable_by(|a, b| a.max_index.cmp(&b.max_index).then_with(|| a.merged.cmp(&b.merged)));
        Self { level, entries }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of clause subsets represented.
    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// `Σ multiplicity · 2^-|merged|` over the denominator `2^num_vars`.
    pub fn term_sum(&self, num_vars: u32) -> Result<DyadicProbability, ExpandError> {
        let overflow = ExpandError {
            kind: LimitKind::Multiplicity,
            level: self.level,
        };
        let mut by_size = vec![0u128; num_vars as usize + 1];
        for e in &self.entries {
            let slot = &mut by_size[e.merged.len()];
            *slot = slot.checked_add(e.multiplicity).ok_or_else(|| overflow.clone())?;
        }
        let mut sum = BigInt::from(0);
        for (size, &count) in by_size.iter().enumerate() {
            if count != 0 {
                sum += BigInt::from(count) << (num_vars as usize - size);
            }
        }
        Ok(DyadicProbability::new(sum, num_vars))
    }
}

/// Result of one expansion step.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub table: LevelTable,
    /// Level term `S_{k+1}`.
    pub term: DyadicProbability,
    /// Merges attempted.
    pub merges: u64,
}

type NextLevel = HashMap<(usize, LiteralSet), u128>;

/// Builds the level-`k+1` table from the complete level-`k` table: each entry
/// is conjoined with every clause of larger index; incompatible results are
/// dropped, equal `(merged, index)` pairs are aggregated.
///
/// The result does not depend on how the work is partitioned.
pub fn level_expand(table: &LevelTable, f: &Formula, limits: &Limits) -> Result<Expansion, ExpandError> {
    let next_level = table.level + 1;
    let clauses = f.clauses();
    let fail = |kind| ExpandError {
        kind,
        level: next_level,
    };

    let expand_chunk = |chunk: &[TableEntry]| -> Result<(NextLevel, u64), ExpandError> {
        let mut out = NextLevel::new();
        let mut merges = 0u64;
        for (i, entry) in chunk.iter().enumerate() {
            if i % DEADLINE_CHECK_EVERY == 0 && limits.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(fail(LimitKind::TimeBudget));
            }
            for (j, clause) in clauses.iter().enumerate().skip(entry.max_index + 1) {
                merges += 1;
                let Some(merged) = merge(&entry.merged, clause) else {
                    continue;
                };
                let slot = out.entry((j, merged)).or_insert(0);
                *slot = slot
                    .checked_add(entry.multiplicity)
                    .ok_or_else(|| fail(LimitKind::Multiplicity))?;
            }
            if limits.max_entries.is_some_and(|cap| out.len() > cap) {
                return Err(fail(LimitKind::TableEntries));
            }
        }
        Ok((out, merges))
    };

    let (map, merges) = if limits.parallel && table.len() >= PARALLEL_MIN_ENTRIES {
        let chunk = (table.len() / (4 * rayon::current_num_threads())).max(256);
        table.entries.par_chunks(chunk).map(expand_chunk).try_reduce(
            || (NextLevel::new(), 0),
            |(a, ma), (b, mb)| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                for (k, v) in small {
                    let slot = big.entry(k).or_insert(0);
                    *slot = slot.checked_add(v).ok_or_else(|| fail(LimitKind::Multiplicity))?;
                }
                Ok((big, ma + mb))
            },
        )?
    } else {
        expand_chunk(&table.entries)?
    };

    if limits.max_entries.is_some_and(|cap| map.len() > cap) {
        return Err(fail(LimitKind::TableEntries));
    }
    let entries = map
        .into_iter()
        .map(|((max_index, merged), multiplicity)| TableEntry {
            merged,
            max_index,
            multiplicity,
        })
        .collect();
    let table = LevelTable::from_entries(next_level, entries);
    let term = table.term_sum(f.num_vars())?;
    Ok(Expansion { table, term, merges })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    /// `Pr[A_I]` evaluations: clauses at level 1 plus merges attempted above.
    pub terms_evaluated: u64,
    /// Largest table size over all levels.
    pub table_peak: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Decided {
        is_tautology: bool,
        level: usize,
    },
    /// No conclusion by the threshold; `partial` is `P_level`, an upper bound
    /// on the union probability when `level` is odd and a lower bound when
    /// even.
    Undecided {
        partial: DyadicProbability,
        level: usize,
    },
}

impl Verdict {
    pub fn level(&self) -> usize {
        match self {
            Verdict::Decided { level, .. } | Verdict::Undecided { level, .. } => *level,
        }
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, Verdict::Decided { .. })
    }
}

#[derive(Clone, Debug)]
pub struct SolverOutcome {
    pub verdict: Verdict,
    pub stats: SolverStats,
    /// Exponent of the probability denominator (the formula's `num_vars`).
    pub exponent: u32,
}

/// Direction of the bound carried by an undecided result.
pub fn bound_direction(level: usize) -> &'static str {
    if level % 2 == 1 {
        "upper"
    } else {
        "lower"
    }
}

#[derive(Serialize)]
struct OutcomeRecord<'a> {
    method: &'static str,
    mode: &'static str,
    decided: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_tautology: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_satisfiable: Option<bool>,
    level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial_numerator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<&'a str>,
    exponent: u32,
    terms_evaluated: u64,
    table_peak: usize,
    wall_ms: f64,
}

impl SolverOutcome {
    fn record(&self, sat: bool) -> OutcomeRecord<'static> {
        let (decided, taut, partial) = match &self.verdict {
            Verdict::Decided { is_tautology, .. } => (true, Some(*is_tautology), None),
            Verdict::Undecided { partial, .. } => (
                false,
                None,
                Some(partial.with_exponent(self.exponent.max(partial.exponent()))),
            ),
        };
        let level = self.verdict.level();
        OutcomeRecord {
            method: "inclusion_exclusion",
            mode: if sat { "sat" } else { "taut" },
            decided,
            is_tautology: if sat { None } else { taut },
            is_satisfiable: if sat { taut.map(|t| !t) } else { None },
            level,
            bound: partial.as_ref().map(|_| bound_direction(level)),
            partial_numerator: partial.map(|p| p.numerator().to_string()),
            exponent: self.exponent,
            terms_evaluated: self.stats.terms_evaluated,
            table_peak: self.stats.table_peak,
            wall_ms: self.stats.wall_time.as_secs_f64() * 1e3,
        }
    }

    /// `{decided, is_tautology?, level, partial_numerator?, exponent, terms_evaluated, table_peak, wall_ms}`
    /// plus `method`, `mode` and, when undecided, `bound`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.record(false)).expect("outcome serializes")
    }
}

/// Walks the inclusion-exclusion levels, one per `advance`.
struct LevelWalk<'a> {
    formula: &'a Formula,
    limits: Limits,
    table: Option<LevelTable>,
    partial: DyadicProbability,
    stats: SolverStats,
    start: Instant,
}

impl<'a> LevelWalk<'a> {
    fn new(formula: &'a Formula, limits: Limits) -> Self {
        Self {
            formula,
            limits,
            table: None,
            partial: DyadicProbability::zero(formula.num_vars()),
            stats: SolverStats::default(),
            start: Instant::now(),
        }
    }

    fn level(&self) -> usize {
        self.table.as_ref().map_or(0, LevelTable::level)
    }

    fn limit_error(&mut self, kind: LimitKind) -> SolverError {
        self.stats.wall_time = self.start.elapsed();
        SolverError::ResourceLimit {
            kind,
            level: self.level(),
            partial: self.partial.clone(),
            stats: self.stats.clone(),
        }
    }

    /// Computes the next level and folds its term into the partial sum.
    fn advance(&mut self) -> Result<&DyadicProbability, SolverError> {
        if self.limits.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(self.limit_error(LimitKind::TimeBudget));
        }
        let (table, term) = match &self.table {
            None => {
                let table = LevelTable::first(self.formula);
                self.stats.terms_evaluated += self.formula.len() as u64;
                match table.term_sum(self.formula.num_vars()) {
                    Ok(term) => (table, term),
                    Err(e) => return Err(self.limit_error(e.kind)),
                }
            }
            Some(prev) => match level_expand(prev, self.formula, &self.limits) {
                Ok(x) => {
                    self.stats.terms_evaluated += x.merges;
                    (x.table, x.term)
                }
                Err(e) => return Err(self.limit_error(e.kind)),
            },
        };
        if self.limits.max_entries.is_some_and(|cap| table.len() > cap) {
            return Err(self.limit_error(LimitKind::TableEntries));
        }
        self.stats.table_peak = self.stats.table_peak.max(table.len());
        self.partial = if table.level() % 2 == 1 {
            &self.partial + &term
        } else {
            &self.partial - &term
        };
        self.table = Some(table);
        Ok(&self.partial)
    }

    fn finish(mut self, verdict: Verdict) -> SolverOutcome {
        self.stats.wall_time = self.start.elapsed();
        SolverOutcome {
            verdict,
            stats: self.stats,
            exponent: self.formula.num_vars(),
        }
    }
}

/// Decides whether the DNF `f` is a tautology, computing at most
/// `cfg.threshold()` inclusion-exclusion levels.
pub fn taut(f: &Formula, cfg: &SolverConfig) -> Result<SolverOutcome, SolverError> {
    f.expect_kind(Kind::Dnf)?;
    let start = Instant::now();
    let mut walk = LevelWalk::new(f, cfg.limits(start));
    walk.start = start;
    let n_clauses = f.len();
    if n_clauses == 0 {
        // Empty disjunction: never true.
        return Ok(walk.finish(Verdict::Decided {
            is_tautology: false,
            level: 0,
        }));
    }
    let depth = cfg.threshold.min(n_clauses);
    for k in 1..=depth {
        let p = walk.advance()?;
        let decision = if k == n_clauses {
            Some(p.is_at_least_one())
        } else if k % 2 == 1 && p.is_below_one() {
            Some(false)
        } else if k % 2 == 0 && p.is_at_least_one() {
            Some(true)
        } else {
            None
        };
        if let Some(is_tautology) = decision {
            return Ok(walk.finish(Verdict::Decided { is_tautology, level: k }));
        }
    }
    let partial = walk.partial.clone();
    Ok(walk.finish(Verdict::Undecided { partial, level: depth }))
}

/// The partial sums `P_1, …, P_min(K,N)` without early exit.
pub fn bonferroni_bounds(f: &Formula, threshold: usize) -> Result<Vec<(usize, DyadicProbability)>, SolverError> {
    bonferroni_bounds_with(f, threshold, &Limits::default())
}

pub fn bonferroni_bounds_with(
    f: &Formula,
    threshold: usize,
    limits: &Limits,
) -> Result<Vec<(usize, DyadicProbability)>, SolverError> {
    f.expect_kind(Kind::Dnf)?;
    if threshold == 0 {
        return Err(SolverError::InvalidThreshold);
    }
    let mut walk = LevelWalk::new(f, limits.clone());
    (1..=threshold.min(f.len()))
        .map(|k| walk.advance().map(|p| (k, p.clone())))
        .collect()
}

/// `Pr[f]` exactly, by the full inclusion-exclusion sum.
pub fn exact_union_probability(f: &Formula) -> Result<DyadicProbability, SolverError> {
    exact_union_probability_with(f, &Limits::default())
}

pub fn exact_union_probability_with(f: &Formula, limits: &Limits) -> Result<DyadicProbability, SolverError> {
    f.expect_kind(Kind::Dnf)?;
    let mut walk = LevelWalk::new(f, limits.clone());
    for _ in 0..f.len() {
        walk.advance()?;
    }
    Ok(walk.partial)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatVerdict {
    Decided {
        is_satisfiable: bool,
        level: usize,
    },
    /// `partial` bounds `Pr[¬S]`, the probability that the CNF is false.
    Undecided {
        partial: DyadicProbability,
        level: usize,
    },
}

#[derive(Clone, Debug)]
pub struct SatOutcome {
    pub verdict: SatVerdict,
    pub stats: SolverStats,
    pub exponent: u32,
    inner: SolverOutcome,
}

impl SatOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.inner.record(true)).expect("outcome serializes")
    }
}

/// Satisfiability of a CNF: `S` is satisfiable iff the DNF `¬S` is not a
/// tautology.
pub fn solve_cnf_sat(f: &Formula, cfg: &SolverConfig) -> Result<SatOutcome, SolverError> {
    let negated = negate_cnf_to_dnf(f)?;
    let inner = taut(&negated, cfg)?;
    let verdict = match &inner.verdict {
        Verdict::Decided { is_tautology, level } => SatVerdict::Decided {
            is_satisfiable: !is_tautology,
            level: *level,
        },
        Verdict::Undecided { partial, level } => SatVerdict::Undecided {
            partial: partial.clone(),
            level: *level,
        },
    };
    Ok(SatOutcome {
        verdict,
        stats: inner.stats.clone(),
        exponent: inner.exponent,
        inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dnf(n: u32, clauses: &[&[i32]]) -> Formula {
        Formula::dnf(n, clauses).unwrap()
    }

    fn cfg(k: usize) -> SolverConfig {
        SolverConfig::new(k).unwrap()
    }

    fn q(num: i64, exp: u32) -> DyadicProbability {
        DyadicProbability::new(num, exp)
    }

    fn set(v: &[i32]) -> LiteralSet {
        LiteralSet::from_values(v).unwrap()
    }

    #[test]
    fn expand_contradictory_pair() {
        let f = dnf(1, &[&[1], &[-1]]);
        let first = LevelTable::first(&f);
        assert_eq!(first.len(), 2);
        let x = level_expand(&first, &f, &Limits::default()).unwrap();
        assert!(x.table.is_empty());
        assert!(x.term.is_zero());
        assert_eq!(x.merges, 1);
    }

    #[test]
    fn expand_compatible_pair() {
        let f = dnf(2, &[&[1], &[2]]);
        let x = level_expand(&LevelTable::first(&f), &f, &Limits::default()).unwrap();
        assert_eq!(
            x.table.entries(),
            &[TableEntry {
                merged: set(&[1, 2]),
                max_index: 1,
                multiplicity: 1
            }]
        );
        assert_eq!(x.term, q(1, 2));
    }

    #[test]
    fn expand_all_four_sign_patterns() {
        let f = dnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]);
        let x = level_expand(&LevelTable::first(&f), &f, &Limits::default()).unwrap();
        assert!(x.table.is_empty());
        assert!(x.term.is_zero());
        assert_eq!(x.merges, 6);
    }

    #[test]
    fn aggregation_counts_duplicate_clauses() {
        // Three copies of {1}: level 2 has three subsets all merging to {1}.
        let f = dnf(1, &[&[1], &[1], &[1]]);
        let x = level_expand(&LevelTable::first(&f), &f, &Limits::default()).unwrap();
        assert_eq!(x.table.len(), 2);
        assert_eq!(x.table.total_multiplicity(), 3);
        assert_eq!(x.term, q(3, 1));
        assert_eq!(exact_union_probability(&f).unwrap(), q(1, 1));
    }

    #[test]
    fn taut_examples() {
        let out = taut(&dnf(4, &[&[-3, 1, 4], &[-2, -1, 4]]), &cfg(2)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: false,
                level: 1
            }
        );

        let out = taut(&dnf(1, &[&[1], &[-1]]), &cfg(2)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: true,
                level: 2
            }
        );

        let out = taut(&dnf(1, &[&[1], &[-1]]), &cfg(1)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Undecided {
                partial: q(1, 0),
                level: 1
            }
        );

        let out = taut(&dnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]), &cfg(4)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: true,
                level: 2
            }
        );
    }

    #[test]
    fn taut_edge_cases() {
        let out = taut(&dnf(3, &[]), &cfg(1)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: false,
                level: 0
            }
        );
        // An empty clause is always true.
        let out = taut(&dnf(3, &[&[]]), &cfg(1)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: true,
                level: 1
            }
        );
        // A contradictory clause contributes nothing.
        let out = taut(&dnf(1, &[&[1, -1]]), &cfg(5)).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Decided {
                is_tautology: false,
                level: 1
            }
        );
        assert!(matches!(
            taut(&Formula::cnf(1, &[]).unwrap(), &cfg(1)),
            Err(SolverError::Formula(FormulaError::KindMismatch { .. }))
        ));
        assert!(matches!(SolverConfig::new(0), Err(SolverError::InvalidThreshold)));
    }

    #[test]
    fn exact_probability_examples() {
        assert_eq!(exact_union_probability(&dnf(1, &[&[1], &[-1]])).unwrap(), q(1, 0));
        assert_eq!(exact_union_probability(&dnf(2, &[&[1, 2]])).unwrap(), q(1, 2));
        assert_eq!(exact_union_probability(&dnf(2, &[&[1], &[2]])).unwrap(), q(3, 2));
        assert_eq!(
            exact_union_probability(&dnf(4, &[&[-3, 1, 4], &[-2, -1, 4]])).unwrap(),
            q(1, 2)
        );
        assert_eq!(exact_union_probability(&dnf(4, &[])).unwrap(), q(0, 0));
    }

    #[test]
    fn bonferroni_examples() {
        assert_eq!(
            bonferroni_bounds(&dnf(2, &[&[1], &[2]]), 2).unwrap(),
            vec![(1, q(1, 0)), (2, q(3, 2))]
        );
        assert_eq!(
            bonferroni_bounds(&dnf(1, &[&[1], &[-1]]), 2).unwrap(),
            vec![(1, q(1, 0)), (2, q(1, 0))]
        );
        assert_eq!(
            bonferroni_bounds(&dnf(4, &[&[-3, 1, 4], &[-2, -1, 4]]), 2).unwrap(),
            vec![(1, q(1, 2)), (2, q(1, 2))]
        );
        // Truncated at N.
        assert_eq!(bonferroni_bounds(&dnf(2, &[&[1]]), 5).unwrap().len(), 1);
    }

    #[test]
    fn sat_examples() {
        let c = |n, cl: &[&[i32]]| Formula::cnf(n, cl).unwrap();
        let out = solve_cnf_sat(&c(2, &[&[1, 2], &[-1], &[-2]]), &cfg(3)).unwrap();
        assert!(matches!(
            out.verdict,
            SatVerdict::Decided {
                is_satisfiable: false,
                ..
            }
        ));
        let out = solve_cnf_sat(&c(1, &[&[1]]), &cfg(1)).unwrap();
        assert_eq!(
            out.verdict,
            SatVerdict::Decided {
                is_satisfiable: true,
                level: 1
            }
        );
        let out = solve_cnf_sat(&c(1, &[]), &cfg(1)).unwrap();
        assert!(matches!(
            out.verdict,
            SatVerdict::Decided {
                is_satisfiable: true,
                ..
            }
        ));
        assert!(solve_cnf_sat(&dnf(1, &[]), &cfg(1)).is_err());
    }

    #[test]
    fn table_cap_reports_last_complete_bound() {
        let f = dnf(6, &[&[1], &[2], &[3], &[4], &[5], &[6]]);
        let err = taut(&f, &cfg(6).with_max_table_entries(10)).unwrap_err();
        match err {
            SolverError::ResourceLimit {
                kind, level, partial, ..
            } => {
                assert_eq!(kind, LimitKind::TableEntries);
                // level 2 has 15 entries > 10
                assert_eq!(level, 1);
                assert_eq!(partial, q(3, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_time_budget_hits_limit() {
        let f = dnf(2, &[&[1], &[2]]);
        let err = taut(&f, &cfg(2).with_time_budget(Duration::ZERO)).unwrap_err();
        assert!(matches!(
            err,
            SolverError::ResourceLimit {
                kind: LimitKind::TimeBudget,
                level: 0,
                ..
            }
        ));
    }

    #[test]
    fn json_shape() {
        let out = taut(&dnf(1, &[&[1], &[-1]]), &cfg(1)).unwrap();
        let v = out.to_json();
        assert_eq!(v["decided"], false);
        assert_eq!(v["partial_numerator"], "2");
        assert_eq!(v["exponent"], 1);
        assert_eq!(v["bound"], "upper");
        assert!(v.get("is_tautology").is_none());

        let out = taut(&dnf(4, &[&[-3, 1, 4], &[-2, -1, 4]]), &cfg(2)).unwrap();
        let v = out.to_json();
        assert_eq!(v["decided"], true);
        assert_eq!(v["is_tautology"], false);
        assert_eq!(v["level"], 1);
        assert_eq!(v["terms_evaluated"], 2);
        assert_eq!(v["table_peak"], 2);

        let sat = solve_cnf_sat(&Formula::cnf(1, &[&[1]]).unwrap(), &cfg(1)).unwrap();
        assert_eq!(sat.to_json()["is_satisfiable"], true);
        assert_eq!(sat.to_json()["mode"], "sat");
    }

    #[test]
    fn parallel_expansion_matches_sequential() {
        // 16 unit clauses over 16 vars: level 3 has 560 entries, level 4 1820,
        // level 5 4368 (crosses the parallel threshold).
        let clauses: Vec<Vec<i32>> = (1..=16).map(|v| vec![v]).collect();
        let refs: Vec<&[i32]> = clauses.iter().map(Vec::as_slice).collect();
        let f = dnf(16, &refs);
        let par = bonferroni_bounds_with(
            &f,
            7,
            &Limits {
                parallel: true,
                ..Limits::default()
            },
        )
        .unwrap();
        let seq = bonferroni_bounds_with(&f, 7, &Limits::default()).unwrap();
        assert_eq!(par, seq);
    }
}
