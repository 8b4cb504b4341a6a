//! Ground truth by enumerating all `2^n` assignments.

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::formula::{Formula, FormulaError, Kind};

pub const DEFAULT_VAR_LIMIT: u32 = 24;
/// Assignments are `u64` masks.
pub const MAX_VAR_LIMIT: u32 = 40;

const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{num_vars} variables exceeds the enumeration limit of {limit}")]
    TooLarge { num_vars: u32, limit: u32 },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    var_limit: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            var_limit: DEFAULT_VAR_LIMIT,
        }
    }
}

/// A clause as bit masks: `pos` are the variables it requires true, `neg`
/// those it requires false.
struct MaskClause {
    pos: u64,
    neg: u64,
}

impl Oracle {
    /// Panics if `var_limit > MAX_VAR_LIMIT`.
    pub fn with_limit(var_limit: u32) -> Self {
        assert!(
            var_limit <= MAX_VAR_LIMIT,
            "enumeration limit is capped at {MAX_VAR_LIMIT}"
        );
        Self { var_limit }
    }

    pub fn var_limit(&self) -> u32 {
        self.var_limit
    }

    /// Number of assignments under which `f` is true.
    pub fn count_satisfying(&self, f: &Formula) -> Result<u64, OracleError> {
        let n = f.num_vars();
        if n > self.var_limit {
            return Err(OracleError::TooLarge {
                num_vars: n,
                limit: self.var_limit,
            });
        }
        let clauses: Vec<MaskClause> = f
            .clauses()
            .iter()
            .map(|c| {
                let (mut pos, mut neg) = (0u64, 0u64);
                for l in c.literals() {
                    let bit = 1u64 << (l.var() - 1);
                    if l.is_positive() {
                        pos |= bit;
                    } else {
                        neg |= bit;
                    }
                }
                MaskClause { pos, neg }
            })
            .collect();
        let kind = f.kind();
        let holds = |a: u64| -> bool {
            match kind {
                // every literal true
                Kind::Dnf => clauses.iter().any(|c| a & c.pos == c.pos && a & c.neg == 0),
                // some literal true
                Kind::Cnf => clauses.iter().all(|c| a & c.pos != 0 || !a & c.neg != 0),
            }
        };
        let total = 1u64 << n;
        let count_range = |lo: u64, hi: u64| (lo..hi).filter(|&a| holds(a)).count() as u64;
        if total <= CHUNK {
            return Ok(count_range(0, total));
        }
        Ok((0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|i| count_range(i * CHUNK, ((i + 1) * CHUNK).min(total)))
            .sum())
    }

    pub fn is_tautology(&self, f: &Formula) -> Result<bool, OracleError> {
        f.expect_kind(Kind::Dnf)?;
        Ok(self.count_satisfying(f)? == 1u64 << f.num_vars())
    }

    pub fn is_satisfiable(&self, f: &Formula) -> Result<bool, OracleError> {
        f.expect_kind(Kind::Cnf)?;
        Ok(self.count_satisfying(f)? > 0)
    }

    /// The solver's JSON outcome shape, tagged `"method":"bruteforce"`. The
    /// verdict field follows the formula kind.
    pub fn to_json(&self, f: &Formula) -> Result<serde_json::Value, OracleError> {
        let count = self.count_satisfying(f)?;
        let n = f.num_vars();
        let mut v = json!({
            "method": "bruteforce",
            "decided": true,
            "level": null,
            "count": count.to_string(),
            "exponent": n,
        });
        match f.kind() {
            Kind::Dnf => v["is_tautology"] = json!(count == 1u64 << n),
            Kind::Cnf => v["is_satisfiable"] = json!(count > 0),
        }
        Ok(v)
    }
}

pub fn count_satisfying(f: &Formula) -> Result<u64, OracleError> {
    Oracle::default().count_satisfying(f)
}

pub fn is_tautology_bruteforce(f: &Formula) -> Result<bool, OracleError> {
    Oracle::default().is_tautology(f)
}

pub fn is_satisfiable_bruteforce(f: &Formula) -> Result<bool, OracleError> {
    Oracle::default().is_satisfiable(f)
}
