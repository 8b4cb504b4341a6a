//! Reading and writing formulas: the native JSON document and DIMACS CNF.
//!
//! Native:
//!
//! ```text
//! {"kind":"dnf","vars":4,"clauses":[[-3,1,4],[-2,-1,4]]}
//! ```
//!
//! Clause order is preserved. Literals inside a clause are stored sorted by
//! variable, so they may be written back in a different order than given.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, FormulaError, Kind, LiteralSet};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: FormulaError,
    },
    #[error("literal {0} does not fit in 32 bits")]
    LiteralTooLarge(i64),
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed header {text:?}, expected `p cnf <vars> <clauses>`")]
    BadHeader { line: usize, text: String },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NativeDoc {
    kind: Kind,
    vars: u32,
    clauses: Vec<Vec<i64>>,
}

fn to_clause(raw: &[i64]) -> Result<LiteralSet, ParseError> {
    let values = raw
        .iter()
        .map(|&v| i32::try_from(v).map_err(|_| ParseError::LiteralTooLarge(v)))
        .collect::<Result<Vec<_>, _>>()?;
    LiteralSet::from_values(&values).map_err(|source| ParseError::Invalid { line: 1, source })
}

pub fn parse_native(text: &str) -> Result<Formula, ParseError> {
    let doc: NativeDoc = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let clauses = doc
        .clauses
        .iter()
        .map(|c| to_clause(c))
        .collect::<Result<Vec<_>, _>>()?;
    Formula::new(doc.kind, doc.vars, clauses).map_err(|source| ParseError::Invalid { line: 1, source })
}

pub fn serialize_native(f: &Formula) -> String {
    let doc = NativeDoc {
        kind: f.kind(),
        vars: f.num_vars(),
        clauses: f
            .clauses()
            .iter()
            .map(|c| c.literals().iter().map(|l| i64::from(l.value())).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("native document always serializes")
}

/// Parses DIMACS CNF. Clauses may span lines; a line starting with `%` ends
/// the clause section (SATLIB convention).
pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line: lineno });
            }
            header = Some(parse_header(trimmed, lineno)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::MissingHeader);
        };
        let mut column = 1;
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::Syntax {
                line: lineno,
                column: line.find(token).map_or(column, |c| c + 1),
                message: format!("expected an integer literal, found {token:?}"),
            })?;
            column += token.len() + 1;
            if value == 0 {
                let clause =
                    LiteralSet::from_values(&current).map_err(|source| ParseError::Invalid { line: lineno, source })?;
                if clause.max_var() > num_vars {
                    let literal = clause
                        .literals()
                        .iter()
                        .find(|l| l.var() > num_vars)
                        .map_or(0, |l| i64::from(l.value()));
                    return Err(ParseError::Invalid {
                        line: lineno,
                        source: FormulaError::VariableOutOfRange { literal, num_vars },
                    });
                }
                clauses.push(clause);
                current.clear();
            } else {
                current.push(i32::try_from(value).map_err(|_| ParseError::LiteralTooLarge(value))?);
            }
        }
    }

    let (num_vars, declared) = header.ok_or(ParseError::MissingHeader)?;
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause);
    }
    if clauses.len() != declared {
        return Err(ParseError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Formula::new(Kind::Cnf, num_vars, clauses).map_err(|source| ParseError::Invalid { line: 0, source })
}

fn parse_header(line: &str, lineno: usize) -> Result<(u32, usize), ParseError> {
    let bad = || ParseError::BadHeader {
        line: lineno,
        text: line.to_string(),
    };
    let parts: Vec<&str> = line.split_whitespace().collect();
    match parts.as_slice() {
        ["p", "cnf", vars, clauses] => Ok((vars.parse().map_err(|_| bad())?, clauses.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Writes a CNF as DIMACS with LF line endings, one clause per line.
pub fn write_dimacs(f: &Formula) -> Result<String, FormulaError> {
    f.expect_kind(Kind::Cnf)?;
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.len());
    for clause in f.clauses() {
        for l in clause.literals() {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    Ok(out)
}

/// Native if the first non-blank character is `{`, DIMACS otherwise.
pub fn parse_auto(text: &str) -> Result<Formula, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_native(text)
    } else {
        parse_dimacs(text)
    }
}
