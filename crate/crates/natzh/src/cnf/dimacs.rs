// natzh - Rust library for exact SAT and #SAT solving by rewriting
//         NatZH tensor-network diagrams
// Copyright (C) 2026 - the natzh developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! DIMACS CNF reading and writing.
//!
//! Standard format: `c` comment lines, a `p cnf <vars> <clauses>` header,
//! then zero-terminated clauses. A clause whose first token is `x` is an
//! XOR clause (the common XOR extension); a `-` on any of its literals
//! flips the clause parity, so no separate parity syntax is needed.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, ClauseKind, Formula, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: expected `p cnf <vars> <clauses>`, got `{content}`")]
    MalformedHeader { line: usize, content: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p cnf` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: variable {variable} out of range (header declares {num_vars})")]
    VariableOutOfRange { line: usize, variable: u32, num_vars: u32 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: clause not terminated by 0 at end of input")]
    MissingTerminator { line: usize },
    #[error("header declares {declared} clause(s) but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("line {line}: `x` marker in the middle of a clause")]
    MisplacedXorMarker { line: usize },
}

/// Parses a DIMACS CNF document, with `x`-prefixed XOR clauses.
pub fn parse_dimacs(text: &str) -> Result<Formula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_kind = ClauseKind::Or;
    let mut last_content_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            let mut parts = trimmed.split_whitespace();
            let ok = parts.next() == Some("p")
                && parts.next() == Some("cnf");
            let vars = parts.next().and_then(|t| t.parse::<u32>().ok());
            let count = parts.next().and_then(|t| t.parse::<usize>().ok());
            match (ok, vars, count, parts.next()) {
                (true, Some(v), Some(m), None) => header = Some((v, m)),
                _ => {
                    return Err(DimacsError::MalformedHeader { line, content: trimmed.into() })
                }
            }
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader { line })?;
        last_content_line = line;
        for token in trimmed.split_whitespace() {
            if token == "x" {
                if !current.is_empty() {
                    return Err(DimacsError::MisplacedXorMarker { line });
                }
                current_kind = ClauseKind::Xor;
                continue;
            }
            let value: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line, token: token.into() })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                let clause = Clause::new(current_kind, std::mem::take(&mut current))
                    .expect("non-empty by construction");
                clauses.push(clause);
                current_kind = ClauseKind::Or;
                continue;
            }
            let variable = value.unsigned_abs();
            if variable > u64::from(num_vars) {
                return Err(DimacsError::VariableOutOfRange {
                    line,
                    variable: variable.min(u64::from(u32::MAX)) as u32,
                    num_vars,
                });
            }
            current.push(Literal { variable: variable as u32, negated: value < 0 });
        }
    }

    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader { line: 1 })?;
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator { line: last_content_line });
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch { declared, found: clauses.len() });
    }
    Ok(Formula::new(num_vars, clauses).expect("ranges already checked"))
}

/// Renders a formula back to DIMACS; inverse of [`parse_dimacs`].
pub fn render_dimacs(f: &Formula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.clauses().len());
    for clause in f.clauses() {
        if clause.kind == ClauseKind::Xor {
            out.push_str("x ");
        }
        for lit in clause.literals() {
            if lit.negated {
                let _ = write!(out, "-{} ", lit.variable);
            } else {
                let _ = write!(out, "{} ", lit.variable);
            }
        }
        out.push_str("0\n");
    }
    out
}
