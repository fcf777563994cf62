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

//! Problem instances: CNF formulas with an XOR clause extension,
//! DIMACS parsing and rendering, the encoder into closed diagrams, and
//! independent classical oracles used to cross-check everything else.

mod dimacs;
mod encode;
mod oracles;

pub use dimacs::{parse_dimacs, render_dimacs, DimacsError};
pub use encode::encode;
pub use oracles::{
    brute_force_count, brute_force_count_with_limit, gauss_count_xor, two_sat_oracle,
    OracleError, DEFAULT_BRUTE_FORCE_LIMIT,
};

use thiserror::Error;

/// A variable (1-based) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub variable: u32,
    pub negated: bool,
}

impl Literal {
    pub fn pos(variable: u32) -> Literal {
        Literal { variable, negated: false }
    }

    pub fn neg(variable: u32) -> Literal {
        Literal { variable, negated: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// Disjunction of its literals.
    Or,
    /// Exclusive-or of its literals (must come out true).
    Xor,
}

/// A non-empty clause. Duplicate and complementary literals are allowed;
/// the tidy rewrites deal with them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub kind: ClauseKind,
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(kind: ClauseKind, literals: Vec<Literal>) -> Result<Clause, FormulaError> {
        if literals.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        Ok(Clause { kind, literals })
    }

    pub fn or(literals: Vec<Literal>) -> Result<Clause, FormulaError> {
        Clause::new(ClauseKind::Or, literals)
    }

    pub fn xor(literals: Vec<Literal>) -> Result<Clause, FormulaError> {
        Clause::new(ClauseKind::Xor, literals)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("empty clauses are not representable")]
    EmptyClause,
    #[error("literal references variable {variable} but the formula has {num_vars} variable(s)")]
    VariableOutOfRange { variable: u32, num_vars: u32 },
}

/// A conjunction of clauses over variables 1..=num_vars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Formula, FormulaError> {
        for clause in &clauses {
            for lit in clause.literals() {
                if lit.variable == 0 || lit.variable > num_vars {
                    return Err(FormulaError::VariableOutOfRange {
                        variable: lit.variable,
                        num_vars,
                    });
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_pure_xor(&self) -> bool {
        self.clauses.iter().all(|c| c.kind == ClauseKind::Xor)
    }

    pub fn is_pure_or(&self) -> bool {
        self.clauses.iter().all(|c| c.kind == ClauseKind::Or)
    }

    /// True when every clause is a disjunction of at most two literals.
    pub fn is_two_sat(&self) -> bool {
        self.is_pure_or() && self.clauses.iter().all(|c| c.len() <= 2)
    }
}
