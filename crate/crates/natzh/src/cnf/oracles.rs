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

//! Classical oracles, independent of the diagram machinery.
//!
//! These take the textbook routes — truth-table enumeration, Gaussian
//! elimination over GF(2), and the implication-graph criterion — so that
//! diagram contraction and the rewrite strategies have something to be
//! checked against that shares no code with them.

use thiserror::Error;

use super::{ClauseKind, Formula};
use crate::semiring::{pow2, Natural};

/// Variable cap for truth-table enumeration.
pub const DEFAULT_BRUTE_FORCE_LIMIT: u32 = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { n: u32, limit: u32 },
    #[error("clause {index} is not an XOR clause")]
    NonXorClause { index: usize },
    #[error("clause {index} is not an OR clause")]
    NonOrClause { index: usize },
    #[error("clause {index} has {len} literals, more than the 2 allowed here")]
    ClauseTooWide { index: usize, len: usize },
}

/// Exact model count by truth-table enumeration, capped at the default
/// variable limit.
pub fn brute_force_count(f: &Formula) -> Result<Natural, OracleError> {
    brute_force_count_with_limit(f, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Exact model count by truth-table enumeration with an explicit cap.
pub fn brute_force_count_with_limit(f: &Formula, limit: u32) -> Result<Natural, OracleError> {
    let n = f.num_vars();
    if n > limit || n > 62 {
        return Err(OracleError::TooManyVariables { n, limit: limit.min(62) });
    }
    // per clause: bit masks over the assignment word
    struct Gate {
        kind: ClauseKind,
        pos: u64,
        neg: u64,
        toggle: u64,
        rhs: bool,
    }
    let gates: Vec<Gate> = f
        .clauses()
        .iter()
        .map(|c| {
            let mut pos = 0u64;
            let mut neg = 0u64;
            let mut toggle = 0u64;
            let mut negations = 0usize;
            for lit in c.literals() {
                let bit = 1u64 << (lit.variable - 1);
                if lit.negated {
                    neg |= bit;
                    negations += 1;
                } else {
                    pos |= bit;
                }
                toggle ^= bit;
            }
            Gate { kind: c.kind, pos, neg, toggle, rhs: negations % 2 == 0 }
        })
        .collect();

    let mut count = 0u64;
    let mut big = Natural::zero();
    for assignment in 0u64..(1u64 << n) {
        let ok = gates.iter().all(|g| match g.kind {
            ClauseKind::Or => (assignment & g.pos) != 0 || (!assignment & g.neg) != 0,
            ClauseKind::Xor => ((assignment & g.toggle).count_ones() % 2 == 1) == g.rhs,
        });
        if ok {
            count += 1;
            if count == u64::MAX {
                big += &Natural::from(count);
                count = 0;
            }
        }
    }
    big += &Natural::from(count);
    Ok(big)
}

/// Exact count of a pure-XOR system by Gaussian elimination over GF(2):
/// 0 when inconsistent, otherwise 2^(n − rank).
pub fn gauss_count_xor(f: &Formula) -> Result<Natural, OracleError> {
    let n = f.num_vars() as usize;
    let words = n.div_ceil(64);
    // each row: coefficient bits then an rhs bit
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::with_capacity(f.clauses().len());
    for (index, clause) in f.clauses().iter().enumerate() {
        if clause.kind != ClauseKind::Xor {
            return Err(OracleError::NonXorClause { index });
        }
        let mut coeffs = vec![0u64; words];
        let mut rhs = true;
        for lit in clause.literals() {
            let v = (lit.variable - 1) as usize;
            coeffs[v / 64] ^= 1u64 << (v % 64);
            if lit.negated {
                rhs = !rhs;
            }
        }
        rows.push((coeffs, rhs));
    }

    let mut rank = 0usize;
    for col in 0..n {
        let (w, b) = (col / 64, col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].0[w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pivot_row, pivot_rhs) = rows[rank].clone();
        for (r, (coeffs, rhs)) in rows.iter_mut().enumerate() {
            if r != rank && coeffs[w] >> b & 1 == 1 {
                for (c, p) in coeffs.iter_mut().zip(&pivot_row) {
                    *c ^= p;
                }
                *rhs ^= pivot_rhs;
            }
        }
        rank += 1;
    }
    for (coeffs, rhs) in &rows[rank..] {
        debug_assert!(coeffs.iter().all(|&w| w == 0));
        if *rhs {
            return Ok(Natural::zero());
        }
    }
    Ok(pow2((n - rank) as u64))
}

/// 2SAT decision by the implication-graph strongly-connected-components
/// criterion: satisfiable iff no variable shares a component with its
/// negation.
pub fn two_sat_oracle(f: &Formula) -> Result<bool, OracleError> {
    let n = f.num_vars() as usize;
    // vertex 2v for the positive literal of variable v+1, 2v+1 for its negation
    let lit_vertex = |variable: u32, negated: bool| -> usize {
        2 * (variable as usize - 1) + usize::from(negated)
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for (index, clause) in f.clauses().iter().enumerate() {
        if clause.kind != ClauseKind::Or {
            return Err(OracleError::NonOrClause { index });
        }
        match clause.literals() {
            [a] => {
                adj[lit_vertex(a.variable, !a.negated)].push(lit_vertex(a.variable, a.negated));
            }
            [a, b] => {
                adj[lit_vertex(a.variable, !a.negated)].push(lit_vertex(b.variable, b.negated));
                adj[lit_vertex(b.variable, !b.negated)].push(lit_vertex(a.variable, a.negated));
            }
            wide => return Err(OracleError::ClauseTooWide { index, len: wide.len() }),
        }
    }

    let comp = tarjan_scc(&adj);
    Ok((0..n).all(|v| comp[2 * v] != comp[2 * v + 1]))
}

// Iterative Tarjan; returns the component index of every vertex.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0usize;
    let mut next_comp = 0usize;

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSET {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }
    comp
}
