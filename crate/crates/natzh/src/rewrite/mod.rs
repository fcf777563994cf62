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

//! The catalogue of sound local rewrites.
//!
//! Every rule comes as a `find_*` matcher returning candidate sites and
//! an `apply_*` that validates the site and rewrites in place, returning
//! a [`RewriteStep`] for the trace. A failed match never mutates the
//! diagram. Rules are hard-coded graph procedures: every left-hand side
//! in the catalogue is star- or edge-shaped, so generic subgraph matching
//! would buy nothing.
//!
//! Each rule is either ℕ-valid (contraction over the naturals is
//! unchanged, hence over the booleans too) or 𝔹-only (only the projected
//! value survives). The two 𝔹-only rules are exactly the resolution-style
//! eliminations that drop the counting correction.

mod basic;
mod elim;
mod harness;
mod tidy;

pub use basic::{
    apply_bialgebra_zx, apply_collapse_binary_x, apply_double_negation, apply_empty_h0,
    apply_fuse_x, apply_fuse_z, apply_hopf_zx, apply_loop_z, apply_loop_zero, apply_loop_two,
    apply_not_copy, apply_scalarize_arity0, find_bialgebra_zx, find_collapse_binary_x,
    find_double_negation, find_empty_h0, find_fuse_x, find_fuse_z, find_hopf_zx, find_loop_z,
    find_loop_zero, find_loop_two, find_not_copy, find_scalarize_arity0,
};
pub use elim::{
    apply_elim_var_2sat, apply_elim_var_sat, apply_elim_var_sharp2sat, apply_elim_var_sharpsat,
    elim_site_arities, find_elim_var_general, find_elim_var_two, ElimFanout,
};
pub use harness::{verify_rule, Counterexample, RuleReport};
pub use tidy::{
    apply_dedup_parallel_h0, apply_merge_duplicate_literal, apply_tautology_h0,
    apply_unit_propagate, find_dedup_parallel_h0, find_h0_double_legs,
    find_merge_duplicate_literal, find_tautology_h0, find_unit_propagate,
};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{EdgeId, NodeId};
use crate::semiring::Natural;

/// Every rewrite rule in the catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    FuseZ,
    FuseX,
    NotCopy,
    DoubleNegation,
    LoopZero,
    LoopTwo,
    LoopZ,
    HopfZX,
    CollapseBinaryX,
    BialgebraZX,
    DedupParallelH0,
    TautologyH0,
    MergeDuplicateLiteral,
    UnitPropagate,
    EmptyH0,
    ScalarizeArity0,
    ElimVarSharp2Sat,
    ElimVar2Sat,
    ElimVarSharpSat,
    ElimVarSat,
}

impl RuleId {
    pub const ALL: [RuleId; 20] = [
        RuleId::FuseZ,
        RuleId::FuseX,
        RuleId::NotCopy,
        RuleId::DoubleNegation,
        RuleId::LoopZero,
        RuleId::LoopTwo,
        RuleId::LoopZ,
        RuleId::HopfZX,
        RuleId::CollapseBinaryX,
        RuleId::BialgebraZX,
        RuleId::DedupParallelH0,
        RuleId::TautologyH0,
        RuleId::MergeDuplicateLiteral,
        RuleId::UnitPropagate,
        RuleId::EmptyH0,
        RuleId::ScalarizeArity0,
        RuleId::ElimVarSharp2Sat,
        RuleId::ElimVar2Sat,
        RuleId::ElimVarSharpSat,
        RuleId::ElimVarSat,
    ];

    /// True when the rule preserves contraction over ℕ on every matching
    /// site. The remaining rules preserve only the boolean projection.
    pub fn nat_valid(self) -> bool {
        !matches!(self, RuleId::ElimVar2Sat | RuleId::ElimVarSat)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::FuseZ => "fuse_z",
            RuleId::FuseX => "fuse_x",
            RuleId::NotCopy => "not_copy",
            RuleId::DoubleNegation => "double_negation",
            RuleId::LoopZero => "loop_zero",
            RuleId::LoopTwo => "loop_two",
            RuleId::LoopZ => "loop_z",
            RuleId::HopfZX => "hopf_zx",
            RuleId::CollapseBinaryX => "collapse_binary_x",
            RuleId::BialgebraZX => "bialgebra_zx",
            RuleId::DedupParallelH0 => "dedup_parallel_h0",
            RuleId::TautologyH0 => "tautology_h0",
            RuleId::MergeDuplicateLiteral => "merge_duplicate_literal",
            RuleId::UnitPropagate => "unit_propagate",
            RuleId::EmptyH0 => "empty_h0",
            RuleId::ScalarizeArity0 => "scalarize_arity0",
            RuleId::ElimVarSharp2Sat => "elim_var_sharp2sat",
            RuleId::ElimVar2Sat => "elim_var_2sat",
            RuleId::ElimVarSharpSat => "elim_var_sharpsat",
            RuleId::ElimVarSat => "elim_var_sat",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One applied rewrite: which rule fired, what it deleted, what it
/// created, and the factor it multiplied onto the diagram scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub consumed_nodes: Vec<NodeId>,
    pub consumed_edges: Vec<EdgeId>,
    pub produced_nodes: Vec<NodeId>,
    pub produced_edges: Vec<EdgeId>,
    pub scalar_factor: Natural,
}

impl RewriteStep {
    pub(crate) fn new(rule: RuleId) -> RewriteStep {
        RewriteStep {
            rule,
            consumed_nodes: Vec::new(),
            consumed_edges: Vec::new(),
            produced_nodes: Vec::new(),
            produced_edges: Vec::new(),
            scalar_factor: Natural::one(),
        }
    }

    /// One line of the trace export.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            rule: &'a str,
            consumed: Vec<String>,
            produced: Vec<String>,
            scalar_factor: String,
        }
        let fmt = |nodes: &[NodeId], edges: &[EdgeId]| {
            nodes
                .iter()
                .map(ToString::to_string)
                .chain(edges.iter().map(ToString::to_string))
                .collect()
        };
        serde_json::to_string(&Line {
            rule: self.rule.name(),
            consumed: fmt(&self.consumed_nodes, &self.consumed_edges),
            produced: fmt(&self.produced_nodes, &self.produced_edges),
            scalar_factor: self.scalar_factor.to_decimal(),
        })
        .expect("trace line serializes")
    }
}

/// Replays a trace's scalar bookkeeping: the product of all step factors
/// times the starting scalar must be the final scalar.
pub fn replay_scalar(initial: &Natural, steps: &[RewriteStep]) -> Natural {
    steps
        .iter()
        .fold(initial.clone(), |acc, s| acc * &s.scalar_factor)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule {rule} does not match the given site: {reason}")]
    SiteMismatch { rule: RuleId, reason: String },
}

pub(crate) fn mismatch(rule: RuleId, reason: impl Into<String>) -> RewriteError {
    RewriteError::SiteMismatch { rule, reason: reason.into() }
}
