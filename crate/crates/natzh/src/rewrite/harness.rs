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

//! Randomized per-rule soundness checks.
//!
//! For each rule the harness plants its left-hand pattern inside a
//! random closed context, applies the rule, and compares the reference
//! contraction before and after. ℕ-valid rules must agree exactly over
//! the naturals; 𝔹-only rules must agree after projection, and the
//! harness additionally counts the trials where the natural values
//! drifted apart — for the resolution rules such witnesses are expected,
//! since forgetting the counting correction is precisely what makes them
//! 𝔹-only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    apply_bialgebra_zx, apply_collapse_binary_x, apply_dedup_parallel_h0, apply_double_negation,
    apply_elim_var_2sat, apply_elim_var_sat, apply_elim_var_sharp2sat, apply_elim_var_sharpsat,
    apply_empty_h0, apply_fuse_x, apply_fuse_z, apply_hopf_zx, apply_loop_z, apply_loop_zero, apply_loop_two,
    apply_merge_duplicate_literal, apply_not_copy, apply_scalarize_arity0, apply_tautology_h0,
    apply_unit_propagate, RewriteError, RewriteStep, RuleId,
};
use crate::diagram::{Diagram, EdgeId, NodeId, NodeKind};
use crate::semiring::{project, Natural};

/// A trial on which the rule changed the checked value.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub trial: usize,
    /// The offending diagram, verbatim, before the rewrite.
    pub diagram: String,
    pub detail: String,
}

/// Outcome of `verify_rule`.
#[derive(Debug, Clone)]
pub struct RuleReport {
    pub rule: RuleId,
    pub trials: usize,
    /// Violations on the rule's own carrier (ℕ for ℕ-valid rules, 𝔹 for
    /// the rest). Must stay empty.
    pub failures: Vec<Counterexample>,
    /// For 𝔹-only rules, trials where the ℕ value changed although the
    /// projection survived. Expected to be nonzero for honest 𝔹-only
    /// rules; always zero for ℕ-valid ones.
    pub nat_gap_witnesses: usize,
}

impl RuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Site {
    Node(NodeId),
    Edge(EdgeId),
    NodePair(NodeId, NodeId),
    EdgePair(EdgeId, EdgeId),
    BoxLegs(NodeId, EdgeId, EdgeId),
}

fn apply_at(d: &mut Diagram, rule: RuleId, site: &Site) -> Result<RewriteStep, RewriteError> {
    match (rule, site) {
        (RuleId::FuseZ, Site::NodePair(a, b)) => apply_fuse_z(d, *a, *b),
        (RuleId::FuseX, Site::NodePair(a, b)) => apply_fuse_x(d, *a, *b),
        (RuleId::NotCopy, Site::Node(n)) => apply_not_copy(d, *n),
        (RuleId::DoubleNegation, Site::Edge(e)) => apply_double_negation(d, *e),
        (RuleId::LoopZero, Site::Edge(e)) => apply_loop_zero(d, *e),
        (RuleId::LoopZ, Site::Edge(e)) => apply_loop_z(d, *e),
        (RuleId::LoopTwo, Site::Edge(e)) => apply_loop_two(d, *e),
        (RuleId::HopfZX, Site::EdgePair(a, b)) => apply_hopf_zx(d, *a, *b),
        (RuleId::CollapseBinaryX, Site::Node(n)) => apply_collapse_binary_x(d, *n),
        (RuleId::BialgebraZX, Site::Edge(e)) => apply_bialgebra_zx(d, *e),
        (RuleId::DedupParallelH0, Site::NodePair(a, b)) => apply_dedup_parallel_h0(d, *a, *b),
        (RuleId::TautologyH0, Site::BoxLegs(b, e1, e2)) => apply_tautology_h0(d, *b, *e1, *e2),
        (RuleId::MergeDuplicateLiteral, Site::BoxLegs(b, e1, e2)) => {
            apply_merge_duplicate_literal(d, *b, *e1, *e2)
        }
        (RuleId::UnitPropagate, Site::Node(n)) => apply_unit_propagate(d, *n),
        (RuleId::EmptyH0, Site::Node(n)) => apply_empty_h0(d, *n),
        (RuleId::ScalarizeArity0, Site::Node(n)) => apply_scalarize_arity0(d, *n),
        (RuleId::ElimVarSharp2Sat, Site::Node(n)) => apply_elim_var_sharp2sat(d, *n),
        (RuleId::ElimVar2Sat, Site::Node(n)) => apply_elim_var_2sat(d, *n),
        (RuleId::ElimVarSharpSat, Site::Node(n)) => apply_elim_var_sharpsat(d, *n),
        (RuleId::ElimVarSat, Site::Node(n)) => apply_elim_var_sat(d, *n),
        _ => unreachable!("planter and dispatcher agree on site shapes"),
    }
}

struct Planter<'r> {
    d: Diagram,
    rng: &'r mut ChaCha8Rng,
    max_edges: usize,
}

impl<'r> Planter<'r> {
    fn new(rng: &'r mut ChaCha8Rng, max_edges: usize) -> Self {
        Planter { d: Diagram::new(), rng, max_edges }
    }

    fn random_kind(&mut self) -> NodeKind {
        match self.rng.gen_range(0..4) {
            0 => NodeKind::ZSpider,
            1 => NodeKind::XSpider(self.rng.gen_bool(0.5)),
            2 => NodeKind::h0(),
            _ => NodeKind::HBox(Natural::from(self.rng.gen_range(0u32..=3))),
        }
    }

    fn headroom(&self) -> usize {
        self.max_edges.saturating_sub(self.d.edge_count())
    }

    /// Random extra structure over `pool`, avoiding `frozen` nodes whose
    /// arity the matcher depends on.
    fn free_context(&mut self, pool: &[NodeId], frozen: &[NodeId]) {
        let mut pool: Vec<NodeId> =
            pool.iter().copied().filter(|n| !frozen.contains(n)).collect();
        for _ in 0..self.rng.gen_range(0..3) {
            let kind = self.random_kind();
            pool.push(self.d.add_node(kind));
        }
        if pool.is_empty() {
            return;
        }
        let extra = self.rng.gen_range(0..=self.headroom());
        for _ in 0..extra {
            let a = pool[self.rng.gen_range(0..pool.len())];
            let b = pool[self.rng.gen_range(0..pool.len())];
            let negated = self.rng.gen_bool(0.3);
            self.d.add_edge(a, b, negated);
        }
    }

    /// Random extra clauses over variable spiders, for the rules whose
    /// matchers demand CNF-shaped neighborhoods.
    fn clause_context(&mut self, vars: &[NodeId]) {
        if vars.is_empty() {
            return;
        }
        while self.headroom() > 0 && self.rng.gen_bool(0.7) {
            let arity = self.rng.gen_range(1..=3.min(self.headroom()));
            let gate = if self.rng.gen_bool(0.7) {
                self.d.add_node(NodeKind::h0())
            } else {
                self.d.add_node(NodeKind::XSpider(self.rng.gen_bool(0.5)))
            };
            for _ in 0..arity {
                let v = vars[self.rng.gen_range(0..vars.len())];
                let negated = self.rng.gen_bool(0.5);
                self.d.add_edge(v, gate, negated);
            }
        }
    }

    fn vars(&mut self, count: usize) -> Vec<NodeId> {
        (0..count).map(|_| self.d.add_node(NodeKind::ZSpider)).collect()
    }

    /// An arity-2 H(0) box between the spider and a fresh leg on `var`.
    fn binary_box(&mut self, z: NodeId, z_negated: bool, var: NodeId) -> NodeId {
        let b = self.d.add_node(NodeKind::h0());
        self.d.add_edge(z, b, z_negated);
        self.d.add_edge(var, b, self.rng.gen_bool(0.5));
        b
    }
}

fn plant(rule: RuleId, rng: &mut ChaCha8Rng, max_edges: usize) -> (Diagram, Site) {
    let mut p = Planter::new(rng, max_edges);
    match rule {
        RuleId::FuseZ => {
            let a = p.d.add_node(NodeKind::ZSpider);
            let b = p.d.add_node(NodeKind::ZSpider);
            p.d.add_edge(a, b, false);
            for _ in 0..p.rng.gen_range(0..2) {
                let negated = p.rng.gen_bool(0.5);
                p.d.add_edge(a, b, negated);
            }
            p.free_context(&[a, b], &[]);
            (p.d, Site::NodePair(a, b))
        }
        RuleId::FuseX => {
            let pa = p.rng.gen_bool(0.5);
            let pb = p.rng.gen_bool(0.5);
            let a = p.d.add_node(NodeKind::XSpider(pa));
            let b = p.d.add_node(NodeKind::XSpider(pb));
            let negated = p.rng.gen_bool(0.5);
            p.d.add_edge(a, b, negated);
            for _ in 0..p.rng.gen_range(0..2) {
                let negated = p.rng.gen_bool(0.5);
                p.d.add_edge(a, b, negated);
            }
            p.free_context(&[a, b], &[]);
            (p.d, Site::NodePair(a, b))
        }
        RuleId::NotCopy => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let peer = p.random_kind();
            let peer = p.d.add_node(peer);
            p.d.add_edge(z, peer, true);
            p.free_context(&[z, peer], &[]);
            (p.d, Site::Node(z))
        }
        RuleId::DoubleNegation => {
            let a = p.random_kind();
            let a = p.d.add_node(a);
            let b = p.random_kind();
            let b = p.d.add_node(b);
            let negated = p.rng.gen_bool(0.5);
            let e = p.d.add_edge(a, b, negated);
            p.free_context(&[a, b], &[]);
            (p.d, Site::Edge(e))
        }
        RuleId::LoopZero | RuleId::LoopTwo => {
            let parity = p.rng.gen_bool(0.5);
            let x = p.d.add_node(NodeKind::XSpider(parity));
            let e = p.d.add_edge(x, x, rule == RuleId::LoopZero);
            p.free_context(&[x], &[]);
            (p.d, Site::Edge(e))
        }
        RuleId::LoopZ => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let negated = p.rng.gen_bool(0.5);
            let e = p.d.add_edge(z, z, negated);
            p.free_context(&[z], &[]);
            (p.d, Site::Edge(e))
        }
        RuleId::HopfZX => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let parity = p.rng.gen_bool(0.5);
            let x = p.d.add_node(NodeKind::XSpider(parity));
            let n1 = p.rng.gen_bool(0.5);
            let n2 = p.rng.gen_bool(0.5);
            let e1 = p.d.add_edge(z, x, n1);
            let e2 = p.d.add_edge(x, z, n2);
            p.free_context(&[z, x], &[]);
            (p.d, Site::EdgePair(e1, e2))
        }
        RuleId::CollapseBinaryX => {
            let parity = p.rng.gen_bool(0.5);
            let x = p.d.add_node(NodeKind::XSpider(parity));
            let ka = p.random_kind();
            let a = p.d.add_node(ka);
            let b = if p.rng.gen_bool(0.8) {
                let kb = p.random_kind();
                p.d.add_node(kb)
            } else {
                a
            };
            let n1 = p.rng.gen_bool(0.5);
            let n2 = p.rng.gen_bool(0.5);
            p.d.add_edge(a, x, n1);
            p.d.add_edge(x, b, n2);
            p.free_context(&[a, b], &[x]);
            (p.d, Site::Node(x))
        }
        RuleId::BialgebraZX => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let parity = p.rng.gen_bool(0.5);
            let x = p.d.add_node(NodeKind::XSpider(parity));
            let e = p.d.add_edge(z, x, false);
            // a few legs on each side, into a small shared pool
            let mut pool = Vec::new();
            for _ in 0..p.rng.gen_range(1..=3) {
                let k = p.random_kind();
                pool.push(p.d.add_node(k));
            }
            for _ in 0..p.rng.gen_range(0..=2) {
                let t = pool[p.rng.gen_range(0..pool.len())];
                let negated = p.rng.gen_bool(0.3);
                p.d.add_edge(z, t, negated);
            }
            for _ in 0..p.rng.gen_range(0..=2) {
                let t = pool[p.rng.gen_range(0..pool.len())];
                let negated = p.rng.gen_bool(0.3);
                p.d.add_edge(x, t, negated);
            }
            p.free_context(&pool, &[z, x]);
            (p.d, Site::Edge(e))
        }
        RuleId::ScalarizeArity0 => {
            let kind = p.random_kind();
            let n = p.d.add_node(kind);
            let others = p.vars(2);
            p.free_context(&others, &[n]);
            (p.d, Site::Node(n))
        }
        RuleId::EmptyH0 => {
            let n = p.d.add_node(NodeKind::h0());
            let others = p.vars(2);
            p.free_context(&others, &[n]);
            (p.d, Site::Node(n))
        }
        RuleId::DedupParallelH0 => {
            let count = p.rng.gen_range(1..=3);
            let vars = p.vars(count);
            let arity = p.rng.gen_range(1..=3);
            let legs: Vec<(NodeId, bool)> = (0..arity)
                .map(|_| {
                    (vars[p.rng.gen_range(0..vars.len())], p.rng.gen_bool(0.5))
                })
                .collect();
            let b1 = p.d.add_node(NodeKind::h0());
            let b2 = p.d.add_node(NodeKind::h0());
            for &(v, negated) in &legs {
                p.d.add_edge(v, b1, negated);
                p.d.add_edge(v, b2, negated);
            }
            p.clause_context(&vars);
            (p.d, Site::NodePair(b1, b2))
        }
        RuleId::TautologyH0 | RuleId::MergeDuplicateLiteral => {
            let count = p.rng.gen_range(1..=3);
            let vars = p.vars(count);
            let w = vars[0];
            let b = p.d.add_node(NodeKind::h0());
            let n1 = p.rng.gen_bool(0.5);
            let n2 = if rule == RuleId::TautologyH0 { !n1 } else { n1 };
            let e1 = p.d.add_edge(w, b, n1);
            let e2 = p.d.add_edge(w, b, n2);
            for _ in 0..p.rng.gen_range(0..=2) {
                let v = vars[p.rng.gen_range(0..vars.len())];
                let negated = p.rng.gen_bool(0.5);
                p.d.add_edge(v, b, negated);
            }
            p.clause_context(&vars);
            (p.d, Site::BoxLegs(b, e1, e2))
        }
        RuleId::UnitPropagate => {
            let count = p.rng.gen_range(2..=3);
            let vars = p.vars(count);
            let z = vars[0];
            let unit = if p.rng.gen_bool(0.5) {
                p.d.add_node(NodeKind::h0())
            } else {
                p.d.add_node(NodeKind::XSpider(p.rng.gen_bool(0.5)))
            };
            let negated = p.rng.gen_bool(0.5);
            p.d.add_edge(z, unit, negated);
            for _ in 0..p.rng.gen_range(1..=2) {
                let gate = if p.rng.gen_bool(0.7) {
                    p.d.add_node(NodeKind::h0())
                } else {
                    p.d.add_node(NodeKind::XSpider(p.rng.gen_bool(0.5)))
                };
                let negated = p.rng.gen_bool(0.5);
                p.d.add_edge(z, gate, negated);
                for _ in 0..p.rng.gen_range(0..=2) {
                    let v = vars[1 + p.rng.gen_range(0..vars.len() - 1)];
                    let negated = p.rng.gen_bool(0.5);
                    p.d.add_edge(v, gate, negated);
                }
            }
            p.clause_context(&vars[1..]);
            (p.d, Site::Node(unit))
        }
        RuleId::ElimVarSharp2Sat | RuleId::ElimVar2Sat => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let count = p.rng.gen_range(1..=3);
            let vars = p.vars(count);
            let m = p.rng.gen_range(0..=2);
            let n = p.rng.gen_range(0..=2);
            for i in 0..(m + n) {
                let v = vars[p.rng.gen_range(0..vars.len())];
                p.binary_box(z, i < m, v);
            }
            p.clause_context(&vars);
            (p.d, Site::Node(z))
        }
        RuleId::ElimVarSharpSat | RuleId::ElimVarSat => {
            let z = p.d.add_node(NodeKind::ZSpider);
            let count = p.rng.gen_range(1..=3);
            let vars = p.vars(count);
            let m = p.rng.gen_range(0..=2);
            let n = p.rng.gen_range(0..=2);
            for i in 0..(m + n) {
                let b = p.d.add_node(NodeKind::h0());
                p.d.add_edge(z, b, i < m);
                for _ in 0..p.rng.gen_range(0..=2) {
                    let v = vars[p.rng.gen_range(0..vars.len())];
                    let negated = p.rng.gen_bool(0.5);
                    p.d.add_edge(v, b, negated);
                }
            }
            p.clause_context(&vars);
            (p.d, Site::Node(z))
        }
    }
}

/// Plants `trials` random closed contexts for `rule`, applies it, and
/// checks contraction is preserved on the rule's validity carrier.
pub fn verify_rule(rule: RuleId, trials: usize, wire_limit: usize, seed: u64) -> RuleReport {
    let mut report =
        RuleReport { rule, trials, failures: Vec::new(), nat_gap_witnesses: 0 };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9));
        let budget = rng.gen_range(4..=wire_limit.max(4));
        let (mut d, site) = plant(rule, &mut rng, budget);
        debug_assert!(d.is_closed());
        let json_before = d.to_json();
        let nat_before = d
            .contract_scalar(wire_limit.max(d.edge_count()))
            .expect("planted diagram fits");
        let step = match apply_at(&mut d, rule, &site) {
            Ok(step) => step,
            Err(err) => {
                report.failures.push(Counterexample {
                    trial,
                    diagram: json_before,
                    detail: format!("planted site rejected: {err}"),
                });
                continue;
            }
        };
        let _ = step;
        let nat_after = d
            .contract_scalar(wire_limit.max(d.edge_count()))
            .expect("rewritten diagram fits");
        if rule.nat_valid() {
            if nat_before != nat_after {
                report.failures.push(Counterexample {
                    trial,
                    diagram: json_before,
                    detail: format!("ℕ value changed: {nat_before} → {nat_after}"),
                });
            }
        } else {
            if project(&nat_before) != project(&nat_after) {
                report.failures.push(Counterexample {
                    trial,
                    diagram: json_before,
                    detail: format!(
                        "𝔹 value changed: {} → {}",
                        project(&nat_before),
                        project(&nat_after)
                    ),
                });
            }
            if nat_before != nat_after {
                report.nat_gap_witnesses += 1;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_holds_on_its_carrier() {
        for rule in RuleId::ALL {
            let report = verify_rule(rule, 60, 12, 0xbead);
            assert!(
                report.passed(),
                "rule {} failed: {:?}",
                rule,
                report.failures.first().map(|c| (&c.detail, &c.diagram))
            );
            if rule.nat_valid() {
                assert_eq!(report.nat_gap_witnesses, 0);
            }
        }
    }

    #[test]
    fn resolution_rules_show_the_counting_gap() {
        for rule in [RuleId::ElimVar2Sat, RuleId::ElimVarSat] {
            let report = verify_rule(rule, 100, 12, 0xfeed);
            assert!(report.passed());
            assert!(
                report.nat_gap_witnesses > 0,
                "rule {rule} never drifted over ℕ in 100 trials"
            );
        }
    }
}
