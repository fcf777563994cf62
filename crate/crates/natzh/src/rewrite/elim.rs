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

//! Variable elimination: killing a Z-spider whose every leg enters a
//! distinct H(0) box.
//!
//! The boxes split into those reached through a plain leg and those
//! reached through a negated one. All four rules replace the spider and
//! its boxes by one resolvent box per cross pair, preserving outer-leg
//! parities. The counting versions add a correction: for arity-2 boxes a
//! single H(2) box on negated copies of the outer wires, in general a
//! fresh spider fanning into one H(0) box per former box, wired
//! alongside its outer legs. Either correction contributes 1 + [every
//! plain box internally satisfied]·[every negated box internally
//! satisfied], which is exactly the factor resolution forgets. The
//! decision versions drop the correction and are sound only after
//! projection.

use super::{mismatch, RewriteError, RewriteStep, RuleId};
use crate::diagram::{Diagram, EdgeId, NodeId, NodeKind};
use crate::semiring::Natural;

struct OuterLeg {
    var: NodeId,
    edge: EdgeId,
    negated: bool,
}

struct SiteBox {
    box_id: NodeId,
    z_edge: EdgeId,
    outer: Vec<OuterLeg>,
}

struct ElimSite {
    plain: Vec<SiteBox>,
    negated: Vec<SiteBox>,
}

/// Shape summary of a potential elimination site, for scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElimFanout {
    pub plain: usize,
    pub negated: usize,
    pub max_plain_outer: usize,
    pub max_negated_outer: usize,
    pub all_arity_two: bool,
}

impl ElimFanout {
    pub fn resolvent_count(&self) -> usize {
        self.plain * self.negated
    }

    /// Largest box arity the counting elimination would create,
    /// including the correction gadget.
    pub fn max_produced_arity(&self, arity_two_rule: bool) -> usize {
        let resolvent = if self.resolvent_count() > 0 {
            self.max_plain_outer + self.max_negated_outer
        } else {
            0
        };
        let correction = if arity_two_rule {
            self.plain + self.negated
        } else {
            1 + self.max_plain_outer.max(self.max_negated_outer)
        };
        resolvent.max(correction)
    }
}

fn analyze(d: &Diagram, z: NodeId, arity_two: bool, rule: RuleId) -> Result<ElimSite, RewriteError> {
    if !d.node(z).is_some_and(NodeKind::is_z) {
        return Err(mismatch(rule, format!("{z} is not a Z-spider")));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut plain = Vec::new();
    let mut negated = Vec::new();
    for &z_edge in d.incident(z) {
        let edge = d.edge(z_edge).expect("edge exists");
        if edge.is_loop() {
            return Err(mismatch(rule, "spider has a self-loop"));
        }
        let box_id = edge.other(z);
        if !d.node(box_id).is_some_and(NodeKind::is_h0) {
            return Err(mismatch(rule, format!("neighbor {box_id} is not an H(0) box")));
        }
        if !seen.insert(box_id) {
            return Err(mismatch(rule, "two legs reach the same box; tidy first"));
        }
        if arity_two && d.degree(box_id) != 2 {
            return Err(mismatch(rule, "box arity is not 2"));
        }
        let mut outer = Vec::new();
        for &e in d.incident(box_id) {
            if e == z_edge {
                continue;
            }
            let leg = d.edge(e).expect("edge exists");
            if leg.is_loop() {
                return Err(mismatch(rule, "box has a self-loop"));
            }
            let var = leg.other(box_id);
            if var == z {
                return Err(mismatch(rule, "two legs reach the same box; tidy first"));
            }
            if !d.node(var).is_some_and(NodeKind::is_z) {
                return Err(mismatch(rule, "box leg does not reach a Z-spider"));
            }
            outer.push(OuterLeg { var, edge: e, negated: leg.negated });
        }
        let site_box = SiteBox { box_id, z_edge, outer };
        if edge.negated {
            negated.push(site_box);
        } else {
            plain.push(site_box);
        }
    }
    Ok(ElimSite { plain, negated })
}

/// Shape of the elimination site at `z`, or None when the rules do not
/// apply there.
pub fn elim_site_arities(d: &Diagram, z: NodeId) -> Option<ElimFanout> {
    let site = analyze(d, z, false, RuleId::ElimVarSharpSat).ok()?;
    let max_outer = |boxes: &[SiteBox]| boxes.iter().map(|b| b.outer.len()).max().unwrap_or(0);
    let all_two = site
        .plain
        .iter()
        .chain(&site.negated)
        .all(|b| b.outer.len() == 1);
    Some(ElimFanout {
        plain: site.plain.len(),
        negated: site.negated.len(),
        max_plain_outer: max_outer(&site.plain),
        max_negated_outer: max_outer(&site.negated),
        all_arity_two: all_two,
    })
}

/// Z-spiders whose every leg enters a distinct arity-2 H(0) box.
pub fn find_elim_var_two(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, kind)| kind.is_z() && analyze(d, id, true, RuleId::ElimVar2Sat).is_ok())
        .map(|(id, _)| id)
        .collect()
}

/// Z-spiders whose every leg enters a distinct H(0) box of any arity.
pub fn find_elim_var_general(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, kind)| kind.is_z() && analyze(d, id, false, RuleId::ElimVarSat).is_ok())
        .map(|(id, _)| id)
        .collect()
}

fn delete_site(d: &mut Diagram, z: NodeId, site: &ElimSite, step: &mut RewriteStep) {
    for b in site.plain.iter().chain(&site.negated) {
        step.consumed_edges.push(b.z_edge);
        d.remove_edge(b.z_edge).expect("edge exists");
        for leg in &b.outer {
            step.consumed_edges.push(leg.edge);
            d.remove_edge(leg.edge).expect("edge exists");
        }
        d.remove_node(b.box_id).expect("now isolated");
        step.consumed_nodes.push(b.box_id);
    }
    d.remove_node(z).expect("now isolated");
    step.consumed_nodes.push(z);
}

fn add_resolvents(d: &mut Diagram, site: &ElimSite, step: &mut RewriteStep) {
    for pi in &site.plain {
        for nj in &site.negated {
            let resolvent = d.add_node(NodeKind::h0());
            step.produced_nodes.push(resolvent);
            for leg in pi.outer.iter().chain(&nj.outer) {
                step.produced_edges.push(d.add_edge(leg.var, resolvent, leg.negated));
            }
        }
    }
}

/// Counting elimination for arity-2 boxes: resolvents plus one H(2) box
/// attached through negated copies of every outer wire.
pub fn apply_elim_var_sharp2sat(d: &mut Diagram, z: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::ElimVarSharp2Sat;
    let site = analyze(d, z, true, rule)?;
    let mut step = RewriteStep::new(rule);
    add_resolvents(d, &site, &mut step);
    let h2 = d.add_node(NodeKind::HBox(Natural::from(2u32)));
    step.produced_nodes.push(h2);
    for b in site.plain.iter().chain(&site.negated) {
        let leg = &b.outer[0];
        step.produced_edges.push(d.add_edge(leg.var, h2, !leg.negated));
    }
    delete_site(d, z, &site, &mut step);
    Ok(step)
}

/// Decision elimination for arity-2 boxes: plain propositional
/// resolution. Sound over 𝔹 only; over ℕ it forgets the factor the H(2)
/// box would carry.
pub fn apply_elim_var_2sat(d: &mut Diagram, z: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::ElimVar2Sat;
    let site = analyze(d, z, true, rule)?;
    let mut step = RewriteStep::new(rule);
    add_resolvents(d, &site, &mut step);
    delete_site(d, z, &site, &mut step);
    Ok(step)
}

/// Counting elimination for boxes of any arity: resolvents plus the
/// general correction gadget (a fresh spider fanning into one fresh H(0)
/// box per former box, each wired alongside that box's outer legs).
pub fn apply_elim_var_sharpsat(d: &mut Diagram, z: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::ElimVarSharpSat;
    let site = analyze(d, z, false, rule)?;
    let mut step = RewriteStep::new(rule);
    add_resolvents(d, &site, &mut step);
    let hub = d.add_node(NodeKind::ZSpider);
    step.produced_nodes.push(hub);
    for b in site.plain.iter().chain(&site.negated) {
        let gadget = d.add_node(NodeKind::h0());
        step.produced_nodes.push(gadget);
        step.produced_edges.push(d.add_edge(hub, gadget, false));
        for leg in &b.outer {
            step.produced_edges.push(d.add_edge(leg.var, gadget, leg.negated));
        }
    }
    delete_site(d, z, &site, &mut step);
    Ok(step)
}

/// Decision elimination for boxes of any arity: resolution alone, the
/// step a Davis–Putnam pass repeats. 𝔹-only.
pub fn apply_elim_var_sat(d: &mut Diagram, z: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::ElimVarSat;
    let site = analyze(d, z, false, rule)?;
    let mut step = RewriteStep::new(rule);
    add_resolvents(d, &site, &mut step);
    delete_site(d, z, &site, &mut step);
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_count, encode, parse_dimacs};
    use crate::semiring::{project, Carrier, Natural};

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    fn scalar_of(d: &Diagram) -> Natural {
        d.contract_scalar(64).unwrap()
    }

    fn bool_of(d: &Diagram) -> bool {
        project(&d.contract(Carrier::Bool, 64).unwrap().coefficients[0])
    }

    fn spider_for_var(d: &Diagram, index: usize) -> NodeId {
        d.nodes().filter(|(_, k)| k.is_z()).nth(index).unwrap().0
    }

    #[test]
    fn isolated_spider_becomes_h2() {
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let step = apply_elim_var_sharp2sat(&mut d, z).unwrap();
        assert_eq!(step.produced_nodes.len(), 1);
        assert_eq!(
            d.node(step.produced_nodes[0]),
            Some(&NodeKind::HBox(nat(2)))
        );
        assert_eq!(scalar_of(&d), nat(2));
    }

    #[test]
    fn sharp2sat_preserves_counts() {
        // (x ∨ y) ∧ (¬x ∨ z) with y, z also constrained a little
        let f = parse_dimacs("p cnf 3 3\n1 2 0\n-1 3 0\n2 3 0\n").unwrap();
        let mut d = encode(&f);
        let expected = brute_force_count(&f).unwrap();
        assert_eq!(scalar_of(&d), expected);
        let x = spider_for_var(&d, 0);
        apply_elim_var_sharp2sat(&mut d, x).unwrap();
        assert_eq!(scalar_of(&d), expected);
    }

    #[test]
    fn twosat_elimination_is_resolution() {
        // (x ∨ y) ∧ (¬x ∨ z) resolves to (y ∨ z)
        let f = parse_dimacs("p cnf 3 2\n1 2 0\n-1 3 0\n").unwrap();
        let mut d = encode(&f);
        let sat = bool_of(&d);
        let x = spider_for_var(&d, 0);
        let step = apply_elim_var_2sat(&mut d, x).unwrap();
        assert_eq!(step.produced_nodes.len(), 1);
        assert_eq!(bool_of(&d), sat);
    }

    #[test]
    fn twosat_elimination_can_change_counts() {
        // single clause (x ∨ y): count 3, but resolution leaves y free
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        let mut d = encode(&f);
        assert_eq!(scalar_of(&d), nat(3));
        let x = spider_for_var(&d, 0);
        apply_elim_var_2sat(&mut d, x).unwrap();
        assert_eq!(bool_of(&d), true);
        assert_ne!(scalar_of(&d), nat(3));
    }

    #[test]
    fn sharpsat_matches_sharp2sat_on_binary_boxes() {
        let f = parse_dimacs("p cnf 3 3\n1 2 0\n-1 3 0\n2 -3 0\n").unwrap();
        let expected = brute_force_count(&f).unwrap();
        let mut via_general = encode(&f);
        let x = spider_for_var(&via_general, 0);
        apply_elim_var_sharpsat(&mut via_general, x).unwrap();
        assert_eq!(scalar_of(&via_general), expected);

        let mut via_two = encode(&f);
        let x = spider_for_var(&via_two, 0);
        apply_elim_var_sharp2sat(&mut via_two, x).unwrap();
        assert_eq!(scalar_of(&via_two), expected);
    }

    #[test]
    fn sharpsat_on_wide_clauses() {
        // (x ∨ y1 ∨ y2) ∧ (¬x ∨ z1) in a small closed context
        let f = parse_dimacs("p cnf 4 3\n1 2 3 0\n-1 4 0\n2 4 0\n").unwrap();
        let mut d = encode(&f);
        let expected = brute_force_count(&f).unwrap();
        let x = spider_for_var(&d, 0);
        apply_elim_var_sharpsat(&mut d, x).unwrap();
        assert_eq!(scalar_of(&d), expected);
    }

    #[test]
    fn sharpsat_one_sided_variable() {
        // x occurs only negated: resolvents vanish, gadget carries it
        let f = parse_dimacs("p cnf 3 2\n-1 2 0\n-1 3 0\n").unwrap();
        let mut d = encode(&f);
        let expected = brute_force_count(&f).unwrap();
        let x = spider_for_var(&d, 0);
        let step = apply_elim_var_sharpsat(&mut d, x).unwrap();
        assert_eq!(scalar_of(&d), expected);
        assert!(step.produced_nodes.len() >= 3);
    }

    #[test]
    fn sat_elimination_resolvent_shapes() {
        // (x∨y1∨y2) ∧ (¬x∨z1∨z2) gives one arity-4 resolvent
        let f = parse_dimacs("p cnf 5 2\n1 2 3 0\n-1 4 5 0\n").unwrap();
        let mut d = encode(&f);
        let sat = bool_of(&d);
        let x = spider_for_var(&d, 0);
        let step = apply_elim_var_sat(&mut d, x).unwrap();
        assert_eq!(step.produced_nodes.len(), 1);
        assert_eq!(d.degree(step.produced_nodes[0]), 4);
        assert_eq!(bool_of(&d), sat);
    }

    #[test]
    fn elimination_requires_tidy_sites() {
        // (x ∨ x) leaves two legs into one box
        let f = parse_dimacs("p cnf 1 1\n1 1 0\n").unwrap();
        let mut d = encode(&f);
        let x = spider_for_var(&d, 0);
        let snapshot = d.clone();
        assert!(apply_elim_var_sharp2sat(&mut d, x).is_err());
        assert!(apply_elim_var_sharpsat(&mut d, x).is_err());
        assert_eq!(d, snapshot);
    }

    #[test]
    fn fanout_summary() {
        let f = parse_dimacs("p cnf 4 3\n1 2 3 0\n-1 4 0\n2 4 0\n").unwrap();
        let d = encode(&f);
        let x = spider_for_var(&d, 0);
        let fanout = elim_site_arities(&d, x).unwrap();
        // the positive occurrence sits behind a negated leg
        assert_eq!(fanout.plain, 1);
        assert_eq!(fanout.negated, 1);
        assert_eq!(fanout.max_plain_outer, 1);
        assert_eq!(fanout.max_negated_outer, 2);
        assert!(!fanout.all_arity_two);
        assert_eq!(fanout.resolvent_count(), 1);
        assert_eq!(fanout.max_produced_arity(false), 3);
    }
}
