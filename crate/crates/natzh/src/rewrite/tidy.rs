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

//! Clause-shaped tidy rules: duplicate boxes (repeated clauses), double
//! legs into one variable (repeated or complementary literals), and the
//! propagation of forced values.
//!
//! Several of these delete a box outright, which silently drops its
//! remaining legs. That is only sound because a Z-spider marginalized
//! over one leg is the smaller Z-spider, so every matcher here insists
//! the affected neighbors are Z-spiders.

use std::collections::BTreeMap;

use super::{mismatch, RewriteError, RewriteStep, RuleId};
use crate::diagram::{Diagram, EdgeId, NodeId, NodeKind};

/// The multiset of (neighbor, delivered negation) legs of a box, or None
/// if a leg is a self-loop or reaches a non-Z node.
fn clause_key(d: &Diagram, b: NodeId) -> Option<BTreeMap<(NodeId, bool), usize>> {
    let mut key = BTreeMap::new();
    for &e in d.incident(b) {
        let edge = d.edge(e).expect("edge exists");
        if edge.is_loop() {
            return None;
        }
        let peer = edge.other(b);
        if !d.node(peer).is_some_and(NodeKind::is_z) {
            return None;
        }
        *key.entry((peer, edge.negated)).or_insert(0) += 1;
    }
    Some(key)
}

/// Pairs of H(0) boxes encoding the same clause over the same variables.
pub fn find_dedup_parallel_h0(d: &Diagram) -> Vec<(NodeId, NodeId)> {
    let mut by_key: BTreeMap<BTreeMap<(NodeId, bool), usize>, NodeId> = BTreeMap::new();
    let mut found = Vec::new();
    for (id, kind) in d.nodes() {
        if !kind.is_h0() {
            continue;
        }
        let Some(key) = clause_key(d, id) else { continue };
        match by_key.get(&key) {
            Some(&first) => found.push((first, id)),
            None => {
                by_key.insert(key, id);
            }
        }
    }
    found
}

/// Deletes the second of two H(0) boxes whose leg multisets (including
/// negations) agree. The shared Z-spiders force both boxes to observe
/// identical bits, and 0/1 constraint weights are idempotent, so the
/// duplicate is redundant over ℕ, not just over 𝔹.
pub fn apply_dedup_parallel_h0(
    d: &mut Diagram,
    keep: NodeId,
    remove: NodeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::DedupParallelH0;
    if keep == remove {
        return Err(mismatch(rule, "need two distinct boxes"));
    }
    for b in [keep, remove] {
        if !d.node(b).is_some_and(NodeKind::is_h0) {
            return Err(mismatch(rule, format!("{b} is not an H(0) box")));
        }
    }
    let (Some(k1), Some(k2)) = (clause_key(d, keep), clause_key(d, remove)) else {
        return Err(mismatch(rule, "box legs must all reach Z-spiders"));
    };
    if k1 != k2 {
        return Err(mismatch(rule, "boxes are not duplicates"));
    }

    let mut step = RewriteStep::new(rule);
    for e in d.incident(remove).to_vec() {
        d.remove_edge(e).expect("edge exists");
        step.consumed_edges.push(e);
    }
    d.remove_node(remove).expect("now isolated");
    step.consumed_nodes.push(remove);
    Ok(step)
}

fn double_leg(
    d: &Diagram,
    b: NodeId,
    e1: EdgeId,
    e2: EdgeId,
    rule: RuleId,
) -> Result<(NodeId, bool, bool), RewriteError> {
    if !d.node(b).is_some_and(NodeKind::is_h0) {
        return Err(mismatch(rule, format!("{b} is not an H(0) box")));
    }
    if e1 == e2 {
        return Err(mismatch(rule, "need two distinct legs"));
    }
    let (Some(a), Some(c)) = (d.edge(e1).copied(), d.edge(e2).copied()) else {
        return Err(mismatch(rule, "missing edge"));
    };
    if a.is_loop() || c.is_loop() || !a.touches(b) || !c.touches(b) {
        return Err(mismatch(rule, "edges must be ordinary legs of the box"));
    }
    let w = a.other(b);
    if c.other(b) != w {
        return Err(mismatch(rule, "legs reach different spiders"));
    }
    if !d.node(w).is_some_and(NodeKind::is_z) {
        return Err(mismatch(rule, "shared neighbor is not a Z-spider"));
    }
    Ok((w, a.negated, c.negated))
}

/// Double legs from one box into one spider, split by negation parity:
/// `(box, leg, leg, equal_parity)`.
pub fn find_h0_double_legs(d: &Diagram) -> Vec<(NodeId, EdgeId, EdgeId, bool)> {
    let mut found = Vec::new();
    for (b, kind) in d.nodes() {
        if !kind.is_h0() {
            continue;
        }
        let mut by_peer: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
        for &e in d.incident(b) {
            let edge = d.edge(e).expect("edge exists");
            if edge.is_loop() {
                continue;
            }
            let peer = edge.other(b);
            if d.node(peer).is_some_and(NodeKind::is_z) {
                by_peer.entry(peer).or_default().push(e);
            }
        }
        for (_, legs) in by_peer {
            if legs.len() >= 2 {
                let n0 = d.edge(legs[0]).expect("edge exists").negated;
                match legs[1..]
                    .iter()
                    .find(|&&e| d.edge(e).expect("edge exists").negated == n0)
                {
                    Some(&same) => found.push((b, legs[0], same, true)),
                    None => found.push((b, legs[0], legs[1], false)),
                }
            }
        }
    }
    found
}

/// Sites for merging a repeated literal: two equal-parity legs.
pub fn find_merge_duplicate_literal(d: &Diagram) -> Vec<(NodeId, EdgeId, EdgeId)> {
    find_h0_double_legs(d)
        .into_iter()
        .filter(|&(_, _, _, equal)| equal)
        .map(|(b, e1, e2, _)| (b, e1, e2))
        .collect()
}

/// Sites for deleting a tautological box: two opposite-parity legs.
pub fn find_tautology_h0(d: &Diagram) -> Vec<(NodeId, EdgeId, EdgeId)> {
    find_h0_double_legs(d)
        .into_iter()
        .filter(|&(_, _, _, equal)| !equal)
        .map(|(b, e1, e2, _)| (b, e1, e2))
        .collect()
}

/// Merges two equal-parity legs of an H(0) box into one: the clause
/// (y ∨ y ∨ R) is the clause (y ∨ R).
pub fn apply_merge_duplicate_literal(
    d: &mut Diagram,
    b: NodeId,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::MergeDuplicateLiteral;
    let (_, n1, n2) = double_leg(d, b, e1, e2, rule)?;
    if n1 != n2 {
        return Err(mismatch(rule, "legs have opposite parity"));
    }
    d.remove_edge(e2).expect("edge exists");
    let mut step = RewriteStep::new(rule);
    step.consumed_edges.push(e2);
    Ok(step)
}

/// Deletes an H(0) box with two opposite-parity legs into one spider:
/// the clause (y ∨ ¬y ∨ R) holds always. The box's other legs must also
/// reach Z-spiders for the deletion to be sound.
pub fn apply_tautology_h0(
    d: &mut Diagram,
    b: NodeId,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::TautologyH0;
    let (_, n1, n2) = double_leg(d, b, e1, e2, rule)?;
    if n1 == n2 {
        return Err(mismatch(rule, "legs have equal parity"));
    }
    for &e in d.incident(b) {
        let edge = d.edge(e).expect("edge exists");
        if edge.is_loop() || !d.node(edge.other(b)).is_some_and(NodeKind::is_z) {
            return Err(mismatch(rule, "every leg must reach a Z-spider"));
        }
    }
    let mut step = RewriteStep::new(rule);
    for e in d.incident(b).to_vec() {
        d.remove_edge(e).expect("edge exists");
        step.consumed_edges.push(e);
    }
    d.remove_node(b).expect("now isolated");
    step.consumed_nodes.push(b);
    Ok(step)
}

/// Arity-1 H(0) boxes and arity-1 X-spiders hanging off a Z-spider:
/// forced values ready to propagate.
pub fn find_unit_propagate(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, _)| unit_site(d, id).is_ok())
        .map(|(id, _)| id)
        .collect()
}

struct UnitSite {
    forced: bool,
    z: NodeId,
    unit_edge: EdgeId,
}

fn unit_site(d: &Diagram, unit: NodeId) -> Result<UnitSite, String> {
    // the unit pins its single leg: H(0) wants to observe 0, X(a) wants a
    let wants = match d.node(unit) {
        Some(NodeKind::HBox(p)) if p.is_zero() => false,
        Some(NodeKind::XSpider(a)) => *a,
        _ => return Err("unit must be an H(0) box or an X-spider".into()),
    };
    let inc = d.incident(unit);
    if d.degree(unit) != 1 || inc.len() != 1 {
        return Err("unit must have exactly one leg".into());
    }
    let unit_edge = inc[0];
    let edge = d.edge(unit_edge).expect("edge exists");
    let z = edge.other(unit);
    if !d.node(z).is_some_and(NodeKind::is_z) {
        return Err("unit must hang off a Z-spider".into());
    }
    let forced = wants ^ edge.negated;

    // every other neighbor must absorb the pinned value soundly
    for &e in d.incident(z) {
        if e == unit_edge {
            continue;
        }
        let other_edge = d.edge(e).expect("edge exists");
        if other_edge.is_loop() {
            return Err("spider has a self-loop".into());
        }
        let peer = other_edge.other(z);
        if !matches!(d.node(peer), Some(NodeKind::HBox(_) | NodeKind::XSpider(_))) {
            return Err("spider neighbors must be boxes or X-spiders".into());
        }
    }
    // boxes that will be deleted (some leg observes 0) must drop their
    // remaining legs onto Z-spiders
    let mut by_peer: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for &e in d.incident(z) {
        if e == unit_edge {
            continue;
        }
        let peer = d.edge(e).expect("edge exists").other(z);
        by_peer.entry(peer).or_default().push(e);
    }
    for (&peer, legs) in &by_peer {
        if !d.node(peer).is_some_and(NodeKind::is_hbox) {
            continue;
        }
        let dies = legs
            .iter()
            .any(|&e| !(forced ^ d.edge(e).expect("edge exists").negated));
        if !dies {
            continue;
        }
        for &e in d.incident(peer) {
            let edge = d.edge(e).expect("edge exists");
            if edge.is_loop() {
                return Err("a dying box has a self-loop".into());
            }
            let w = edge.other(peer);
            if w != z && !d.node(w).is_some_and(NodeKind::is_z) {
                return Err("a dying box has a non-Z neighbor".into());
            }
        }
    }
    Ok(UnitSite { forced, z, unit_edge })
}

/// Propagates a forced variable value through its Z-spider: satisfied
/// boxes disappear, falsified legs are stripped (a box losing its last
/// leg is left as an arity-0 H(0) for `apply_empty_h0`), X-spider legs
/// are stripped with a parity flip when they observed a 1, and the
/// spider and unit disappear. Exact over ℕ: the collapsed sum has a
/// single surviving term of weight 1.
pub fn apply_unit_propagate(d: &mut Diagram, unit: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::UnitPropagate;
    let site = unit_site(d, unit).map_err(|reason| mismatch(rule, reason))?;
    let UnitSite { forced, z, unit_edge } = site;

    let mut step = RewriteStep::new(rule);
    let mut by_peer: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for &e in d.incident(z) {
        if e != unit_edge {
            by_peer.entry(d.edge(e).expect("edge exists").other(z)).or_default().push(e);
        }
    }

    for (peer, legs) in by_peer {
        let delivered: Vec<bool> = legs
            .iter()
            .map(|&e| forced ^ d.edge(e).expect("edge exists").negated)
            .collect();
        match d.node(peer).cloned() {
            Some(NodeKind::HBox(_)) => {
                if delivered.iter().any(|&bit| !bit) {
                    // some leg observes 0: the box is the all-ones tensor
                    for e in d.incident(peer).to_vec() {
                        d.remove_edge(e).expect("edge exists");
                        step.consumed_edges.push(e);
                    }
                    d.remove_node(peer).expect("now isolated");
                    step.consumed_nodes.push(peer);
                } else {
                    // all legs observe 1: strip them, keep the box
                    for e in legs {
                        d.remove_edge(e).expect("edge exists");
                        step.consumed_edges.push(e);
                    }
                }
            }
            Some(NodeKind::XSpider(_)) => {
                for (e, bit) in legs.into_iter().zip(delivered) {
                    d.remove_edge(e).expect("edge exists");
                    step.consumed_edges.push(e);
                    if bit {
                        d.flip_x_parity(peer);
                    }
                }
            }
            _ => unreachable!("checked by unit_site"),
        }
    }

    d.remove_edge(unit_edge).expect("edge exists");
    step.consumed_edges.push(unit_edge);
    d.remove_node(unit).expect("now isolated");
    d.remove_node(z).expect("now isolated");
    step.consumed_nodes.extend([unit, z]);
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{encode, parse_dimacs};
    use crate::rewrite::{apply_empty_h0, find_empty_h0};
    use crate::semiring::Natural;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    fn scalar_of(d: &Diagram) -> Natural {
        d.contract_scalar(24).unwrap()
    }

    #[test]
    fn dedup_removes_repeated_clause() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n1 2 0\n").unwrap();
        let mut d = encode(&f);
        let before = scalar_of(&d);
        let sites = find_dedup_parallel_h0(&d);
        assert_eq!(sites.len(), 1);
        apply_dedup_parallel_h0(&mut d, sites[0].0, sites[0].1).unwrap();
        assert_eq!(scalar_of(&d), before);
        assert_eq!(before, nat(3));
    }

    #[test]
    fn dedup_rejects_near_duplicates() {
        // same variables, one distinct negation: not a duplicate
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n1 -2 0\n").unwrap();
        let d = encode(&f);
        assert!(find_dedup_parallel_h0(&d).is_empty());
    }

    #[test]
    fn merge_duplicate_literal_matches_simpler_clause() {
        let doubled = encode(&parse_dimacs("p cnf 2 1\n1 1 2 0\n").unwrap());
        let simple = encode(&parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap());
        let mut d = doubled.clone();
        let sites = find_merge_duplicate_literal(&d);
        assert_eq!(sites.len(), 1);
        apply_merge_duplicate_literal(&mut d, sites[0].0, sites[0].1, sites[0].2).unwrap();
        assert_eq!(scalar_of(&d), scalar_of(&simple));
        assert_eq!(scalar_of(&doubled), scalar_of(&simple));
    }

    #[test]
    fn tautology_box_is_deleted() {
        let f = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap();
        let mut d = encode(&f);
        let sites = find_tautology_h0(&d);
        assert_eq!(sites.len(), 1);
        apply_tautology_h0(&mut d, sites[0].0, sites[0].1, sites[0].2).unwrap();
        assert_eq!(scalar_of(&d), nat(2));
        assert_eq!(d.nodes().filter(|(_, k)| k.is_h0()).count(), 0);
    }

    #[test]
    fn tautology_in_wider_clause_keeps_value() {
        let f = parse_dimacs("p cnf 3 2\n1 -1 2 0\n2 3 0\n").unwrap();
        let mut d = encode(&f);
        let before = scalar_of(&d);
        let sites = find_tautology_h0(&d);
        assert_eq!(sites.len(), 1);
        apply_tautology_h0(&mut d, sites[0].0, sites[0].1, sites[0].2).unwrap();
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn unit_propagation_counts() {
        // (x1) ∧ (x1 ∨ x2): both satisfied once x1 = 1, x2 free
        let f = parse_dimacs("p cnf 2 2\n1 0\n1 2 0\n").unwrap();
        let mut d = encode(&f);
        let sites = find_unit_propagate(&d);
        assert_eq!(sites.len(), 1);
        apply_unit_propagate(&mut d, sites[0]).unwrap();
        assert_eq!(scalar_of(&d), nat(2));
    }

    #[test]
    fn unit_propagation_strips_falsified_legs() {
        // (x1) ∧ (¬x1 ∨ x2): forces x2 too
        let f = parse_dimacs("p cnf 2 2\n1 0\n-1 2 0\n").unwrap();
        let mut d = encode(&f);
        let sites = find_unit_propagate(&d);
        apply_unit_propagate(&mut d, sites[0]).unwrap();
        // the second clause was stripped to the unit (x2)
        assert_eq!(scalar_of(&d), nat(1));
    }

    #[test]
    fn contradictory_units_zero_out() {
        let f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        let mut d = encode(&f);
        let sites = find_unit_propagate(&d);
        apply_unit_propagate(&mut d, sites[0]).unwrap();
        let empties = find_empty_h0(&d);
        assert_eq!(empties.len(), 1);
        apply_empty_h0(&mut d, empties[0]).unwrap();
        assert!(d.scalar().is_zero());
        assert_eq!(scalar_of(&d), nat(0));
    }

    #[test]
    fn unit_propagation_through_x_spiders() {
        // x1 forced true, x1 ⊕ x2 must hold: x2 forced false
        let f = parse_dimacs("p cnf 2 2\n1 0\nx 1 2 0\n").unwrap();
        let mut d = encode(&f);
        let before = scalar_of(&d);
        let sites = find_unit_propagate(&d);
        assert_eq!(sites.len(), 1);
        apply_unit_propagate(&mut d, sites[0]).unwrap();
        assert_eq!(scalar_of(&d), before);
        assert_eq!(before, nat(1));
    }

    #[test]
    fn mismatch_leaves_diagram_alone() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        let mut d = encode(&f);
        let snapshot = d.clone();
        let box_id = d.nodes().find(|(_, k)| k.is_h0()).unwrap().0;
        assert!(apply_unit_propagate(&mut d, box_id).is_err());
        assert!(apply_dedup_parallel_h0(&mut d, box_id, box_id).is_err());
        assert_eq!(d, snapshot);
    }
}
