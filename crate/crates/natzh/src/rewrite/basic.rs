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

//! Spider fusion, negation pushing, loop and parallel-pair removal, the
//! Z/X bialgebra, and arity-0 scalarization.

use super::{mismatch, RewriteError, RewriteStep, RuleId};
use crate::diagram::{node_weight, Diagram, EdgeId, NodeId, NodeKind};
use crate::semiring::Natural;

fn lowest_connecting_edge(
    d: &Diagram,
    a: NodeId,
    b: NodeId,
    plain_only: bool,
) -> Option<EdgeId> {
    d.incident(a)
        .iter()
        .copied()
        .filter(|&e| {
            let edge = d.edge(e).expect("edge exists");
            !edge.is_loop() && edge.other(a) == b && (!plain_only || !edge.negated)
        })
        .min()
}

/// Pairs of distinct Z-spiders joined by at least one plain edge.
pub fn find_fuse_z(d: &Diagram) -> Vec<(NodeId, NodeId)> {
    let mut found = Vec::new();
    for (id, kind) in d.nodes() {
        if !kind.is_z() {
            continue;
        }
        for &e in d.incident(id) {
            let edge = d.edge(e).expect("edge exists");
            if edge.negated || edge.is_loop() {
                continue;
            }
            let other = edge.other(id);
            if other > id && d.node(other).is_some_and(NodeKind::is_z) {
                found.push((id, other));
            }
        }
    }
    found.dedup();
    found
}

/// Fuses Z-spider `absorb` into `keep` along one plain connecting edge.
/// Every other connecting edge becomes a self-loop on `keep`, keeping its
/// negation flag.
pub fn apply_fuse_z(
    d: &mut Diagram,
    keep: NodeId,
    absorb: NodeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::FuseZ;
    if keep == absorb {
        return Err(mismatch(rule, "cannot fuse a spider with itself"));
    }
    for n in [keep, absorb] {
        if !d.node(n).is_some_and(NodeKind::is_z) {
            return Err(mismatch(rule, format!("{n} is not a Z-spider")));
        }
    }
    let Some(fusion) = lowest_connecting_edge(d, keep, absorb, true) else {
        return Err(mismatch(rule, "no plain edge joins the two spiders"));
    };

    d.remove_edge(fusion).expect("edge exists");
    d.transfer_edges(absorb, keep);
    d.remove_node(absorb).expect("now isolated");

    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.push(absorb);
    step.consumed_edges.push(fusion);
    Ok(step)
}

/// Pairs of distinct X-spiders joined by at least one edge.
pub fn find_fuse_x(d: &Diagram) -> Vec<(NodeId, NodeId)> {
    let mut found = Vec::new();
    for (id, kind) in d.nodes() {
        if !kind.is_x() {
            continue;
        }
        for &e in d.incident(id) {
            let edge = d.edge(e).expect("edge exists");
            if edge.is_loop() {
                continue;
            }
            let other = edge.other(id);
            if other > id && d.node(other).is_some_and(NodeKind::is_x) {
                found.push((id, other));
            }
        }
    }
    found.dedup();
    found
}

/// Fuses X-spider `absorb` into `keep` along one connecting edge, whose
/// negation is absorbed into the merged parity along with both spider
/// parities. Other connecting edges become self-loops.
pub fn apply_fuse_x(
    d: &mut Diagram,
    keep: NodeId,
    absorb: NodeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::FuseX;
    if keep == absorb {
        return Err(mismatch(rule, "cannot fuse a spider with itself"));
    }
    let (Some(NodeKind::XSpider(pk)), Some(NodeKind::XSpider(pa))) =
        (d.node(keep).cloned(), d.node(absorb).cloned())
    else {
        return Err(mismatch(rule, "both endpoints must be X-spiders"));
    };
    let Some(fusion) = lowest_connecting_edge(d, keep, absorb, false) else {
        return Err(mismatch(rule, "no edge joins the two spiders"));
    };

    let fused_parity = pk ^ pa ^ d.edge(fusion).expect("edge exists").negated;
    d.remove_edge(fusion).expect("edge exists");
    d.transfer_edges(absorb, keep);
    d.remove_node(absorb).expect("now isolated");
    d.set_node_kind(keep, NodeKind::XSpider(fused_parity));

    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.push(absorb);
    step.consumed_edges.push(fusion);
    Ok(step)
}

/// Z-spiders carrying at least one negated non-loop edge.
pub fn find_not_copy(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|(id, kind)| {
            kind.is_z()
                && d.incident(*id).iter().any(|&e| {
                    let edge = d.edge(e).expect("edge exists");
                    edge.negated && !edge.is_loop()
                })
        })
        .map(|(id, _)| id)
        .collect()
}

/// Copies a negation through a Z-spider: flips the negation flag of
/// every non-loop edge incident to it. Self-loops are untouched since a
/// flip at both of their ends cancels.
pub fn apply_not_copy(d: &mut Diagram, z: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::NotCopy;
    if !d.node(z).is_some_and(NodeKind::is_z) {
        return Err(mismatch(rule, format!("{z} is not a Z-spider")));
    }
    let flippable: Vec<EdgeId> = d
        .incident(z)
        .iter()
        .copied()
        .filter(|&e| !d.edge(e).expect("edge exists").is_loop())
        .collect();
    if !flippable.iter().any(|&e| d.edge(e).expect("edge exists").negated) {
        return Err(mismatch(rule, "spider has no negated edge to copy"));
    }
    for e in flippable {
        d.toggle_edge_negated(e);
    }
    Ok(RewriteStep::new(rule))
}

/// Every edge is a site: two negations cancel, so toggling a flag twice
/// is the identity.
pub fn find_double_negation(d: &Diagram) -> Vec<EdgeId> {
    d.edges().map(|(id, _)| id).collect()
}

/// Double negation elimination. In the edge-flag representation this is
/// a normalizing no-op, recorded only for trace completeness.
pub fn apply_double_negation(d: &mut Diagram, e: EdgeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::DoubleNegation;
    if !d.contains_edge(e) {
        return Err(mismatch(rule, format!("no edge {e}")));
    }
    d.toggle_edge_negated(e);
    d.toggle_edge_negated(e);
    Ok(RewriteStep::new(rule))
}

fn find_x_loops(d: &Diagram, negated: bool) -> Vec<EdgeId> {
    d.edges()
        .filter(|(_, e)| {
            e.is_loop()
                && e.negated == negated
                && d.node(e.u).is_some_and(NodeKind::is_x)
        })
        .map(|(id, _)| id)
        .collect()
}

/// Plain self-loops on X-spiders.
pub fn find_loop_two(d: &Diagram) -> Vec<EdgeId> {
    find_x_loops(d, false)
}

/// Negated self-loops on X-spiders.
pub fn find_loop_zero(d: &Diagram) -> Vec<EdgeId> {
    find_x_loops(d, true)
}

fn apply_x_loop(
    d: &mut Diagram,
    e: EdgeId,
    rule: RuleId,
    want_negated: bool,
) -> Result<RewriteStep, RewriteError> {
    let Some(edge) = d.edge(e).copied() else {
        return Err(mismatch(rule, format!("no edge {e}")));
    };
    if !edge.is_loop() {
        return Err(mismatch(rule, "edge is not a self-loop"));
    }
    if edge.negated != want_negated {
        return Err(mismatch(rule, "wrong loop negation for this rule"));
    }
    if !d.node(edge.u).is_some_and(NodeKind::is_x) {
        return Err(mismatch(rule, "loop is not on an X-spider"));
    }
    d.remove_edge(e).expect("edge exists");
    if want_negated {
        d.flip_x_parity(edge.u);
    }
    let two = Natural::from(2u32);
    d.mul_scalar(&two);
    let mut step = RewriteStep::new(rule);
    step.consumed_edges.push(e);
    step.scalar_factor = two;
    Ok(step)
}

/// Removes a naked self-loop on an X-spider for a factor 2.
pub fn apply_loop_two(d: &mut Diagram, e: EdgeId) -> Result<RewriteStep, RewriteError> {
    apply_x_loop(d, e, RuleId::LoopTwo, false)
}

/// Removes a negated self-loop on an X-spider for a factor 2, flipping
/// the spider parity. On a bare loop the flipped spider scalarizes to 0,
/// which is where a negated loop sends the whole diagram.
pub fn apply_loop_zero(d: &mut Diagram, e: EdgeId) -> Result<RewriteStep, RewriteError> {
    apply_x_loop(d, e, RuleId::LoopZero, true)
}

/// Self-loops on Z-spiders.
pub fn find_loop_z(d: &Diagram) -> Vec<EdgeId> {
    d.edges()
        .filter(|(_, e)| e.is_loop() && d.node(e.u).is_some_and(NodeKind::is_z))
        .map(|(id, _)| id)
        .collect()
}

/// Removes a self-loop on a Z-spider. A naked loop is forced to the
/// spider's own value and drops silently; a negated loop demands the
/// value differ from itself, so the whole diagram is worth 0.
pub fn apply_loop_z(d: &mut Diagram, e: EdgeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::LoopZ;
    let Some(edge) = d.edge(e).copied() else {
        return Err(mismatch(rule, format!("no edge {e}")));
    };
    if !edge.is_loop() {
        return Err(mismatch(rule, "edge is not a self-loop"));
    }
    if !d.node(edge.u).is_some_and(NodeKind::is_z) {
        return Err(mismatch(rule, "loop is not on a Z-spider"));
    }
    d.remove_edge(e).expect("edge exists");
    let mut step = RewriteStep::new(rule);
    step.consumed_edges.push(e);
    if edge.negated {
        d.mul_scalar(&Natural::zero());
        step.scalar_factor = Natural::zero();
    }
    Ok(step)
}

/// Pairs of parallel edges between a Z-spider and an X-spider, one site
/// per such node pair.
pub fn find_hopf_zx(d: &Diagram) -> Vec<(EdgeId, EdgeId)> {
    let mut found = Vec::new();
    for (z, kind) in d.nodes() {
        if !kind.is_z() {
            continue;
        }
        let mut by_peer: std::collections::BTreeMap<NodeId, Vec<EdgeId>> = Default::default();
        for &e in d.incident(z) {
            let edge = d.edge(e).expect("edge exists");
            if edge.is_loop() {
                continue;
            }
            let peer = edge.other(z);
            if d.node(peer).is_some_and(NodeKind::is_x) {
                by_peer.entry(peer).or_default().push(e);
            }
        }
        for (_, edges) in by_peer {
            if edges.len() >= 2 {
                found.push((edges[0], edges[1]));
            }
        }
    }
    found
}

/// Cancels a pair of parallel edges between a Z-spider and an X-spider.
/// The Z end forces both wires to carry the same bit, so the pair
/// contributes its combined negation to the X parity and nothing else.
pub fn apply_hopf_zx(
    d: &mut Diagram,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::HopfZX;
    if e1 == e2 {
        return Err(mismatch(rule, "need two distinct edges"));
    }
    let (Some(a), Some(b)) = (d.edge(e1).copied(), d.edge(e2).copied()) else {
        return Err(mismatch(rule, "missing edge"));
    };
    if a.is_loop() || b.is_loop() {
        return Err(mismatch(rule, "self-loops are handled by the loop rules"));
    }
    let ends = |e: crate::diagram::Edge| {
        if e.u <= e.v {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        }
    };
    if ends(a) != ends(b) {
        return Err(mismatch(rule, "edges are not parallel"));
    }
    let (x_node, ok) = match (d.node(a.u), d.node(a.v)) {
        (Some(NodeKind::ZSpider), Some(NodeKind::XSpider(_))) => (a.v, true),
        (Some(NodeKind::XSpider(_)), Some(NodeKind::ZSpider)) => (a.u, true),
        _ => (a.u, false),
    };
    if !ok {
        return Err(mismatch(rule, "endpoints are not a Z/X pair"));
    }

    let flip = a.negated ^ b.negated;
    d.remove_edge(e1).expect("edge exists");
    d.remove_edge(e2).expect("edge exists");
    if flip {
        d.flip_x_parity(x_node);
    }
    let mut step = RewriteStep::new(rule);
    step.consumed_edges.extend([e1, e2]);
    Ok(step)
}

/// Arity-2 X-spiders sitting between two (not necessarily distinct)
/// non-boundary neighbors via two ordinary edges.
pub fn find_collapse_binary_x(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, kind)| kind.is_x() && collapse_site(d, id).is_ok())
        .map(|(id, _)| id)
        .collect()
}

fn collapse_site(d: &Diagram, x: NodeId) -> Result<(EdgeId, EdgeId), String> {
    if !d.node(x).is_some_and(NodeKind::is_x) {
        return Err(format!("{x} is not an X-spider"));
    }
    let inc = d.incident(x);
    if d.degree(x) != 2 || inc.len() != 2 {
        return Err("spider arity is not 2 (or the legs form a loop)".into());
    }
    Ok((inc[0], inc[1]))
}

/// Replaces an arity-2 X-spider by a single wire: the parity tensor on
/// two legs is the identity (parity 0) or the negation (parity 1).
pub fn apply_collapse_binary_x(d: &mut Diagram, x: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::CollapseBinaryX;
    let (e1, e2) = collapse_site(d, x).map_err(|reason| mismatch(rule, reason))?;
    let parity = match d.node(x) {
        Some(NodeKind::XSpider(p)) => *p,
        _ => unreachable!("checked by collapse_site"),
    };
    let a = d.edge(e1).expect("edge exists").other(x);
    let b = d.edge(e2).expect("edge exists").other(x);
    let negated = d.edge(e1).expect("edge exists").negated
        ^ d.edge(e2).expect("edge exists").negated
        ^ parity;
    d.remove_edge(e1).expect("edge exists");
    d.remove_edge(e2).expect("edge exists");
    d.remove_node(x).expect("now isolated");
    let wire = d.add_edge(a, b, negated);

    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.push(x);
    step.consumed_edges.extend([e1, e2]);
    step.produced_edges.push(wire);
    Ok(step)
}

/// Plain edges joining a Z-spider to an X-spider.
pub fn find_bialgebra_zx(d: &Diagram) -> Vec<EdgeId> {
    d.edges()
        .filter(|(_, e)| {
            !e.is_loop()
                && !e.negated
                && matches!(
                    (d.node(e.u), d.node(e.v)),
                    (Some(NodeKind::ZSpider), Some(NodeKind::XSpider(_)))
                        | (Some(NodeKind::XSpider(_)), Some(NodeKind::ZSpider))
                )
        })
        .map(|(id, _)| id)
        .collect()
}

/// The Z/X bialgebra: a plain Z—X edge is replaced by the complete
/// bipartite pattern. Every remaining wire of the Z-spider ends in a
/// fresh X-spider and every remaining wire of the X-spider in a fresh
/// Z-spider, all mutually connected by plain edges. The X parity is
/// copied onto every fresh X-spider, which is exactly what plugging
/// basis states into the original pair demands.
pub fn apply_bialgebra_zx(d: &mut Diagram, e: EdgeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::BialgebraZX;
    let Some(edge) = d.edge(e).copied() else {
        return Err(mismatch(rule, format!("no edge {e}")));
    };
    if edge.negated || edge.is_loop() {
        return Err(mismatch(rule, "site edge must be plain and not a loop"));
    }
    let (z, x, parity) = match (d.node(edge.u), d.node(edge.v)) {
        (Some(NodeKind::ZSpider), Some(NodeKind::XSpider(p))) => (edge.u, edge.v, *p),
        (Some(NodeKind::XSpider(p)), Some(NodeKind::ZSpider)) => (edge.v, edge.u, *p),
        _ => return Err(mismatch(rule, "endpoints are not a Z/X pair")),
    };

    // wire ends other than `e`: self-loops contribute two ends
    let wire_ends = |d: &Diagram, n: NodeId| -> Vec<EdgeId> {
        let mut ends = Vec::new();
        for &other in d.incident(n) {
            if other == e {
                continue;
            }
            ends.push(other);
            if d.edge(other).expect("edge exists").is_loop() {
                ends.push(other);
            }
        }
        ends
    };
    let z_ends = wire_ends(d, z);
    let x_ends = wire_ends(d, x);

    d.remove_edge(e).expect("edge exists");
    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.extend([z, x]);
    step.consumed_edges.push(e);

    let mut fresh_x = Vec::with_capacity(z_ends.len());
    for wire in z_ends {
        let fx = d.add_node(NodeKind::XSpider(parity));
        d.rehome_one_end(wire, z, fx);
        fresh_x.push(fx);
    }
    let mut fresh_z = Vec::with_capacity(x_ends.len());
    for wire in x_ends {
        let fz = d.add_node(NodeKind::ZSpider);
        d.rehome_one_end(wire, x, fz);
        fresh_z.push(fz);
    }
    for &fx in &fresh_x {
        for &fz in &fresh_z {
            step.produced_edges.push(d.add_edge(fx, fz, false));
        }
    }
    step.produced_nodes.extend(fresh_x);
    step.produced_nodes.extend(fresh_z.iter().copied());
    d.remove_node(z).expect("now isolated");
    d.remove_node(x).expect("now isolated");
    Ok(step)
}

/// Non-boundary nodes with no incident edges.
pub fn find_scalarize_arity0(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, kind)| !kind.is_boundary() && d.degree(id) == 0)
        .map(|(id, _)| id)
        .collect()
}

/// Removes an arity-0 generator, multiplying its weight into the scalar:
/// Z → 2, H(α) → α, X(0) → 1, X(1) → 0.
pub fn apply_scalarize_arity0(d: &mut Diagram, n: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::ScalarizeArity0;
    let Some(kind) = d.node(n).cloned() else {
        return Err(mismatch(rule, format!("no node {n}")));
    };
    if kind.is_boundary() {
        return Err(mismatch(rule, "boundary stubs are not generators"));
    }
    if d.degree(n) != 0 {
        return Err(mismatch(rule, "node still has incident edges"));
    }
    let factor = node_weight(&kind, &[]);
    d.remove_node(n).expect("isolated");
    d.mul_scalar(&factor);
    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.push(n);
    step.scalar_factor = factor;
    Ok(step)
}

/// Arity-0 H(0) boxes: fully falsified constraints.
pub fn find_empty_h0(d: &Diagram) -> Vec<NodeId> {
    d.nodes()
        .filter(|&(id, kind)| kind.is_h0() && d.degree(id) == 0)
        .map(|(id, _)| id)
        .collect()
}

/// Removes an arity-0 H(0) box, sending the scalar to 0: some constraint
/// became unsatisfiable.
pub fn apply_empty_h0(d: &mut Diagram, n: NodeId) -> Result<RewriteStep, RewriteError> {
    let rule = RuleId::EmptyH0;
    if !d.node(n).is_some_and(NodeKind::is_h0) {
        return Err(mismatch(rule, "node is not an H(0) box"));
    }
    if d.degree(n) != 0 {
        return Err(mismatch(rule, "box still has incident edges"));
    }
    d.remove_node(n).expect("isolated");
    d.mul_scalar(&Natural::zero());
    let mut step = RewriteStep::new(rule);
    step.consumed_nodes.push(n);
    step.scalar_factor = Natural::zero();
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Natural;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    fn scalar_of(d: &Diagram) -> Natural {
        d.contract_scalar(24).unwrap()
    }

    #[test]
    fn fuse_z_two_lollipops() {
        // two arity-1 Z-spiders joined by a plain edge fuse to a bare
        // spider worth 2
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::ZSpider);
        let b = d.add_node(NodeKind::ZSpider);
        d.add_edge(a, b, false);
        let before = scalar_of(&d);
        let step = apply_fuse_z(&mut d, a, b).unwrap();
        assert_eq!(step.consumed_nodes, vec![b]);
        assert_eq!(d.node_count(), 1);
        assert_eq!(scalar_of(&d), before);
        assert_eq!(before, nat(2));
    }

    #[test]
    fn fuse_z_makes_self_loops_from_parallel_edges() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::ZSpider);
        let b = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(false));
        d.add_edge(a, b, false);
        d.add_edge(a, b, false);
        d.add_edge(b, x, false);
        let before = scalar_of(&d);
        apply_fuse_z(&mut d, a, b).unwrap();
        assert_eq!(d.edges().filter(|(_, e)| e.is_loop()).count(), 1);
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn fuse_z_requires_plain_edge() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::ZSpider);
        let b = d.add_node(NodeKind::ZSpider);
        d.add_edge(a, b, true);
        let snapshot = d.clone();
        assert!(apply_fuse_z(&mut d, a, b).is_err());
        assert_eq!(d, snapshot);
    }

    #[test]
    fn fuse_x_absorbs_edge_negation_into_parity() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::XSpider(false));
        let b = d.add_node(NodeKind::XSpider(false));
        d.add_edge(a, b, true);
        let before = scalar_of(&d);
        apply_fuse_x(&mut d, a, b).unwrap();
        assert_eq!(d.node(a), Some(&NodeKind::XSpider(true)));
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn fuse_x_arity_one_pair_scalarizes_to_one() {
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::XSpider(true));
        let b = d.add_node(NodeKind::XSpider(true));
        d.add_edge(a, b, false);
        apply_fuse_x(&mut d, a, b).unwrap();
        assert_eq!(d.node(a), Some(&NodeKind::XSpider(false)));
        assert_eq!(scalar_of(&d), nat(1));
    }

    #[test]
    fn not_copy_preserves_value() {
        // arity-3 Z with one negated leg: after the flip the other two
        // legs carry the negation
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let x1 = d.add_node(NodeKind::XSpider(false));
        let x2 = d.add_node(NodeKind::XSpider(true));
        let x3 = d.add_node(NodeKind::XSpider(false));
        d.add_edge(z, x1, true);
        d.add_edge(z, x2, false);
        d.add_edge(z, x3, false);
        let before = scalar_of(&d);
        apply_not_copy(&mut d, z).unwrap();
        assert_eq!(d.edges().filter(|(_, e)| e.negated).count(), 2);
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn loop_rules() {
        // plain loop: factor 2
        let mut d = Diagram::new();
        let x = d.add_node(NodeKind::XSpider(false));
        let z = d.add_node(NodeKind::ZSpider);
        d.add_edge(x, z, false);
        let e = d.add_edge(x, x, false);
        let before = scalar_of(&d);
        let step = apply_loop_two(&mut d, e).unwrap();
        assert_eq!(step.scalar_factor, nat(2));
        assert_eq!(scalar_of(&d), before);

        // negated loop on a bare X(0): whole value is 0
        let mut d = Diagram::new();
        let x = d.add_node(NodeKind::XSpider(false));
        let e = d.add_edge(x, x, true);
        apply_loop_zero(&mut d, e).unwrap();
        assert_eq!(d.node(x), Some(&NodeKind::XSpider(true)));
        let step = apply_scalarize_arity0(&mut d, x).unwrap();
        assert_eq!(step.scalar_factor, nat(0));
        assert!(d.scalar().is_zero());
    }

    #[test]
    fn loop_zero_with_spectators_preserves_value() {
        let mut d = Diagram::new();
        let x = d.add_node(NodeKind::XSpider(false));
        let z = d.add_node(NodeKind::ZSpider);
        d.add_edge(x, z, false);
        let e = d.add_edge(x, x, true);
        let before = scalar_of(&d);
        apply_loop_zero(&mut d, e).unwrap();
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn hopf_cancels_parallel_pairs() {
        for (n1, n2) in [(false, false), (true, false), (true, true)] {
            let mut d = Diagram::new();
            let z = d.add_node(NodeKind::ZSpider);
            let x = d.add_node(NodeKind::XSpider(false));
            let spectator = d.add_node(NodeKind::XSpider(true));
            let e1 = d.add_edge(z, x, n1);
            let e2 = d.add_edge(x, z, n2);
            d.add_edge(z, spectator, false);
            d.add_edge(x, spectator, true);
            let before = scalar_of(&d);
            apply_hopf_zx(&mut d, e1, e2).unwrap();
            assert_eq!(scalar_of(&d), before, "negations {n1}/{n2}");
        }
    }

    #[test]
    fn collapse_binary_x_is_a_wire() {
        // Z—X(1)—Z is Z—¬—Z
        let mut d = Diagram::new();
        let a = d.add_node(NodeKind::ZSpider);
        let b = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(true));
        d.add_edge(a, x, false);
        d.add_edge(x, b, false);
        let before = scalar_of(&d);
        let step = apply_collapse_binary_x(&mut d, x).unwrap();
        assert_eq!(step.produced_edges.len(), 1);
        let wire = d.edge(step.produced_edges[0]).unwrap();
        assert!(wire.negated);
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn bialgebra_degenerate_case() {
        // arity-1 Z — plain — arity-1 X: both sides are the scalar 1
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(false));
        let e = d.add_edge(z, x, false);
        let before = scalar_of(&d);
        let step = apply_bialgebra_zx(&mut d, e).unwrap();
        assert!(step.produced_nodes.is_empty());
        assert_eq!(d.node_count(), 0);
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn bialgebra_four_cycle() {
        // Z(2)—X(2) inside a closed 4-cycle through another Z and X
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(false));
        let z2 = d.add_node(NodeKind::ZSpider);
        let x2 = d.add_node(NodeKind::XSpider(false));
        let e = d.add_edge(z, x, false);
        d.add_edge(x, z2, false);
        d.add_edge(z2, x2, false);
        d.add_edge(x2, z, false);
        let before = scalar_of(&d);
        apply_bialgebra_zx(&mut d, e).unwrap();
        assert_eq!(scalar_of(&d), before);
    }

    #[test]
    fn bialgebra_copies_parity_to_every_fresh_spider() {
        // Z with two extra legs against X(1): both fresh X-spiders carry
        // the parity; anything else would break the tensor equality
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(true));
        let w1 = d.add_node(NodeKind::XSpider(false));
        let w2 = d.add_node(NodeKind::XSpider(false));
        let v = d.add_node(NodeKind::ZSpider);
        let e = d.add_edge(z, x, false);
        d.add_edge(z, w1, false);
        d.add_edge(z, w2, false);
        d.add_edge(x, v, false);
        let before = scalar_of(&d);
        let step = apply_bialgebra_zx(&mut d, e).unwrap();
        assert_eq!(scalar_of(&d), before);
        let fresh_with_parity = step
            .produced_nodes
            .iter()
            .filter(|&&n| d.node(n) == Some(&NodeKind::XSpider(true)))
            .count();
        assert_eq!(fresh_with_parity, 2);
    }

    #[test]
    fn scalarize_all_kinds() {
        let cases = [
            (NodeKind::ZSpider, 2u32),
            (NodeKind::h0(), 0),
            (NodeKind::HBox(nat(3)), 3),
            (NodeKind::XSpider(false), 1),
            (NodeKind::XSpider(true), 0),
        ];
        for (kind, expected) in cases {
            let mut d = Diagram::new();
            let n = d.add_node(kind);
            let step = apply_scalarize_arity0(&mut d, n).unwrap();
            assert_eq!(step.scalar_factor, nat(expected));
            assert_eq!(d.scalar(), &nat(expected));
        }
    }

    #[test]
    fn mismatches_do_not_mutate() {
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let x = d.add_node(NodeKind::XSpider(false));
        let e = d.add_edge(z, x, true);
        let snapshot = d.clone();
        assert!(apply_bialgebra_zx(&mut d, e).is_err());
        assert!(apply_loop_two(&mut d, e).is_err());
        assert!(apply_scalarize_arity0(&mut d, z).is_err());
        assert!(apply_fuse_x(&mut d, z, x).is_err());
        assert_eq!(d, snapshot);
    }
}
