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

//! Tidying to fixpoint.
//!
//! Drives the ℕ-valid housekeeping rewrites from a dirty-node worklist
//! until nothing fires: arity-0 scalarization, loop and parallel-pair
//! removal, spider fusion, duplicate-literal merging, tautology and
//! duplicate-clause deletion, unit propagation, and the collapse of
//! binary X-spiders into wires. The fixpoint exists because every action
//! strictly shrinks (nodes, edges); the elimination rules' preconditions
//! hold at any spider the fixpoint leaves behind.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::Run;
use crate::diagram::{EdgeId, NodeId, NodeKind};
use crate::rewrite::{
    apply_collapse_binary_x, apply_dedup_parallel_h0, apply_empty_h0, apply_fuse_z,
    apply_hopf_zx, apply_loop_z, apply_loop_zero, apply_loop_two,
    apply_merge_duplicate_literal, apply_not_copy, apply_scalarize_arity0, apply_tautology_h0,
    apply_unit_propagate, RewriteStep,
};

pub(crate) fn tidy_all(run: &mut Run) {
    let dirty: Vec<NodeId> = run.d.nodes().map(|(id, _)| id).collect();
    tidy(run, dirty);
}

pub(crate) fn tidy(run: &mut Run, dirty: Vec<NodeId>) {
    let mut queue: VecDeque<NodeId> = dirty.into();
    let mut queued: BTreeSet<NodeId> = queue.iter().copied().collect();
    while let Some(n) = queue.pop_front() {
        queued.remove(&n);
        while run.d.contains_node(n) {
            let Some((step, affected)) = step_at(run, n) else { break };
            run.record(step);
            for t in affected {
                if t != n && run.d.contains_node(t) && queued.insert(t) {
                    queue.push_back(t);
                }
            }
            // keep revisiting n until it stabilizes or disappears
        }
    }
}

fn neighbors(run: &Run, n: NodeId) -> Vec<NodeId> {
    run.d
        .incident(n)
        .iter()
        .map(|&e| run.d.edge(e).expect("edge exists").other(n))
        .filter(|&p| p != n)
        .collect()
}

// Attempts one tidy rewrite anchored at `n`. Returns the step and the
// surviving nodes whose local sites it may have changed.
fn step_at(run: &mut Run, n: NodeId) -> Option<(RewriteStep, Vec<NodeId>)> {
    let kind = run.d.node(n)?.clone();
    if kind.is_boundary() {
        return None;
    }

    // arity 0: fold into the scalar
    if run.d.degree(n) == 0 {
        let step = if kind.is_h0() {
            apply_empty_h0(&mut run.d, n)
        } else {
            apply_scalarize_arity0(&mut run.d, n)
        };
        return step.ok().map(|s| (s, Vec::new()));
    }

    // self-loops
    for &e in run.d.incident(n) {
        let edge = run.d.edge(e).expect("edge exists");
        if !edge.is_loop() {
            continue;
        }
        let step = match &kind {
            NodeKind::ZSpider => apply_loop_z(&mut run.d, e),
            NodeKind::XSpider(_) if edge.negated => apply_loop_zero(&mut run.d, e),
            NodeKind::XSpider(_) => apply_loop_two(&mut run.d, e),
            _ => return None,
        };
        return step.ok().map(|s| (s, Vec::new()));
    }

    match kind {
        NodeKind::ZSpider => z_step(run, n),
        NodeKind::HBox(p) if p.is_zero() => h0_step(run, n),
        NodeKind::HBox(_) => None,
        NodeKind::XSpider(_) => x_step(run, n),
        NodeKind::Boundary => None,
    }
}

fn peers_of(run: &Run, n: NodeId) -> BTreeMap<NodeId, Vec<EdgeId>> {
    let mut by_peer: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for &e in run.d.incident(n) {
        let edge = run.d.edge(e).expect("edge exists");
        if !edge.is_loop() {
            by_peer.entry(edge.other(n)).or_default().push(e);
        }
    }
    by_peer
}

fn z_step(run: &mut Run, z: NodeId) -> Option<(RewriteStep, Vec<NodeId>)> {
    for (peer, edges) in peers_of(run, z) {
        match run.d.node(peer)? {
            NodeKind::ZSpider => {
                let keep = z.min(peer);
                let absorb = z.max(peer);
                let mut affected = neighbors(run, z);
                affected.extend(neighbors(run, peer));
                affected.push(keep);
                // push the negation off first when every connecting edge
                // carries one
                if edges.iter().all(|&e| run.d.edge(e).expect("edge exists").negated) {
                    let flip = apply_not_copy(&mut run.d, absorb).ok()?;
                    run.record(flip);
                }
                return apply_fuse_z(&mut run.d, keep, absorb).ok().map(|s| (s, affected));
            }
            NodeKind::XSpider(_) if edges.len() >= 2 => {
                return apply_hopf_zx(&mut run.d, edges[0], edges[1])
                    .ok()
                    .map(|s| (s, vec![peer]));
            }
            _ => {}
        }
    }
    None
}

fn h0_step(run: &mut Run, b: NodeId) -> Option<(RewriteStep, Vec<NodeId>)> {
    // double legs into one spider: repeated or complementary literal
    for (peer, edges) in peers_of(run, b) {
        if edges.len() < 2 {
            continue;
        }
        let negs: Vec<bool> =
            edges.iter().map(|&e| run.d.edge(e).expect("edge exists").negated).collect();
        if let Some(j) = (1..edges.len()).find(|&j| negs[j] == negs[0]) {
            return apply_merge_duplicate_literal(&mut run.d, b, edges[0], edges[j])
                .ok()
                .map(|s| (s, vec![peer]));
        }
        let affected = neighbors(run, b);
        return apply_tautology_h0(&mut run.d, b, edges[0], edges[1])
            .ok()
            .map(|s| (s, affected));
    }

    // unit clause: blast radius is the spider's neighborhood and the
    // outer variables of any clause it deletes
    if run.d.degree(b) == 1 {
        let z = run.d.edge(run.d.incident(b)[0]).expect("edge exists").other(b);
        let mut affected = neighbors(run, z);
        for peer in affected.clone() {
            affected.extend(neighbors(run, peer));
        }
        if let Ok(step) = apply_unit_propagate(&mut run.d, b) {
            return Some((step, affected));
        }
    }

    // duplicate of a clause over the same variables: search the
    // neighborhood of the box's least-busy variable, filtering twins by
    // degree before comparing leg multisets
    let arity = run.d.degree(b);
    let probe = peers_of(run, b)
        .into_iter()
        .map(|(peer, _)| peer)
        .min_by_key(|&peer| run.d.degree(peer))?;
    let twins: Vec<NodeId> = run
        .d
        .incident(probe)
        .iter()
        .map(|&e| run.d.edge(e).expect("edge exists").other(probe))
        .filter(|&other| {
            other != b
                && run.d.degree(other) == arity
                && run.d.node(other).is_some_and(NodeKind::is_h0)
        })
        .collect();
    for twin in twins {
        let keep = b.min(twin);
        let remove = b.max(twin);
        let affected = neighbors(run, remove);
        if let Ok(step) = apply_dedup_parallel_h0(&mut run.d, keep, remove) {
            return Some((step, affected));
        }
    }
    None
}

fn x_step(run: &mut Run, x: NodeId) -> Option<(RewriteStep, Vec<NodeId>)> {
    // parallel legs into one Z-spider cancel pairwise
    for (peer, edges) in peers_of(run, x) {
        if edges.len() >= 2 && run.d.node(peer).is_some_and(NodeKind::is_z) {
            return apply_hopf_zx(&mut run.d, edges[0], edges[1])
                .ok()
                .map(|s| (s, vec![peer]));
        }
    }

    // forced value
    if run.d.degree(x) == 1 {
        let z = run.d.edge(run.d.incident(x)[0]).expect("edge exists").other(x);
        if run.d.contains_node(z) && z != x {
            let mut affected = neighbors(run, z);
            for peer in affected.clone() {
                affected.extend(neighbors(run, peer));
            }
            if let Ok(step) = apply_unit_propagate(&mut run.d, x) {
                return Some((step, affected));
            }
        }
    }

    // a binary X-spider between two distinct Z-spiders is a wire; the
    // resulting Z—Z edge fuses on the next visit
    if run.d.degree(x) == 2 {
        let peers = peers_of(run, x);
        if peers.len() == 2 && peers.keys().all(|&p| run.d.node(p).is_some_and(NodeKind::is_z)) {
            let affected: Vec<NodeId> = peers.keys().copied().collect();
            return apply_collapse_binary_x(&mut run.d, x).ok().map(|s| (s, affected));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_count, encode, parse_dimacs};
    use crate::semiring::Natural;

    fn tidied(text: &str) -> Run {
        let f = parse_dimacs(text).unwrap();
        let mut run = Run::new(encode(&f));
        tidy_all(&mut run);
        run
    }

    #[test]
    fn unit_chain_fully_propagates() {
        // units cascade: x1, then ¬x1 ∨ x2 turns into the unit x2
        let run = tidied("p cnf 3 2\n1 0\n-1 2 0\n");
        assert_eq!(run.d.node_count(), 0);
        assert_eq!(run.d.scalar(), &Natural::from(2u32));
    }

    #[test]
    fn contradiction_tidies_to_zero() {
        let run = tidied("p cnf 1 2\n1 0\n-1 0\n");
        assert_eq!(run.d.node_count(), 0);
        assert!(run.d.scalar().is_zero());
    }

    #[test]
    fn duplicates_tautologies_and_doubles() {
        let text = "p cnf 3 4\n1 2 0\n1 2 0\n1 -1 3 0\n2 2 0\n";
        let run = tidied(text);
        let f = parse_dimacs(text).unwrap();
        let expected = brute_force_count(&f).unwrap();
        // (2 2 0) merged to the unit (2), which propagates and satisfies
        // (1 2); the tautology vanished; x1 and x3 end up free
        assert_eq!(run.d.node_count(), 0);
        assert_eq!(run.d.scalar(), &expected);
    }

    #[test]
    fn binary_xor_chain_collapses_by_substitution() {
        // x1⊕x2 = 1 and x2⊕x3 = 1: collapse + fusion solve it outright
        let run = tidied("p cnf 3 2\nx 1 2 0\nx 2 3 0\n");
        assert_eq!(run.d.node_count(), 0);
        assert_eq!(run.d.scalar(), &Natural::from(2u32));
    }

    #[test]
    fn contradictory_binary_xors_zero_out() {
        // x1⊕x2 = 1 and x1⊕x2 = 0 cannot both hold
        let run = tidied("p cnf 2 2\nx 1 2 0\nx 1 -2 0\n");
        assert_eq!(run.d.node_count(), 0);
        assert!(run.d.scalar().is_zero());
    }

    #[test]
    fn duplicate_binary_xors_agree() {
        let text = "p cnf 2 2\nx 1 2 0\nx 1 2 0\n";
        let run = tidied(text);
        let f = parse_dimacs(text).unwrap();
        assert_eq!(run.d.scalar(), &brute_force_count(&f).unwrap());
        assert_eq!(run.d.node_count(), 0);
    }

    #[test]
    fn xor_with_duplicate_variable_cancels() {
        // x1 ⊕ x1 ⊕ x2 = 1 is just x2 = 1
        let text = "p cnf 2 1\nx 1 1 2 0\n";
        let run = tidied(text);
        assert_eq!(run.d.node_count(), 0);
        assert_eq!(run.d.scalar(), &Natural::from(2u32));
    }

    #[test]
    fn general_clauses_are_left_for_elimination() {
        let run = tidied("p cnf 3 2\n1 2 3 0\n-1 -2 0\n");
        // nothing tidyable: structure must survive untouched
        assert_eq!(run.d.node_count(), 5);
        assert!(run.steps.is_empty());
    }

    #[test]
    fn tidy_preserves_counts_on_random_formulas() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6u32);
            let m = rng.gen_range(0..=6usize);
            let mut text = format!("p cnf {n} {m}\n");
            for _ in 0..m {
                if rng.gen_bool(0.3) {
                    text.push_str("x ");
                }
                let k = rng.gen_range(1..=3usize);
                for _ in 0..k {
                    let v = rng.gen_range(1..=n);
                    if rng.gen_bool(0.5) {
                        text.push('-');
                    }
                    text.push_str(&format!("{v} "));
                }
                text.push_str("0\n");
            }
            let f = parse_dimacs(&text).unwrap();
            let expected = brute_force_count(&f).unwrap();
            let mut run = Run::new(encode(&f));
            tidy_all(&mut run);
            let residual = run.d.contract_scalar(64).unwrap();
            assert_eq!(residual, expected, "{text}");
        }
    }
}
