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

//! Reference contraction: the semantic oracle.
//!
//! The value of a diagram is the sum, over all assignments of a bit to
//! every edge, of the product of generator weights at every node. This
//! module computes that sum directly. It is deliberately naive — the
//! rewrite strategies exist to avoid it — but it is the ground truth that
//! every rewrite rule is checked against, so it stays close to the
//! definition: the only liberty taken is skipping subtrees whose product
//! is already provably zero, which cannot change the sum.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{Diagram, NodeId, NodeKind};
use crate::semiring::{project, Carrier, Natural};

/// The weight a generator contributes when its legs observe `bits`.
///
/// Z-spiders are the Kronecker delta (arity 0: the scalar 2), H(α) is
/// all-ones except α on the all-ones index (arity 0: α), X-spiders are
/// the parity tensor (arity 0: 1 for parity 0, 0 for parity 1), and
/// boundary stubs always weigh 1.
pub fn node_weight(kind: &NodeKind, bits: &[bool]) -> Natural {
    match kind {
        NodeKind::ZSpider => {
            if bits.is_empty() {
                Natural::from(2u32)
            } else if bits.iter().all(|&b| b) || bits.iter().all(|&b| !b) {
                Natural::one()
            } else {
                Natural::zero()
            }
        }
        NodeKind::HBox(alpha) => {
            if bits.iter().all(|&b| b) {
                alpha.clone()
            } else {
                Natural::one()
            }
        }
        NodeKind::XSpider(parity) => {
            let p = bits.iter().fold(false, |acc, &b| acc ^ b);
            if p == *parity {
                Natural::one()
            } else {
                Natural::zero()
            }
        }
        NodeKind::Boundary => Natural::one(),
    }
}

/// Coefficient table of an open diagram. Entry `i` is the coefficient at
/// the boundary bitstring whose j-th bit is `(i >> j) & 1`, with positions
/// following the diagram's boundary order. A closed diagram has arity 0
/// and a single entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTensor {
    pub arity: usize,
    pub coefficients: Vec<Natural>,
}

impl ValueTensor {
    pub fn scalar(value: Natural) -> ValueTensor {
        ValueTensor { arity: 0, coefficients: vec![value] }
    }

    pub fn coefficient(&self, bits: &[bool]) -> &Natural {
        assert_eq!(bits.len(), self.arity);
        let mut idx = 0usize;
        for (j, &b) in bits.iter().enumerate() {
            if b {
                idx |= 1 << j;
            }
        }
        &self.coefficients[idx]
    }

    /// Entrywise projection into {0, 1}.
    pub fn projected(&self) -> ValueTensor {
        ValueTensor {
            arity: self.arity,
            coefficients: self
                .coefficients
                .iter()
                .map(|c| if project(c) { Natural::one() } else { Natural::zero() })
                .collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractError {
    #[error(
        "diagram too large to contract: {internal} internal edge(s) + {boundary} boundary wire(s) \
         exceeds the wire limit of {wire_limit}; use a rewrite strategy instead"
    )]
    TooManyWires { internal: usize, boundary: usize, wire_limit: usize },
}

// Per-node accumulator while sweeping edge assignments.
struct NodeState {
    kind_tag: KindTag,
    slots_total: u32,
    slots_seen: u32,
    // Z: the common value once one leg has been observed
    z_val: Option<bool>,
    // X: running parity of observed legs
    x_acc: bool,
    // H: number of observed zero legs
    h_zeros: u32,
}

enum KindTag {
    Z,
    H { alpha: Natural },
    X { parity: bool },
}

enum Observe {
    Ok,
    // node fully observed, contributing a factor ≠ 1
    Factor(Natural),
    // this subtree's product is zero
    Dead,
}

impl NodeState {
    fn observe(&mut self, bit: bool) -> Observe {
        self.slots_seen += 1;
        match &self.kind_tag {
            KindTag::Z => {
                match self.z_val {
                    None => self.z_val = Some(bit),
                    Some(v) if v != bit => return Observe::Dead,
                    Some(_) => {}
                }
                Observe::Ok
            }
            KindTag::X { parity } => {
                self.x_acc ^= bit;
                if self.slots_seen == self.slots_total && self.x_acc != *parity {
                    return Observe::Dead;
                }
                Observe::Ok
            }
            KindTag::H { alpha } => {
                if !bit {
                    self.h_zeros += 1;
                }
                if self.slots_seen == self.slots_total && self.h_zeros == 0 {
                    if alpha.is_zero() {
                        return Observe::Dead;
                    }
                    if !alpha.is_one() {
                        return Observe::Factor(alpha.clone());
                    }
                }
                Observe::Ok
            }
        }
    }

    fn unobserve(&mut self, bit: bool) {
        self.slots_seen -= 1;
        match &self.kind_tag {
            KindTag::Z => {
                if self.slots_seen == 0 {
                    self.z_val = None;
                }
            }
            KindTag::X { .. } => self.x_acc ^= bit,
            KindTag::H { .. } => {
                if !bit {
                    self.h_zeros -= 1;
                }
            }
        }
    }
}

enum Pin {
    // deliver index bit of boundary position `pos`, xor `flip`, to `state`
    Deliver { pos: usize, state: usize, flip: bool },
    // a wire between boundary positions i and j: bit_j must equal bit_i ^ flip
    Tie { i: usize, j: usize, flip: bool },
    // a looped wire on one boundary node: satisfiable iff !flip
    SelfTie { flip: bool },
}

struct Sweep {
    states: Vec<NodeState>,
    // for each internal edge, its two endpoint slots as
    // (state index, delivered bit = edge bit ^ flip)
    slots_per_edge: Vec<[(usize, bool); 2]>,
    order: Vec<usize>,
    pins: Vec<Pin>,
    prefactor: Natural,
}

impl Diagram {
    /// Contracts the diagram by summing over all edge-bit assignments.
    ///
    /// The coefficient at each boundary index is
    /// `scalar × Σ_assignments Π_nodes node_weight`, computed exactly in
    /// ℕ; for `Carrier::Bool` the entries are then projected. Refuses
    /// diagrams whose internal edge count plus boundary size exceeds
    /// `wire_limit`.
    pub fn contract(
        &self,
        carrier: Carrier,
        wire_limit: usize,
    ) -> Result<ValueTensor, ContractError> {
        let boundary_edges: BTreeSet<_> = self
            .boundary()
            .iter()
            .flat_map(|&b| self.incident(b).iter().copied())
            .collect();
        let internal = self.edge_count() - boundary_edges.len();
        let boundary = self.boundary().len();
        if internal + boundary > wire_limit {
            return Err(ContractError::TooManyWires { internal, boundary, wire_limit });
        }

        let mut sweep = self.prepare_sweep();
        let mut coefficients = Vec::with_capacity(1 << boundary);
        for index in 0u64..(1u64 << boundary) {
            let bits: Vec<bool> = (0..boundary).map(|j| (index >> j) & 1 == 1).collect();
            coefficients.push(sum_for_index(&mut sweep, &bits));
        }
        let tensor = ValueTensor { arity: boundary, coefficients };
        Ok(match carrier {
            Carrier::Nat => tensor,
            Carrier::Bool => tensor.projected(),
        })
    }

    /// Contraction of a closed diagram to its single scalar value over ℕ.
    pub fn contract_scalar(&self, wire_limit: usize) -> Result<Natural, ContractError> {
        debug_assert!(self.is_closed());
        Ok(self.contract(Carrier::Nat, wire_limit)?.coefficients.remove(0))
    }

    fn prepare_sweep(&self) -> Sweep {
        let boundary_pos: BTreeMap<NodeId, usize> = self
            .boundary()
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, i))
            .collect();

        let mut state_of: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut states = Vec::new();
        let mut prefactor = self.scalar().clone();
        for (id, kind) in self.nodes() {
            if kind.is_boundary() {
                continue;
            }
            if self.degree(id) == 0 {
                prefactor *= &node_weight(kind, &[]);
                continue;
            }
            let kind_tag = match kind {
                NodeKind::ZSpider => KindTag::Z,
                NodeKind::HBox(alpha) => KindTag::H { alpha: alpha.clone() },
                NodeKind::XSpider(parity) => KindTag::X { parity: *parity },
                NodeKind::Boundary => unreachable!(),
            };
            state_of.insert(id, states.len());
            states.push(NodeState {
                kind_tag,
                slots_total: self.degree(id) as u32,
                slots_seen: 0,
                z_val: None,
                x_acc: false,
                h_zeros: 0,
            });
        }

        let mut slots_per_edge = Vec::new();
        let mut pins = Vec::new();
        for (_, edge) in self.edges() {
            let bu = boundary_pos.get(&edge.u).copied();
            let bv = boundary_pos.get(&edge.v).copied();
            match (bu, bv) {
                (None, None) => {
                    slots_per_edge
                        .push([(state_of[&edge.u], false), (state_of[&edge.v], edge.negated)]);
                }
                (Some(i), Some(j)) => {
                    if edge.is_loop() {
                        pins.push(Pin::SelfTie { flip: edge.negated });
                    } else {
                        pins.push(Pin::Tie { i, j, flip: edge.negated });
                    }
                }
                (Some(pos), None) => {
                    // index bit is the raw edge bit; v observes it ^ negated
                    pins.push(Pin::Deliver {
                        pos,
                        state: state_of[&edge.v],
                        flip: edge.negated,
                    });
                }
                (None, Some(pos)) => {
                    // index bit = edge bit ^ negated; u observes the raw bit
                    pins.push(Pin::Deliver {
                        pos,
                        state: state_of[&edge.u],
                        flip: edge.negated,
                    });
                }
            }
        }

        // order internal edges so Z-spider forcing prunes early: grow
        // outward from nodes pinned by the boundary
        let mut touched: Vec<bool> = vec![false; states.len()];
        for pin in &pins {
            if let Pin::Deliver { state, .. } = pin {
                touched[*state] = true;
            }
        }
        let n_edges = slots_per_edge.len();
        let mut order = Vec::with_capacity(n_edges);
        let mut used = vec![false; n_edges];
        for _ in 0..n_edges {
            let mut best: Option<(u8, usize)> = None;
            for (k, slots) in slots_per_edge.iter().enumerate() {
                if used[k] {
                    continue;
                }
                let score = slots
                    .iter()
                    .map(|&(s, _)| match (touched[s], matches!(states[s].kind_tag, KindTag::Z)) {
                        (true, true) => 2u8,
                        (true, false) => 1,
                        _ => 0,
                    })
                    .max()
                    .unwrap();
                if best.map_or(true, |(bs, _)| score > bs) {
                    best = Some((score, k));
                    if score == 2 {
                        break;
                    }
                }
            }
            let (_, k) = best.expect("an edge remains");
            used[k] = true;
            for &(s, _) in &slots_per_edge[k] {
                touched[s] = true;
            }
            order.push(k);
        }

        Sweep { states, slots_per_edge, order, pins, prefactor }
    }
}

fn sum_for_index(sweep: &mut Sweep, index_bits: &[bool]) -> Natural {
    let mut applied: Vec<(usize, bool)> = Vec::new();
    let mut product = sweep.prefactor.clone();
    let mut dead = false;
    for k in 0..sweep.pins.len() {
        match sweep.pins[k] {
            Pin::Deliver { pos, state, flip } => {
                let bit = index_bits[pos] ^ flip;
                match sweep.states[state].observe(bit) {
                    Observe::Ok => {}
                    Observe::Factor(f) => product *= &f,
                    Observe::Dead => dead = true,
                }
                applied.push((state, bit));
            }
            Pin::Tie { i, j, flip } => {
                if index_bits[j] != index_bits[i] ^ flip {
                    dead = true;
                }
            }
            Pin::SelfTie { flip } => {
                if flip {
                    dead = true;
                }
            }
        }
        if dead {
            break;
        }
    }

    let total = if dead {
        Natural::zero()
    } else {
        let mut acc = Natural::zero();
        dfs(sweep, 0, &product, &mut acc);
        acc
    };

    for &(state, bit) in applied.iter().rev() {
        sweep.states[state].unobserve(bit);
    }
    total
}

fn dfs(sweep: &mut Sweep, depth: usize, product: &Natural, acc: &mut Natural) {
    if depth == sweep.order.len() {
        *acc += product;
        return;
    }
    let k = sweep.order[depth];
    let slots = sweep.slots_per_edge[k];
    for bit in [false, true] {
        let mut local: [(usize, bool); 2] = [(usize::MAX, false); 2];
        let mut n_local = 0;
        let mut next_product: Option<Natural> = None;
        let mut dead = false;
        for (s, flip) in slots {
            let delivered = bit ^ flip;
            let res = sweep.states[s].observe(delivered);
            local[n_local] = (s, delivered);
            n_local += 1;
            match res {
                Observe::Ok => {}
                Observe::Factor(f) => {
                    let p = next_product.get_or_insert_with(|| product.clone());
                    *p *= &f;
                }
                Observe::Dead => {
                    dead = true;
                    break;
                }
            }
        }
        if !dead {
            match &next_product {
                Some(p) => dfs(sweep, depth + 1, p, acc),
                None => dfs(sweep, depth + 1, product, acc),
            }
        }
        for &(s, delivered) in local[..n_local].iter().rev() {
            sweep.states[s].unobserve(delivered);
        }
    }
}
