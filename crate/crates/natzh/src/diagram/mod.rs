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

//! The NatZH diagram data model.
//!
//! A diagram is an undirected multigraph whose nodes are generators
//! (Z-spiders, H-boxes with natural parameters, X-spiders with a parity
//! bit, and boundary stubs) and whose edges may carry a negation flag.
//! Self-loops and parallel edges are permitted everywhere; wire negation
//! lives on edges rather than as its own node, so double negations cancel
//! by construction.
//!
//! Node and edge ids are allocated monotonically and never reused, which
//! keeps rewrite traces unambiguous, and all storage is ordered so that
//! iteration (and therefore every solver run) is deterministic.

mod contract;
mod json;
mod normal_form;

pub use contract::{node_weight, ContractError, ValueTensor};
pub use json::DiagramRepr;
pub use normal_form::build_normal_form;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::semiring::Natural;

/// Identifier of a node within one diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

/// Identifier of an edge within one diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The generators a NatZH diagram is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// Z-spider (white dot): 1 when all incident wire bits agree, else 0.
    /// At arity 0 it is the scalar 2.
    ZSpider,
    /// H-box with parameter α ∈ ℕ: α on the all-ones index, 1 elsewhere.
    /// At arity 0 it is the scalar α. H(0) is the OR/NAND constraint.
    HBox(Natural),
    /// X-spider (gray dot): 1 when the incident wire bits XOR to the
    /// parity, else 0. Parity 1 is the NOT-spider, the XOR constraint.
    /// At arity 0 it is 1 (parity 0) or 0 (parity 1).
    XSpider(bool),
    /// Boundary stub: a dangling wire end. Exactly one incident edge.
    Boundary,
}

impl NodeKind {
    pub fn h0() -> NodeKind {
        NodeKind::HBox(Natural::zero())
    }

    pub fn is_z(&self) -> bool {
        matches!(self, NodeKind::ZSpider)
    }

    pub fn is_hbox(&self) -> bool {
        matches!(self, NodeKind::HBox(_))
    }

    pub fn is_h0(&self) -> bool {
        matches!(self, NodeKind::HBox(p) if p.is_zero())
    }

    pub fn is_x(&self) -> bool {
        matches!(self, NodeKind::XSpider(_))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, NodeKind::Boundary)
    }
}

/// An edge between two (not necessarily distinct) nodes.
///
/// The edge carries a bit; the first endpoint observes that bit and the
/// second observes it XOR `negated`. All generator tensors are
/// leg-symmetric, so the ordering only anchors the negation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub negated: bool,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint other than `n`. For self-loops, `n` itself.
    pub fn other(&self, n: NodeId) -> NodeId {
        if self.u == n {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, n: NodeId) -> bool {
        self.u == n || self.v == n
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("node {0} still has {1} incident edge(s)")]
    NodeInUse(NodeId, usize),
    #[error("boundary index {0} out of range (arity {1})")]
    BoundaryIndexOutOfRange(usize, usize),
}

/// An open or closed NatZH multigraph with a scalar accumulator.
///
/// The scalar collects the weights of arity-0 generators stripped by
/// rewriting; the value of the diagram is always `scalar ×` the value of
/// the drawn part.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Incidence {
    edges: Vec<EdgeId>,
    // leg counters, kept in sync so degree queries stay O(log n):
    // self-loops contribute two legs
    degree: u32,
    plain: u32,
}

impl Incidence {
    fn add_legs(&mut self, count: u32, negated: bool) {
        self.degree += count;
        if !negated {
            self.plain += count;
        }
    }

    fn remove_legs(&mut self, count: u32, negated: bool) {
        self.degree -= count;
        if !negated {
            self.plain -= count;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    nodes: BTreeMap<NodeId, NodeKind>,
    edges: BTreeMap<EdgeId, Edge>,
    incidence: BTreeMap<NodeId, Incidence>,
    boundary: Vec<NodeId>,
    scalar: Natural,
    next_node: u32,
    next_edge: u32,
}

impl Default for Diagram {
    fn default() -> Self {
        Self::new()
    }
}

impl Diagram {
    pub fn new() -> Self {
        Diagram {
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            boundary: Vec::new(),
            scalar: Natural::one(),
            next_node: 0,
            next_edge: 0,
        }
    }

    pub fn add_node(&mut self, kind: NodeKind) -> NodeId {
        let id = NodeId(self.next_node);
        self.next_node += 1;
        if kind.is_boundary() {
            self.boundary.push(id);
        }
        self.nodes.insert(id, kind);
        self.incidence.insert(id, Incidence::default());
        id
    }

    /// Adds an edge; the negation flag is observed at the `v` end.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, negated: bool) -> EdgeId {
        debug_assert!(self.nodes.contains_key(&u) && self.nodes.contains_key(&v));
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, Edge { u, v, negated });
        if u == v {
            let inc = self.incidence.get_mut(&u).expect("endpoint exists");
            inc.edges.push(id);
            inc.add_legs(2, negated);
        } else {
            for end in [u, v] {
                let inc = self.incidence.get_mut(&end).expect("endpoint exists");
                inc.edges.push(id);
                inc.add_legs(1, negated);
            }
        }
        id
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge, DiagramError> {
        let edge = self.edges.remove(&id).ok_or(DiagramError::UnknownEdge(id))?;
        let legs = if edge.is_loop() { 2 } else { 1 };
        for end in [edge.u, edge.v] {
            if let Some(inc) = self.incidence.get_mut(&end) {
                inc.edges.retain(|&e| e != id);
                inc.remove_legs(legs, edge.negated);
            }
            if edge.is_loop() {
                break;
            }
        }
        Ok(edge)
    }

    /// Removes an isolated node. Edges must be removed first.
    pub fn remove_node(&mut self, id: NodeId) -> Result<NodeKind, DiagramError> {
        let deg = self
            .incidence
            .get(&id)
            .ok_or(DiagramError::UnknownNode(id))?
            .edges
            .len();
        if deg != 0 {
            return Err(DiagramError::NodeInUse(id, deg));
        }
        self.incidence.remove(&id);
        self.boundary.retain(|&b| b != id);
        Ok(self.nodes.remove(&id).expect("node exists"))
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeKind> {
        self.nodes.get(&id)
    }

    pub fn set_node_kind(&mut self, id: NodeId, kind: NodeKind) {
        if let Some(k) = self.nodes.get_mut(&id) {
            *k = kind;
        }
    }

    /// Flips the parity of an X-spider in place. No-op on other kinds.
    pub fn flip_x_parity(&mut self, id: NodeId) {
        if let Some(NodeKind::XSpider(p)) = self.nodes.get_mut(&id) {
            *p = !*p;
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn set_edge_negated(&mut self, id: EdgeId, negated: bool) {
        if self.edges.get(&id).is_some_and(|e| e.negated != negated) {
            self.toggle_edge_negated(id);
        }
    }

    pub fn toggle_edge_negated(&mut self, id: EdgeId) {
        let Some(e) = self.edges.get_mut(&id) else { return };
        e.negated = !e.negated;
        let (u, v, negated) = (e.u, e.v, e.negated);
        let legs = if u == v { 2 } else { 1 };
        for end in [u, v] {
            if let Some(inc) = self.incidence.get_mut(&end) {
                inc.remove_legs(legs, !negated);
                inc.add_legs(legs, negated);
            }
            if u == v {
                break;
            }
        }
    }

    /// Edge ids incident to a node. Self-loops appear once.
    pub fn incident(&self, id: NodeId) -> &[EdgeId] {
        self.incidence.get(&id).map(|inc| inc.edges.as_slice()).unwrap_or(&[])
    }

    /// Node arity: self-loops contribute two legs.
    pub fn degree(&self, id: NodeId) -> usize {
        self.incidence.get(&id).map_or(0, |inc| inc.degree as usize)
    }

    /// How many of a node's legs sit on plain (non-negated) edges.
    pub fn plain_degree(&self, id: NodeId) -> usize {
        self.incidence.get(&id).map_or(0, |inc| inc.plain as usize)
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains_key(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &NodeKind)> {
        self.nodes.iter().map(|(&id, k)| (id, k))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().map(|(&id, e)| (id, e))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn boundary(&self) -> &[NodeId] {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn scalar(&self) -> &Natural {
        &self.scalar
    }

    pub fn set_scalar(&mut self, s: Natural) {
        self.scalar = s;
    }

    pub fn mul_scalar(&mut self, factor: &Natural) {
        self.scalar *= factor;
    }

    /// Moves every edge end attached to `from` over to `to`, leaving
    /// `from` isolated. Edges between the two become self-loops on `to`.
    pub(crate) fn transfer_edges(&mut self, from: NodeId, to: NodeId) {
        debug_assert_ne!(from, to);
        let ids: Vec<EdgeId> = self.incident(from).to_vec();
        for e in ids {
            let edge = self.edges.get_mut(&e).expect("edge exists");
            let was_on_to = edge.u == to || edge.v == to;
            if edge.u == from {
                edge.u = to;
            }
            if edge.v == from {
                edge.v = to;
            }
            if !was_on_to {
                self.incidence.get_mut(&to).expect("node exists").edges.push(e);
            }
        }
        let from_inc = self.incidence.get_mut(&from).expect("node exists");
        let (deg, plain) = (from_inc.degree, from_inc.plain);
        from_inc.edges.clear();
        from_inc.degree = 0;
        from_inc.plain = 0;
        let to_inc = self.incidence.get_mut(&to).expect("node exists");
        to_inc.degree += deg;
        to_inc.plain += plain;
    }

    /// Re-points exactly one end of an edge from `from` to `to`. For a
    /// self-loop on `from`, moves the `u` end only.
    pub(crate) fn rehome_one_end(&mut self, e: EdgeId, from: NodeId, to: NodeId) {
        debug_assert_ne!(from, to);
        let edge = self.edges.get_mut(&e).expect("edge exists");
        let negated = edge.negated;
        let was_on_to = edge.u == to || edge.v == to;
        let still_on_from;
        if edge.u == from {
            edge.u = to;
            still_on_from = edge.v == from;
        } else {
            debug_assert_eq!(edge.v, from);
            edge.v = to;
            still_on_from = false;
        }
        let from_inc = self.incidence.get_mut(&from).expect("node exists");
        from_inc.remove_legs(1, negated);
        if !still_on_from {
            from_inc.edges.retain(|&x| x != e);
        }
        let to_inc = self.incidence.get_mut(&to).expect("node exists");
        to_inc.add_legs(1, negated);
        if !was_on_to {
            to_inc.edges.push(e);
        }
    }

    /// Detaches boundary node `index`, returning the id of the freed
    /// boundary node and its single edge. Used by basis plugging.
    pub(crate) fn take_boundary(
        &mut self,
        index: usize,
    ) -> Result<(NodeId, EdgeId), DiagramError> {
        let &b = self
            .boundary
            .get(index)
            .ok_or(DiagramError::BoundaryIndexOutOfRange(index, self.boundary.len()))?;
        let edges = self.incident(b);
        debug_assert_eq!(edges.len(), 1, "boundary node must have exactly one edge");
        let e = edges[0];
        self.boundary.remove(index);
        Ok((b, e))
    }

    /// Replaces a boundary node by a basis-state gadget for `bit`:
    /// an arity-1 X-spider with parity equal to the bit. Contraction of
    /// the result equals the slice of the original tensor at that index.
    pub fn plug_basis(&mut self, index: usize, bit: bool) -> Result<NodeId, DiagramError> {
        let (b, e) = self.take_boundary(index)?;
        let edge = self.edges[&e];
        let peer_end_negated = edge.negated;
        let other = edge.other(b);
        let was_loop = edge.is_loop();
        self.remove_edge(e)?;
        self.remove_node(b)?;
        let state = self.add_node(NodeKind::XSpider(bit));
        if was_loop {
            // boundary-to-boundary edge: the peer is gone with `b`
            return Ok(state);
        }
        // keep the negation on the same end it was on
        if edge.u == b {
            self.add_edge(state, other, peer_end_negated);
        } else {
            self.add_edge(other, state, peer_end_negated);
        }
        Ok(state)
    }

    /// Checks the structural invariants and reports every violation.
    /// A valid diagram yields an empty report. H-box parameters are
    /// naturals by construction, so that NatZH invariant cannot be
    /// violated representably.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&id, edge) in &self.edges {
            for end in [edge.u, edge.v] {
                if !self.nodes.contains_key(&end) {
                    violations.push(Violation::DanglingEdge { edge: id, missing: end });
                }
            }
        }
        for (&id, kind) in &self.nodes {
            if kind.is_boundary() {
                let deg = self.degree(id);
                if deg != 1 {
                    violations.push(Violation::BoundaryDegree { node: id, degree: deg });
                }
                let listed = self.boundary.iter().filter(|&&b| b == id).count();
                if listed != 1 {
                    violations.push(Violation::BoundaryListing { node: id, listed });
                }
            }
        }
        for &b in &self.boundary {
            if !matches!(self.nodes.get(&b), Some(NodeKind::Boundary)) {
                violations.push(Violation::BoundaryListing { node: b, listed: 1 });
            }
        }
        ValidationReport { violations }
    }
}

/// A single well-formedness violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A boundary node without exactly one incident edge.
    BoundaryDegree { node: NodeId, degree: usize },
    /// A node listed in the boundary the wrong number of times, or a
    /// listed node that is not a boundary stub.
    BoundaryListing { node: NodeId, listed: usize },
    /// An edge referencing a node that does not exist.
    DanglingEdge { edge: EdgeId, missing: NodeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundaryDegree { node, degree } => {
                write!(f, "boundary node {node} has degree {degree}, expected 1")
            }
            Violation::BoundaryListing { node, listed } => {
                write!(f, "node {node} appears {listed} time(s) in the boundary list")
            }
            Violation::DanglingEdge { edge, missing } => {
                write!(f, "edge {edge} references missing node {missing}")
            }
        }
    }
}

/// Outcome of `Diagram::validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
