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

//! JSON exchange format for diagrams.
//!
//! Scalars and H-box parameters are decimal strings so that values of
//! any magnitude survive the trip.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Diagram, NodeId, NodeKind};
use crate::semiring::Natural;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeRepr {
    pub id: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeRepr {
    pub u: u32,
    pub v: u32,
    pub negated: bool,
}

/// Serializable form of a [`Diagram`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramRepr {
    pub nodes: Vec<NodeRepr>,
    pub edges: Vec<EdgeRepr>,
    pub boundary: Vec<u32>,
    pub scalar: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramJsonError {
    #[error("node {0} has unknown kind `{1}`")]
    UnknownKind(u32, String),
    #[error("node {0}: {1}")]
    BadNode(u32, String),
    #[error("duplicate node id {0}")]
    DuplicateNode(u32),
    #[error("edge references unknown node {0}")]
    UnknownEdgeNode(u32),
    #[error("boundary list entry {0} is not a boundary node")]
    BadBoundaryEntry(u32),
    #[error("boundary node {0} missing from the boundary list")]
    MissingBoundaryEntry(u32),
    #[error("invalid scalar `{0}`")]
    BadScalar(String),
    #[error("malformed json: {0}")]
    Json(String),
}

impl Diagram {
    pub fn to_repr(&self) -> DiagramRepr {
        let nodes = self
            .nodes()
            .map(|(id, kind)| match kind {
                NodeKind::ZSpider => NodeRepr { id: id.0, kind: "z".into(), param: None, parity: None },
                NodeKind::HBox(p) => NodeRepr {
                    id: id.0,
                    kind: "h".into(),
                    param: Some(p.to_decimal()),
                    parity: None,
                },
                NodeKind::XSpider(p) => NodeRepr {
                    id: id.0,
                    kind: "x".into(),
                    param: None,
                    parity: Some(u8::from(*p)),
                },
                NodeKind::Boundary => {
                    NodeRepr { id: id.0, kind: "boundary".into(), param: None, parity: None }
                }
            })
            .collect();
        let edges = self
            .edges()
            .map(|(_, e)| EdgeRepr { u: e.u.0, v: e.v.0, negated: e.negated })
            .collect();
        DiagramRepr {
            nodes,
            edges,
            boundary: self.boundary().iter().map(|b| b.0).collect(),
            scalar: self.scalar().to_decimal(),
        }
    }

    pub fn from_repr(repr: &DiagramRepr) -> Result<Diagram, DiagramJsonError> {
        let mut d = Diagram::new();
        for node in &repr.nodes {
            let kind = match node.kind.as_str() {
                "z" => NodeKind::ZSpider,
                "h" => {
                    let param = node.param.as_deref().ok_or_else(|| {
                        DiagramJsonError::BadNode(node.id, "h-box without param".into())
                    })?;
                    NodeKind::HBox(Natural::from_decimal(param).ok_or_else(|| {
                        DiagramJsonError::BadNode(node.id, format!("bad param `{param}`"))
                    })?)
                }
                "x" => {
                    let parity = node.parity.ok_or_else(|| {
                        DiagramJsonError::BadNode(node.id, "x-spider without parity".into())
                    })?;
                    NodeKind::XSpider(parity != 0)
                }
                "boundary" => NodeKind::Boundary,
                other => return Err(DiagramJsonError::UnknownKind(node.id, other.into())),
            };
            if d.nodes.contains_key(&NodeId(node.id)) {
                return Err(DiagramJsonError::DuplicateNode(node.id));
            }
            d.nodes.insert(NodeId(node.id), kind);
            d.incidence.insert(NodeId(node.id), Default::default());
            d.next_node = d.next_node.max(node.id + 1);
        }
        for edge in &repr.edges {
            for end in [edge.u, edge.v] {
                if !d.nodes.contains_key(&NodeId(end)) {
                    return Err(DiagramJsonError::UnknownEdgeNode(end));
                }
            }
            d.add_edge(NodeId(edge.u), NodeId(edge.v), edge.negated);
        }
        // the boundary list is authoritative, but must agree with kinds
        d.boundary = repr.boundary.iter().map(|&b| NodeId(b)).collect();
        for &b in &d.boundary {
            if !matches!(d.nodes.get(&b), Some(NodeKind::Boundary)) {
                return Err(DiagramJsonError::BadBoundaryEntry(b.0));
            }
        }
        for (&id, kind) in &d.nodes {
            if kind.is_boundary() && d.boundary.iter().filter(|&&b| b == id).count() != 1 {
                return Err(DiagramJsonError::MissingBoundaryEntry(id.0));
            }
        }
        d.scalar = Natural::from_decimal(&repr.scalar)
            .ok_or_else(|| DiagramJsonError::BadScalar(repr.scalar.clone()))?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("diagram repr serializes")
    }

    pub fn from_json(text: &str) -> Result<Diagram, DiagramJsonError> {
        let repr: DiagramRepr =
            serde_json::from_str(text).map_err(|e| DiagramJsonError::Json(e.to_string()))?;
        Diagram::from_repr(&repr)
    }
}
