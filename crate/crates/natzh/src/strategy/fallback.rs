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

//! Exact evaluation of residual CNF-like diagrams.
//!
//! When a counting strategy stops rewriting (arity caps, blocked sites),
//! the diagram that remains still has every edge anchored on a Z-spider,
//! so its value is a sum over spider assignments: each Z-spider picks a
//! bit, every edge bit is forced, and the other generators contribute
//! their weights. That is 2^(#spiders) work instead of the oracle's
//! 2^(#edges), which is what makes the fallback usable at desk scale.

use super::StrategyError;
use crate::diagram::{Diagram, NodeKind};
use crate::semiring::Natural;

/// Evaluates a closed diagram exactly by enumerating Z-spider
/// assignments. Fails when a diagram is not CNF-like (some edge avoids
/// Z-spiders entirely) or has more spiders than `spider_limit`.
pub(crate) fn evaluate(d: &Diagram, spider_limit: usize) -> Result<Natural, StrategyError> {
    debug_assert!(d.is_closed());
    let spiders: Vec<_> = d.nodes().filter(|(_, k)| k.is_z()).map(|(id, _)| id).collect();
    if spiders.len() > spider_limit.min(62) {
        return Err(StrategyError::ResourceLimit(format!(
            "residual diagram has {} spiders, more than the limit of {}",
            spiders.len(),
            spider_limit.min(62)
        )));
    }
    let index_of = |n| spiders.binary_search(&n).ok();

    // per non-spider node: legs as (spider index, flip); per spider pair:
    // equality constraints from direct Z—Z edges
    struct Gate {
        weight_if_all_ones: Natural,
        parity: Option<bool>,
        legs: Vec<(usize, bool)>,
    }
    let mut gates: Vec<Gate> = Vec::new();
    let mut gate_of: std::collections::BTreeMap<_, usize> = Default::default();
    for (id, kind) in d.nodes() {
        match kind {
            NodeKind::ZSpider => {}
            NodeKind::HBox(alpha) => {
                gate_of.insert(id, gates.len());
                gates.push(Gate {
                    weight_if_all_ones: alpha.clone(),
                    parity: None,
                    legs: Vec::new(),
                });
            }
            NodeKind::XSpider(p) => {
                gate_of.insert(id, gates.len());
                gates.push(Gate {
                    weight_if_all_ones: Natural::zero(),
                    parity: Some(*p),
                    legs: Vec::new(),
                });
            }
            NodeKind::Boundary => {
                return Err(StrategyError::ResourceLimit(
                    "residual diagram is not closed".into(),
                ));
            }
        }
    }
    // (spider a, spider b, must_differ) for direct Z—Z edges
    let mut ties: Vec<(usize, usize, bool)> = Vec::new();
    for (_, edge) in d.edges() {
        match (index_of(edge.u), index_of(edge.v)) {
            (Some(a), Some(b)) => {
                if a == b {
                    if edge.negated {
                        return Ok(Natural::zero());
                    }
                    continue;
                }
                ties.push((a, b, edge.negated));
            }
            (Some(a), None) => {
                gates[gate_of[&edge.v]].legs.push((a, edge.negated));
            }
            (None, Some(b)) => {
                gates[gate_of[&edge.u]].legs.push((b, edge.negated));
            }
            (None, None) => {
                return Err(StrategyError::ResourceLimit(
                    "residual diagram has an edge with no spider endpoint".into(),
                ));
            }
        }
    }

    let mut total = Natural::zero();
    let n = spiders.len();
    'assignments: for assignment in 0u64..(1u64 << n) {
        let bit = |i: usize| (assignment >> i) & 1 == 1;
        for &(a, b, differ) in &ties {
            if (bit(a) ^ bit(b)) != differ {
                continue 'assignments;
            }
        }
        let mut product: Option<Natural> = None;
        for gate in &gates {
            match gate.parity {
                Some(p) => {
                    let mut acc = false;
                    for &(i, flip) in &gate.legs {
                        acc ^= bit(i) ^ flip;
                    }
                    if acc != p {
                        continue 'assignments;
                    }
                }
                None => {
                    let all_ones = gate.legs.iter().all(|&(i, flip)| bit(i) ^ flip);
                    if all_ones {
                        if gate.weight_if_all_ones.is_zero() {
                            continue 'assignments;
                        }
                        if !gate.weight_if_all_ones.is_one() {
                            let p = product.get_or_insert_with(Natural::one);
                            *p *= &gate.weight_if_all_ones;
                        }
                    }
                }
            }
        }
        total += &product.unwrap_or_else(Natural::one);
    }
    Ok(total * d.scalar())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_count, encode, parse_dimacs};
    use crate::semiring::Carrier;

    #[test]
    fn matches_the_contraction_oracle() {
        let texts = [
            "p cnf 3 2\n1 2 3 0\n-1 -2 0\n",
            "p cnf 4 4\n1 2 0\n-2 3 0\nx 3 4 0\n-1 4 0\n",
            "p cnf 2 2\n1 0\n-1 0\n",
            "p cnf 5 0\n",
        ];
        for text in texts {
            let f = parse_dimacs(text).unwrap();
            let d = encode(&f);
            assert_eq!(
                evaluate(&d, 24).unwrap(),
                brute_force_count(&f).unwrap(),
                "{text}"
            );
            assert_eq!(
                evaluate(&d, 24).unwrap(),
                d.contract(Carrier::Nat, 64).unwrap().coefficients[0],
                "{text}"
            );
        }
    }

    #[test]
    fn respects_the_spider_limit() {
        let f = parse_dimacs("p cnf 6 1\n1 2 0\n").unwrap();
        let d = encode(&f);
        assert!(matches!(
            evaluate(&d, 3),
            Err(StrategyError::ResourceLimit(_))
        ));
    }

    #[test]
    fn handles_h2_correction_boxes() {
        use crate::diagram::{Diagram, NodeKind};
        use crate::semiring::Natural;
        // Z—H(2): Σ_t H2(t) = 1 + 2
        let mut d = Diagram::new();
        let z = d.add_node(NodeKind::ZSpider);
        let h = d.add_node(NodeKind::HBox(Natural::from(2u32)));
        d.add_edge(z, h, false);
        assert_eq!(evaluate(&d, 24).unwrap(), Natural::from(3u32));
        assert_eq!(d.contract_scalar(24).unwrap(), Natural::from(3u32));
    }
}
