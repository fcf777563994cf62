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

//! Condensed normal forms: a diagram for any natural-valued tensor.
//!
//! One Z-spider per index copies the wire value to one coefficient
//! gadget per index bitstring; the gadget for bitstring `b` is an H-box
//! holding the coefficient, attached through edges negated wherever `b`
//! has a zero bit, so it fires exactly at index `b`. Gadgets whose
//! coefficient is 1 are omitted, which is what makes the form condensed.

use super::{Diagram, NodeKind, ValueTensor};

/// Builds an open diagram whose contraction reproduces `t` exactly.
pub fn build_normal_form(t: &ValueTensor) -> Diagram {
    assert_eq!(t.coefficients.len(), 1usize << t.arity);
    let mut d = Diagram::new();
    let mut spiders = Vec::with_capacity(t.arity);
    for _ in 0..t.arity {
        let b = d.add_node(NodeKind::Boundary);
        let z = d.add_node(NodeKind::ZSpider);
        d.add_edge(b, z, false);
        spiders.push(z);
    }
    for (index, coefficient) in t.coefficients.iter().enumerate() {
        if coefficient.is_one() {
            continue;
        }
        let gadget = d.add_node(NodeKind::HBox(coefficient.clone()));
        for (j, &z) in spiders.iter().enumerate() {
            let bit = (index >> j) & 1 == 1;
            d.add_edge(z, gadget, !bit);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Carrier, Natural};

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn degenerate_scalar_form() {
        let t = ValueTensor::scalar(nat(5));
        let d = build_normal_form(&t);
        assert_eq!(d.node_count(), 1);
        assert_eq!(d.contract_scalar(24).unwrap(), nat(5));
    }

    #[test]
    fn scalar_one_is_fully_condensed() {
        let t = ValueTensor::scalar(nat(1));
        let d = build_normal_form(&t);
        assert_eq!(d.node_count(), 0);
        assert_eq!(d.contract_scalar(24).unwrap(), nat(1));
    }

    #[test]
    fn basis_effect_round_trips() {
        let t = ValueTensor { arity: 1, coefficients: vec![nat(1), nat(0)] };
        let d = build_normal_form(&t);
        assert_eq!(d.contract(Carrier::Nat, 24).unwrap(), t);
    }

    #[test]
    fn nand_table_condenses_to_one_box() {
        let t = ValueTensor {
            arity: 2,
            coefficients: vec![nat(1), nat(1), nat(1), nat(0)],
        };
        let d = build_normal_form(&t);
        // condensed: only the all-ones entry needs a gadget, and it is H(0)
        assert_eq!(
            d.nodes().filter(|(_, k)| k.is_h0()).count(),
            1,
        );
        assert_eq!(d.contract(Carrier::Nat, 24).unwrap(), t);
    }

    #[test]
    fn slicing_matches_plugging() {
        // slice of the NAND table at leg 0 fixed to 0 is the all-ones pair
        let t = ValueTensor {
            arity: 2,
            coefficients: vec![nat(1), nat(1), nat(1), nat(0)],
        };
        let mut d = build_normal_form(&t);
        d.plug_basis(0, false).unwrap();
        let sliced = d.contract(Carrier::Nat, 24).unwrap();
        assert_eq!(sliced.arity, 1);
        assert_eq!(sliced.coefficients, vec![nat(1), nat(1)]);
    }

    #[test]
    fn plugging_the_all_ones_leg_kills_h0() {
        let t = ValueTensor { arity: 1, coefficients: vec![nat(1), nat(0)] };
        let mut d = build_normal_form(&t);
        d.plug_basis(0, true).unwrap();
        assert_eq!(d.contract_scalar(24).unwrap(), nat(0));
    }
}
