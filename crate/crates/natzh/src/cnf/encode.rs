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

//! Encoding formulas as closed diagrams.
//!
//! One Z-spider per variable copies its value into every clause it
//! appears in. An OR clause is an H(0) box — the NAND constraint — with
//! every leg negated except where the literal itself is negated, the two
//! negations cancelling. An XOR clause is an X-spider whose parity starts
//! at 1 (the constraint must come out true) and absorbs one flip per
//! negated literal. A variable that appears in no clause is an isolated
//! Z-spider and contributes its two free assignments as the factor 2.

use super::{ClauseKind, Formula};
use crate::diagram::{Diagram, NodeKind};

/// Builds the closed diagram whose contraction over ℕ is the model count
/// of `f` and over 𝔹 its satisfiability.
pub fn encode(f: &Formula) -> Diagram {
    let mut d = Diagram::new();
    let vars: Vec<_> = (0..f.num_vars()).map(|_| d.add_node(NodeKind::ZSpider)).collect();
    for clause in f.clauses() {
        match clause.kind {
            ClauseKind::Or => {
                let gate = d.add_node(NodeKind::h0());
                for lit in clause.literals() {
                    d.add_edge(vars[(lit.variable - 1) as usize], gate, !lit.negated);
                }
            }
            ClauseKind::Xor => {
                let negations = clause.literals().iter().filter(|l| l.negated).count();
                let parity = negations % 2 == 0;
                let gate = d.add_node(NodeKind::XSpider(parity));
                for lit in clause.literals() {
                    d.add_edge(vars[(lit.variable - 1) as usize], gate, false);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{parse_dimacs, Clause, Formula, Literal};
    use crate::semiring::Natural;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn positive_unit_clause_counts_one() {
        let f = Formula::new(1, vec![Clause::or(vec![Literal::pos(1)]).unwrap()]).unwrap();
        assert_eq!(encode(&f).contract_scalar(24).unwrap(), nat(1));
    }

    #[test]
    fn unused_variables_double_the_count() {
        let f = Formula::new(2, vec![Clause::or(vec![Literal::pos(1)]).unwrap()]).unwrap();
        let d = encode(&f);
        assert_eq!(d.contract_scalar(24).unwrap(), nat(2));
    }

    #[test]
    fn binary_xor_with_one_negation() {
        let f = Formula::new(
            2,
            vec![Clause::xor(vec![Literal::pos(1), Literal::neg(2)]).unwrap()],
        )
        .unwrap();
        let d = encode(&f);
        // parity absorbed the negation: 1 ⊕ 1 = 0
        assert_eq!(
            d.nodes().filter(|(_, k)| **k == NodeKind::XSpider(false)).count(),
            1
        );
        // satisfied by 00 and 11
        assert_eq!(d.contract_scalar(24).unwrap(), nat(2));
    }

    #[test]
    fn four_clause_example_structure() {
        let f = parse_dimacs("p cnf 6 4\n-1 2 -3 4 0\n1 -3 5 0\n-3 5 6 0\n2 -6 0\n").unwrap();
        let d = encode(&f);
        let spiders = d.nodes().filter(|(_, k)| k.is_z()).count();
        let boxes: Vec<usize> = d
            .nodes()
            .filter(|(_, k)| k.is_h0())
            .map(|(id, _)| d.degree(id))
            .collect();
        assert_eq!(spiders, 6);
        assert_eq!(boxes, vec![4, 3, 3, 2]);
        assert_eq!(d.edge_count(), 12);
        // 12 all-negated legs minus 5 cancelled by negated literals
        let negated = d.edges().filter(|(_, e)| e.negated).count();
        assert_eq!(negated, 7);
        assert!(d.is_closed());
        assert!(d.validate().is_valid());
    }

    #[test]
    fn structure_counts_match_formula() {
        let f = parse_dimacs("p cnf 3 3\n1 -2 0\nx 2 3 0\n-1 -3 0\n").unwrap();
        let d = encode(&f);
        assert_eq!(d.node_count(), 3 + 3);
        let occurrences: usize = f.clauses().iter().map(|c| c.len()).sum();
        assert_eq!(d.edge_count(), occurrences);
    }
}
