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

//! 2SAT decision by boolean resolution.
//!
//! Over the booleans the counting correction vanishes, so killing a
//! variable leaves nothing but arity-2 resolvents. With duplicate boxes
//! removed after every round, a spider's arity stays linear in the
//! number of remaining variables — that bound is enforced here, not just
//! claimed — and exactly one elimination happens per variable.

use super::tidy::{tidy, tidy_all};
use super::{Run, StrategyError, StrategyReport};
use crate::cnf::{encode, Formula};
use crate::diagram::NodeId;
use crate::rewrite::apply_elim_var_2sat;
use crate::semiring::{project, Value};

/// Decides a two-literal OR formula by iterated boolean resolution.
pub fn decide_2sat(f: &Formula) -> Result<StrategyReport, StrategyError> {
    if !f.is_pure_or() {
        return Err(StrategyError::Routing("formula contains XOR clauses".into()));
    }
    if let Some(index) = f.clauses().iter().position(|c| c.len() > 2) {
        return Err(StrategyError::Routing(format!(
            "clause {} has more than two literals",
            index + 1
        )));
    }

    let mut run = Run::new(encode(f));
    tidy_all(&mut run);
    loop {
        let spiders: Vec<NodeId> =
            run.d.nodes().filter(|(_, k)| k.is_z()).map(|(id, _)| id).collect();
        if spiders.is_empty() {
            break;
        }
        // the paper-level bound this strategy is supposed to maintain
        let cap = 2 * spiders.len();
        for &z in &spiders {
            let arity = run.d.degree(z);
            if arity > cap {
                return Err(StrategyError::BoundViolated(format!(
                    "spider {z} has arity {arity} with {} variables remaining (cap {cap})",
                    spiders.len()
                )));
            }
        }
        // fewest resolvents first
        let z = spiders
            .iter()
            .copied()
            .min_by_key(|&z| {
                let plain = run.d.plain_degree(z);
                let negated = run.d.degree(z) - plain;
                (plain * negated, z)
            })
            .expect("nonempty");
        let step = apply_elim_var_2sat(&mut run.d, z).map_err(|err| {
            StrategyError::BoundViolated(format!("tidied spider had no valid site: {err}"))
        })?;
        let mut dirty: Vec<NodeId> = step.produced_nodes.clone();
        for &e in &step.produced_edges {
            if let Some(edge) = run.d.edge(e) {
                dirty.extend([edge.u, edge.v]);
            }
        }
        run.record(step);
        tidy(&mut run, dirty);
    }
    debug_assert_eq!(run.d.node_count(), 0);
    let sat = project(run.d.scalar());
    Ok(run.into_report(Value::Decision(sat), false))
}
