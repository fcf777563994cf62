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

//! End-to-end solvers: schedule rewrites until every wire is gone and
//! read the answer off the residual scalar.
//!
//! Each strategy owns one diagram for its whole run and is deterministic
//! given the formula and parameters: every choice is tie-broken by lowest
//! node id. The dispatcher routes pure-XOR formulas to the bialgebra
//! eliminator, two-literal decision problems to boolean resolution, and
//! everything else to the counting eliminations with an exact
//! enumeration fallback for whatever the rules cannot reach.

mod fallback;
mod general;
mod tidy;
mod twosat;
mod xorsat;

pub use general::{
    count_sharpsat, decide_sat, sharpsat_elimination_stats, solve_mixed, EliminationStats,
    GeneralOptions,
};
pub use twosat::decide_2sat;
pub use xorsat::count_xorsat;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::Formula;
use crate::diagram::Diagram;
use crate::rewrite::RewriteStep;
use crate::semiring::{project, Value};

/// What a solver is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Count,
    Decide,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    /// The formula does not fit the requested strategy.
    #[error("strategy cannot handle this formula: {0}")]
    Routing(String),
    /// A configured size limit was hit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// An enforced structural bound failed at run time.
    #[error("enforced bound violated: {0}")]
    BoundViolated(String),
}

/// Outcome of one solver run.
#[derive(Debug, Clone)]
pub struct StrategyReport {
    pub answer: Value,
    /// The rewrite trace, in application order.
    pub steps: Vec<RewriteStep>,
    pub peak_box_count: usize,
    pub peak_box_arity: usize,
    pub fallback_used: bool,
    /// Diagnostics that do not affect the answer (e.g. the quadratic
    /// edge-bound observation). Not serialized.
    pub notes: Vec<String>,
}

impl StrategyReport {
    /// Summary serialization: answer, step count, peak metrics, fallback.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary<'a> {
            answer: &'a str,
            steps: usize,
            peak_box_count: usize,
            peak_box_arity: usize,
            fallback_used: bool,
        }
        let answer = match &self.answer {
            Value::Count(n) => n.to_decimal(),
            Value::Decision(true) => "SAT".to_string(),
            Value::Decision(false) => "UNSAT".to_string(),
        };
        serde_json::to_string(&Summary {
            answer: &answer,
            steps: self.steps.len(),
            peak_box_count: self.peak_box_count,
            peak_box_arity: self.peak_box_arity,
            fallback_used: self.fallback_used,
        })
        .expect("report serializes")
    }

    fn project_answer(mut self) -> StrategyReport {
        if let Value::Count(n) = &self.answer {
            self.answer = Value::Decision(project(n));
        }
        self
    }
}

/// Routes a formula to the fitting strategy.
///
/// Pure XOR goes to the bialgebra eliminator (projected for decision);
/// two-literal OR formulas go to boolean resolution when deciding and to
/// the counting elimination when counting; general OR formulas go to the
/// counting or resolution eliminations; mixed formulas are handled by
/// eliminating the XOR sector with the bialgebra first and the rest by
/// counting elimination, deciding via projection.
pub fn solve_auto(
    f: &Formula,
    mode: Mode,
    options: &GeneralOptions,
) -> Result<StrategyReport, StrategyError> {
    if f.is_pure_xor() {
        let report = count_xorsat(f)?;
        return Ok(match mode {
            Mode::Count => report,
            Mode::Decide => report.project_answer(),
        });
    }
    if f.is_two_sat() && mode == Mode::Decide {
        return decide_2sat(f);
    }
    if f.is_pure_or() {
        return match mode {
            Mode::Count => count_sharpsat(f, options),
            Mode::Decide => decide_sat(f, options),
        };
    }
    let report = solve_mixed(f, options)?;
    Ok(match mode {
        Mode::Count => report,
        Mode::Decide => report.project_answer(),
    })
}

// Shared run state: the diagram being rewritten, the trace, and the peak
// instrumentation for the box-growth diagnostics.
pub(crate) struct Run {
    pub d: Diagram,
    pub steps: Vec<RewriteStep>,
    pub peak_box_count: usize,
    pub peak_box_arity: usize,
    pub notes: Vec<String>,
}

impl Run {
    pub fn new(d: Diagram) -> Run {
        let mut run =
            Run { d, steps: Vec::new(), peak_box_count: 0, peak_box_arity: 0, notes: Vec::new() };
        run.observe_peaks();
        run
    }

    pub fn record(&mut self, step: RewriteStep) {
        let grew = !step.produced_nodes.is_empty() || !step.produced_edges.is_empty();
        self.steps.push(step);
        if grew {
            self.observe_peaks();
        }
    }

    fn observe_peaks(&mut self) {
        let mut count = 0usize;
        let mut arity = 0usize;
        for (id, kind) in self.d.nodes() {
            if kind.is_hbox() {
                count += 1;
                arity = arity.max(self.d.degree(id));
            }
        }
        self.peak_box_count = self.peak_box_count.max(count);
        self.peak_box_arity = self.peak_box_arity.max(arity);
    }

    pub fn into_report(self, answer: Value, fallback_used: bool) -> StrategyReport {
        StrategyReport {
            answer,
            steps: self.steps,
            peak_box_count: self.peak_box_count,
            peak_box_arity: self.peak_box_arity,
            fallback_used,
            notes: self.notes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_count, parse_dimacs};
    use crate::semiring::Natural;

    #[test]
    fn dispatcher_consistency_on_small_formulas() {
        let options = GeneralOptions::default();
        let texts = [
            "p cnf 3 2\nx 1 2 0\nx 2 3 0\n",
            "p cnf 3 2\n1 2 0\n-2 3 0\n",
            "p cnf 4 3\n1 2 3 0\n-1 -2 0\n3 4 0\n",
            "p cnf 3 2\n1 2 0\nx 2 3 0\n",
        ];
        for text in texts {
            let f = parse_dimacs(text).unwrap();
            let expected = brute_force_count(&f).unwrap();
            let count = solve_auto(&f, Mode::Count, &options).unwrap();
            assert_eq!(count.answer, Value::Count(expected.clone()), "{text}");
            let decide = solve_auto(&f, Mode::Decide, &options).unwrap();
            assert_eq!(
                decide.answer,
                Value::Decision(crate::semiring::project(&expected)),
                "{text}"
            );
        }
    }

    #[test]
    fn report_serialization() {
        let report = StrategyReport {
            answer: Value::Count(Natural::from(12u32)),
            steps: Vec::new(),
            peak_box_count: 3,
            peak_box_arity: 2,
            fallback_used: false,
            notes: Vec::new(),
        };
        assert_eq!(
            report.to_json(),
            "{\"answer\":\"12\",\"steps\":0,\"peak_box_count\":3,\"peak_box_arity\":2,\"fallback_used\":false}"
        );
        let report = StrategyReport {
            answer: Value::Decision(false),
            steps: Vec::new(),
            peak_box_count: 0,
            peak_box_arity: 0,
            fallback_used: true,
            notes: Vec::new(),
        };
        assert!(report.to_json().contains("\"answer\":\"UNSAT\""));
    }
}
