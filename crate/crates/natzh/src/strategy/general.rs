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

//! General CNF strategies.
//!
//! Counting eliminates variables with the correction-carrying rules,
//! preferring sites with the fewest resolvents. The corrections are what
//! make exact counting possible, and also what eventually blocks the
//! rewriting: H(2) boxes stop neighboring sites, one-sided general sites
//! reproduce themselves, and capped arities stop wide resolvents. The
//! run therefore finishes on an exact enumeration of whatever diagram is
//! left. Decision drops the corrections (boolean resolution), which
//! never blocks, so it always reaches full simplification — at the price
//! of resolvents whose arity is unbounded.

use super::fallback;
use super::tidy::{tidy, tidy_all};
use super::xorsat::{eliminate_xor_variable, pick_xor_variable};
use super::{Run, StrategyError, StrategyReport};
use crate::cnf::{encode, ClauseKind, Formula};
use crate::diagram::NodeId;
use crate::rewrite::{
    apply_elim_var_sat, apply_elim_var_sharp2sat, apply_elim_var_sharpsat, elim_site_arities,
};
use crate::semiring::{project, Value};

/// Knobs for the general strategies and the dispatcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralOptions {
    /// Largest box arity an elimination may create (counting only).
    pub max_box_arity: usize,
    /// Size budget for exact evaluation of residual diagrams.
    pub wire_limit: usize,
    /// Whether a blocked counting run may finish by exact enumeration.
    pub fallback: bool,
}

impl Default for GeneralOptions {
    fn default() -> Self {
        GeneralOptions { max_box_arity: 16, wire_limit: 24, fallback: true }
    }
}

// One elimination round: the best applicable spider, or None.
fn pick_counting_site(run: &Run, max_box_arity: usize) -> Option<(NodeId, bool)> {
    let mut best: Option<(usize, NodeId, bool)> = None;
    for (z, kind) in run.d.nodes() {
        if !kind.is_z() {
            continue;
        }
        let Some(fanout) = elim_site_arities(&run.d, z) else { continue };
        // a one-sided general site only rebuilds itself; leave it for
        // the enumeration fallback
        if !fanout.all_arity_two && (fanout.plain == 0 || fanout.negated == 0) {
            continue;
        }
        if fanout.max_produced_arity(fanout.all_arity_two) > max_box_arity {
            continue;
        }
        let cost = fanout.resolvent_count();
        if best.map_or(true, |(c, _, _)| cost < c) {
            best = Some((cost, z, fanout.all_arity_two));
        }
    }
    best.map(|(_, z, two)| (z, two))
}

fn pick_decision_site(run: &Run) -> Option<NodeId> {
    let mut best: Option<(usize, NodeId)> = None;
    for (z, kind) in run.d.nodes() {
        if !kind.is_z() {
            continue;
        }
        let Some(fanout) = elim_site_arities(&run.d, z) else { continue };
        let cost = fanout.resolvent_count();
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, z));
        }
    }
    best.map(|(_, z)| z)
}

fn eliminate_and_tidy(
    run: &mut Run,
    z: NodeId,
    rule: fn(&mut crate::diagram::Diagram, NodeId) -> Result<crate::rewrite::RewriteStep, crate::rewrite::RewriteError>,
) -> Result<(), StrategyError> {
    let step = rule(&mut run.d, z).map_err(|err| {
        StrategyError::ResourceLimit(format!("internal: tidied site was rejected: {err}"))
    })?;
    let mut dirty: Vec<NodeId> = step.produced_nodes.clone();
    for &e in &step.produced_edges {
        if let Some(edge) = run.d.edge(e) {
            dirty.extend([edge.u, edge.v]);
        }
    }
    run.record(step);
    tidy(run, dirty);
    Ok(())
}

fn counting_elimination_phase(
    run: &mut Run,
    max_box_arity: usize,
    wire_stop: Option<usize>,
) -> Result<usize, StrategyError> {
    let mut eliminations = 0;
    tidy_all(run);
    loop {
        // once the diagram outgrows the final-evaluation budget there is
        // no point feeding the blowup further; cut over to enumeration
        if wire_stop.is_some_and(|limit| run.d.edge_count() > limit) {
            break;
        }
        let Some((z, all_two)) = pick_counting_site(run, max_box_arity) else { break };
        let rule = if all_two { apply_elim_var_sharp2sat } else { apply_elim_var_sharpsat };
        eliminate_and_tidy(run, z, rule)?;
        eliminations += 1;
    }
    Ok(eliminations)
}

fn require_pure_or(f: &Formula) -> Result<(), StrategyError> {
    if let Some(index) = f.clauses().iter().position(|c| c.kind != ClauseKind::Or) {
        return Err(StrategyError::Routing(format!(
            "clause {} is not an OR clause",
            index + 1
        )));
    }
    Ok(())
}

/// Exact model counting for OR formulas: correction-carrying variable
/// elimination while the caps allow, then exact enumeration of the
/// residual diagram. The answer is exact either way; `fallback_used`
/// records which path finished the job.
pub fn count_sharpsat(
    f: &Formula,
    options: &GeneralOptions,
) -> Result<StrategyReport, StrategyError> {
    require_pure_or(f)?;
    let mut run = Run::new(encode(f));
    counting_elimination_phase(&mut run, options.max_box_arity, Some(options.wire_limit))?;
    if run.d.node_count() == 0 {
        let scalar = run.d.scalar().clone();
        return Ok(run.into_report(Value::Count(scalar), false));
    }
    if !options.fallback {
        return Err(StrategyError::ResourceLimit(format!(
            "rewriting blocked with {} node(s) and {} edge(s) left and the fallback disabled",
            run.d.node_count(),
            run.d.edge_count()
        )));
    }
    let value = fallback::evaluate(&run.d, options.wire_limit)?;
    Ok(run.into_report(Value::Count(value), true))
}

/// SAT decision for OR formulas: Davis–Putnam-style boolean resolution,
/// deduplicating resolvents after every round. Always reaches full
/// simplification; the peak box metrics record how distinct resolvents
/// pile up along the way.
pub fn decide_sat(f: &Formula, options: &GeneralOptions) -> Result<StrategyReport, StrategyError> {
    require_pure_or(f)?;
    let _ = options; // the arity cap is diagnostic only: never unsound to ignore
    let mut run = Run::new(encode(f));
    tidy_all(&mut run);
    while let Some(z) = pick_decision_site(&run) {
        eliminate_and_tidy(&mut run, z, apply_elim_var_sat)?;
    }
    debug_assert_eq!(run.d.node_count(), 0);
    let sat = project(run.d.scalar());
    Ok(run.into_report(Value::Decision(sat), false))
}

/// Counting for mixed OR/XOR formulas: the XOR sector is eliminated
/// first with the bialgebra wherever a variable touches only X-spiders,
/// then the OR sector by counting elimination; an entangled remainder
/// goes to exact enumeration.
pub fn solve_mixed(f: &Formula, options: &GeneralOptions) -> Result<StrategyReport, StrategyError> {
    let mut run = Run::new(encode(f));
    tidy_all(&mut run);
    loop {
        if let Some(z) = pick_xor_variable(&run) {
            eliminate_xor_variable(&mut run, z);
            continue;
        }
        if run.d.edge_count() <= options.wire_limit {
            if let Some((z, all_two)) = pick_counting_site(&run, options.max_box_arity) {
                let rule =
                    if all_two { apply_elim_var_sharp2sat } else { apply_elim_var_sharpsat };
                eliminate_and_tidy(&mut run, z, rule)?;
                continue;
            }
        }
        break;
    }
    if run.d.node_count() == 0 {
        let scalar = run.d.scalar().clone();
        return Ok(run.into_report(Value::Count(scalar), false));
    }
    if !options.fallback {
        return Err(StrategyError::ResourceLimit(format!(
            "rewriting blocked with {} node(s) left and the fallback disabled",
            run.d.node_count()
        )));
    }
    let value = fallback::evaluate(&run.d, options.wire_limit)?;
    Ok(run.into_report(Value::Count(value), true))
}

/// Rewrite-only simplification, the user-facing embodiment of the
/// counting/decision split: over ℕ only count-preserving rules may run,
/// over 𝔹 the resolution eliminations join in. No fallback: either the
/// rules remove every wire or this reports how much diagram is left.
pub fn simplify(
    f: &Formula,
    carrier: crate::semiring::Carrier,
    options: &GeneralOptions,
) -> Result<StrategyReport, StrategyError> {
    let mut run = Run::new(encode(f));
    tidy_all(&mut run);
    loop {
        if let Some(z) = pick_xor_variable(&run) {
            eliminate_xor_variable(&mut run, z);
            continue;
        }
        let site = match carrier {
            crate::semiring::Carrier::Nat => {
                pick_counting_site(&run, options.max_box_arity).map(|(z, two)| {
                    let rule: ElimRule =
                        if two { apply_elim_var_sharp2sat } else { apply_elim_var_sharpsat };
                    (z, rule)
                })
            }
            crate::semiring::Carrier::Bool => {
                pick_decision_site(&run).map(|z| (z, apply_elim_var_sat as ElimRule))
            }
        };
        match site {
            Some((z, rule)) => eliminate_and_tidy(&mut run, z, rule)?,
            None => break,
        }
    }
    if run.d.node_count() != 0 {
        return Err(StrategyError::ResourceLimit(format!(
            "not fully simplifiable under the {} rules: {} node(s) and {} edge(s) remain",
            match carrier {
                crate::semiring::Carrier::Nat => "counting",
                crate::semiring::Carrier::Bool => "boolean",
            },
            run.d.node_count(),
            run.d.edge_count()
        )));
    }
    let scalar = run.d.scalar().clone();
    let answer = match carrier {
        crate::semiring::Carrier::Nat => Value::Count(scalar),
        crate::semiring::Carrier::Bool => Value::Decision(project(&scalar)),
    };
    Ok(run.into_report(answer, false))
}

type ElimRule = fn(
    &mut crate::diagram::Diagram,
    NodeId,
) -> Result<crate::rewrite::RewriteStep, crate::rewrite::RewriteError>;

/// Instrumentation of the counting elimination phase: how far it gets
/// and how the box population grows, with the fallback out of the
/// picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationStats {
    pub eliminations: usize,
    pub peak_box_count: usize,
    pub peak_box_arity: usize,
    pub residual_spiders: usize,
    pub residual_edges: usize,
}

pub fn sharpsat_elimination_stats(
    f: &Formula,
    max_box_arity: usize,
) -> Result<EliminationStats, StrategyError> {
    require_pure_or(f)?;
    let mut run = Run::new(encode(f));
    let eliminations = counting_elimination_phase(&mut run, max_box_arity, None)?;
    Ok(EliminationStats {
        eliminations,
        peak_box_count: run.peak_box_count,
        peak_box_arity: run.peak_box_arity,
        residual_spiders: run.d.nodes().filter(|(_, k)| k.is_z()).count(),
        residual_edges: run.d.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_count, parse_dimacs};
    use crate::diagram::NodeKind;
    use crate::semiring::Natural;

    fn nat(n: u32) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn counts_a_single_clause() {
        let f = parse_dimacs("p cnf 2 1\n1 2 0\n").unwrap();
        let report = count_sharpsat(&f, &GeneralOptions::default()).unwrap();
        assert_eq!(report.answer, Value::Count(nat(3)));
    }

    #[test]
    fn count_rejects_xor() {
        let f = parse_dimacs("p cnf 2 1\nx 1 2 0\n").unwrap();
        assert!(matches!(
            count_sharpsat(&f, &GeneralOptions::default()),
            Err(StrategyError::Routing(_))
        ));
    }

    #[test]
    fn counting_matches_brute_force_on_random_3sat() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
        for trial in 0..40 {
            let n = rng.gen_range(3..=10u32);
            let m = rng.gen_range(1..=(2 * n as usize));
            let mut text = format!("p cnf {n} {m}\n");
            for _ in 0..m {
                for _ in 0..3 {
                    if rng.gen_bool(0.5) {
                        text.push('-');
                    }
                    text.push_str(&format!("{} ", rng.gen_range(1..=n)));
                }
                text.push_str("0\n");
            }
            let f = parse_dimacs(&text).unwrap();
            let expected = brute_force_count(&f).unwrap();
            for cap in [2usize, 4, 16] {
                let options =
                    GeneralOptions { max_box_arity: cap, wire_limit: 24, fallback: true };
                let report = count_sharpsat(&f, &options).unwrap();
                assert_eq!(report.answer, Value::Count(expected.clone()), "cap {cap}: {text}");
            }
            let report = decide_sat(&f, &GeneralOptions::default()).unwrap();
            assert_eq!(
                report.answer,
                Value::Decision(crate::semiring::project(&expected)),
                "trial {trial}: {text}"
            );
        }
    }

    #[test]
    fn h2_boxes_accumulate_one_per_elimination() {
        // disjoint binary clauses: every elimination is one-sided and
        // mints one H(2), which then blocks the partner variable
        for pairs in 1..=4u32 {
            let mut text = format!("p cnf {} {}\n", 2 * pairs, pairs);
            for i in 0..pairs {
                text.push_str(&format!("{} {} 0\n", 2 * i + 1, 2 * i + 2));
            }
            let f = parse_dimacs(&text).unwrap();
            let options = GeneralOptions { max_box_arity: 2, wire_limit: 24, fallback: true };
            let report = count_sharpsat(&f, &options).unwrap();
            assert_eq!(report.answer, Value::Count(brute_force_count(&f).unwrap()));
            assert!(report.fallback_used);
            let h2_minted = report
                .steps
                .iter()
                .filter(|s| s.rule == crate::rewrite::RuleId::ElimVarSharp2Sat)
                .count();
            assert_eq!(h2_minted, pairs as usize);
            // the caps were respected: nothing wider than 2 was created
            assert!(report.peak_box_arity <= 2);
        }
    }

    #[test]
    fn tidy_solvable_instances_need_no_fallback() {
        // a unit chain: propagation alone reaches full simplification
        let f = parse_dimacs("p cnf 3 3\n1 0\n-1 2 0\n-2 3 0\n").unwrap();
        let options = GeneralOptions { max_box_arity: 2, wire_limit: 24, fallback: false };
        let report = count_sharpsat(&f, &options).unwrap();
        assert_eq!(report.answer, Value::Count(nat(1)));
        assert!(!report.fallback_used);
    }

    #[test]
    fn blocked_runs_fall_back_exactly() {
        // a 3-clause chain whose corrections block further elimination
        let f = parse_dimacs("p cnf 4 3\n1 2 0\n-2 3 0\n-3 4 0\n").unwrap();
        let expected = brute_force_count(&f).unwrap();
        let report = count_sharpsat(&f, &GeneralOptions::default()).unwrap();
        assert_eq!(report.answer, Value::Count(expected));

        let no_fallback = GeneralOptions { fallback: false, ..GeneralOptions::default() };
        assert!(matches!(
            count_sharpsat(&f, &no_fallback),
            Err(StrategyError::ResourceLimit(_))
        ));
    }

    #[test]
    fn h2_corrections_block_their_neighbors() {
        let f = parse_dimacs("p cnf 3 2\n1 2 0\n-2 3 0\n").unwrap();
        let mut run = Run::new(encode(&f));
        counting_elimination_phase(&mut run, 16, None).unwrap();
        // something was eliminated, and the leftovers contain an H(2)
        assert!(run.d.node_count() > 0);
        assert!(run
            .d
            .nodes()
            .any(|(_, k)| matches!(k, NodeKind::HBox(p) if *p == nat(2))));
    }

    #[test]
    fn mixed_formulas_count_exactly() {
        let texts = [
            "p cnf 3 2\n1 2 0\nx 2 3 0\n",
            "p cnf 4 3\nx 1 2 0\nx 2 3 0\n3 4 0\n",
            "p cnf 4 3\n1 2 3 0\nx 3 4 0\n-1 -4 0\n",
        ];
        for text in texts {
            let f = parse_dimacs(text).unwrap();
            let expected = brute_force_count(&f).unwrap();
            let report = solve_mixed(&f, &GeneralOptions::default()).unwrap();
            assert_eq!(report.answer, Value::Count(expected), "{text}");
        }
    }

    #[test]
    fn elimination_stats_report_growth() {
        let f = parse_dimacs("p cnf 4 4\n1 2 3 0\n-1 2 -4 0\n-2 3 4 0\n1 -3 -4 0\n").unwrap();
        let stats = sharpsat_elimination_stats(&f, usize::MAX).unwrap();
        assert!(stats.eliminations > 0);
        assert!(stats.peak_box_count >= 4);
    }
}
