//! Two-stage `(k,1)` solver: a k-edge-connected subgraph on all edges,
//! then a primal-dual augmentation of the k-edge-cuts that still carry an
//! unsafe edge.

use super::arb_based::solve_cap_kecss;
use super::checkers::check_k1;
use super::{reshape_graph, CapEcssInstance, FgcInstance, SolveError, SolveReport, SolverConfig};
use crate::cuts::k_edge_cut_collection;
use crate::graph::EdgeId;
use crate::mincut::min_cut_value;
use crate::primal_dual::{build_requirement, wgmv_solve, DualState, RequirementOracle};
use crate::rational::{rat, Rational};
use num::Zero;
use std::collections::BTreeSet;

/// Internals of a `(k,1)` run, exposed for certification: the stage
/// outputs, the requirement oracle, and the exact dual certificate.
#[derive(Debug, Clone)]
pub struct K1Trace {
    pub stage_one: BTreeSet<EdgeId>,
    pub stage_two: BTreeSet<EdgeId>,
    pub candidates: BTreeSet<EdgeId>,
    pub oracle: RequirementOracle,
    pub dual: DualState,
}

pub fn solve_k1(inst: &FgcInstance, config: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve_k1_traced(inst, config).map(|(report, _)| report)
}

pub fn solve_k1_traced(
    inst: &FgcInstance,
    _config: &SolverConfig,
) -> Result<(SolveReport, K1Trace), SolveError> {
    run_two_stage(inst, |graph, k| {
        let unit_caps = reshape_graph(graph, |e| e.cost.clone(), |_| 1);
        let report = solve_cap_kecss(&CapEcssInstance::new(unit_caps, k)?)?;
        Ok((report.solution, report.lower_bound))
    })
}

/// Unweighted `(k,1)`: the same pipeline, with the stage-one subgraph
/// produced by the pluggable minimum-size k-edge-connected subroutine
/// (declared factor `config.k_ecss_factor`). Guarantee `2 + alpha_k`.
pub fn solve_unweighted_k1(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    solve_unweighted_k1_traced(inst, config).map(|(report, _)| report)
}

pub fn solve_unweighted_k1_traced(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<(SolveReport, K1Trace), SolveError> {
    if !inst.has_unit_costs() {
        return Err(SolveError::NonUnitCosts);
    }
    let override_fn = config.k_ecss_override.clone();
    let (mut report, trace) = run_two_stage(inst, move |graph, k| {
        if let Some(subroutine) = &override_fn {
            let chosen = subroutine(graph, k)?;
            let weights: Vec<Rational> = graph
                .edges()
                .iter()
                .map(|e| if chosen.contains(&e.id) { rat(1) } else { Rational::zero() })
                .collect();
            let connected_enough = min_cut_value(graph, &weights)
                .map(|v| v >= rat(k as i64))
                .unwrap_or(k == 0);
            if !connected_enough {
                return Err(SolveError::Internal(
                    "k-ECSS subroutine returned an under-connected subgraph".into(),
                ));
            }
            Ok((chosen, None))
        } else {
            let unit = reshape_graph(graph, |_| rat(1), |_| 1);
            let report = solve_cap_kecss(&CapEcssInstance::new(unit, k)?)?;
            Ok((report.solution, report.lower_bound))
        }
    })?;
    report.guarantee = rat(2) + &config.k_ecss_factor;
    Ok((report, trace))
}

fn run_two_stage(
    inst: &FgcInstance,
    stage_one: impl FnOnce(
        &crate::graph::MultiGraph,
        usize,
    ) -> Result<(BTreeSet<EdgeId>, Option<Rational>), SolveError>,
) -> Result<(SolveReport, K1Trace), SolveError> {
    if inst.q() != 1 {
        return Err(SolveError::BadParameters("the (k,1) solver requires q = 1".into()));
    }
    let k = inst.p();
    let g = inst.graph();
    if g.vertex_count() < 2 {
        let trace = K1Trace {
            stage_one: Default::default(),
            stage_two: Default::default(),
            candidates: Default::default(),
            oracle: empty_oracle(g),
            dual: DualState { dual_values: Default::default(), total: Rational::zero() },
        };
        let report = SolveReport {
            solution: Default::default(),
            cost: Rational::zero(),
            guarantee: rat(4),
            lower_bound: Some(Rational::zero()),
            iterations: 2,
            stage_costs: vec![Rational::zero(), Rational::zero()],
        };
        return Ok((report, trace));
    }
    if !check_k1(inst, &g.all_edge_ids()) {
        return Err(SolveError::Infeasible(format!(
            "no ({k},1) solution: some cut lacks {k} safe edges and {} edges",
            k + 1
        )));
    }

    let (f1, stage_one_bound) = stage_one(g, k)?;
    let stage_one_cost = g.total_cost(&f1);

    let collection = k_edge_cut_collection(g, &f1, k)?;
    let oracle = build_requirement(&collection, &f1, g);
    let candidates: BTreeSet<EdgeId> = g
        .all_edge_ids()
        .difference(&f1)
        .copied()
        .collect();
    let (f2, dual) = wgmv_solve(g, &candidates, &oracle)?;
    let stage_two_cost = g.total_cost(&f2);

    let solution: BTreeSet<EdgeId> = f1.union(&f2).copied().collect();
    let cost = g.total_cost(&solution);
    debug_assert!(check_k1(inst, &solution));

    let mut lower_bound = dual.total.clone();
    if let Some(stage_bound) = stage_one_bound {
        if stage_bound > lower_bound {
            lower_bound = stage_bound;
        }
    }
    let report = SolveReport {
        solution,
        cost,
        guarantee: rat(4),
        lower_bound: Some(lower_bound),
        iterations: 2,
        stage_costs: vec![stage_one_cost, stage_two_cost],
    };
    let trace = K1Trace { stage_one: f1, stage_two: f2, candidates, oracle, dual };
    Ok((report, trace))
}

fn empty_oracle(g: &crate::graph::MultiGraph) -> RequirementOracle {
    let collection = crate::cuts::CutCollection {
        cuts: Vec::new(),
        reference_value: Rational::zero(),
        approximation_radius: rat(1),
    };
    RequirementOracle::new(&collection, &BTreeSet::new(), g, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeLabel, EdgeSpec, MultiGraph};

    fn unit(u: usize, v: usize, label: EdgeLabel) -> EdgeSpec {
        EdgeSpec::new(u, v, rat(1), label)
    }

    #[test]
    fn all_safe_four_cycle_needs_no_augmentation() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Safe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        let (report, trace) = solve_k1_traced(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(report.cost, rat(4));
        assert!(trace.stage_two.is_empty());
        assert!(trace.dual.total.is_zero());
        assert_eq!(report.guarantee, rat(4));
    }

    #[test]
    fn augmentation_covers_unsafe_cut() {
        // 4-cycle with one unsafe edge, plus chords available for repair.
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
                unit(0, 2, EdgeLabel::Safe),
                unit(1, 3, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        let (report, trace) = solve_k1_traced(&inst, &SolverConfig::default()).unwrap();
        assert!(check_k1(&inst, &report.solution));
        // Primal-dual guarantee, exactly.
        assert!(inst.graph().total_cost(&trace.stage_two) <= rat(2) * &trace.dual.total);
        assert!(trace.dual.is_feasible(inst.graph(), &trace.candidates));
    }

    #[test]
    fn k1_equals_1k_shape_for_k_equal_one() {
        let g = MultiGraph::build(
            3,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Unsafe),
                unit(0, 2, EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let report = solve_k1(&inst, &SolverConfig::default()).unwrap();
        assert!(check_k1(&inst, &report.solution));
        assert!(super::super::checkers::check_1k(&inst, &report.solution));
    }

    #[test]
    fn unweighted_k1_reports_plugin_guarantee() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Safe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        let report = solve_unweighted_k1(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(report.cost, rat(4));
        assert_eq!(report.guarantee, rat(4)); // 2 + default alpha_k = 2
    }

    #[test]
    fn unweighted_k1_with_unsafe_cycle_edge() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
                unit(0, 2, EdgeLabel::Safe),
                unit(1, 3, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        let report = solve_unweighted_k1(&inst, &SolverConfig::default()).unwrap();
        assert!(check_k1(&inst, &report.solution));
        let optimum = crate::oracle::brute_force_opt(&crate::solvers::ProblemInstance::Fgc(
            inst.clone(),
        ))
        .optimum
        .unwrap();
        // Guarantee 2 + alpha_k with the default alpha_k = 2.
        assert!(report.cost <= report.guarantee.clone() * optimum);
    }

    #[test]
    fn unweighted_k1_rejects_weighted_input() {
        let g = MultiGraph::build(
            2,
            vec![EdgeSpec::new(0, 1, rat(3), EdgeLabel::Safe)],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        assert!(matches!(
            solve_unweighted_k1(&inst, &SolverConfig::default()),
            Err(SolveError::NonUnitCosts)
        ));
    }

    #[test]
    fn infeasible_instance() {
        let g = MultiGraph::build(
            3,
            vec![unit(0, 1, EdgeLabel::Safe), unit(1, 2, EdgeLabel::Safe)],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        assert!(matches!(
            solve_k1(&inst, &SolverConfig::default()),
            Err(SolveError::Infeasible(_))
        ));
    }
}
