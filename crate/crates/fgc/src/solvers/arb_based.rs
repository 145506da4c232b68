//! Arborescence-based solvers: the `(1,k)` reduction and the capacitated
//! k-connected subgraph algorithm.

use super::checkers::check_1k;
use super::{CapEcssInstance, FgcInstance, SolveError, SolveReport, SolverConfig};
use crate::arborescence::{bidirect, min_cost_k_arborescence, project_arcs_to_edges};
use crate::graph::EdgeLabel;
use crate::mincut::min_cut_value;
use crate::rational::{rat, Rational};
use num::Zero;

/// `(1,k)` solver: bidirect with multiplicity `k+1` for safe edges and 1
/// for unsafe edges, take an exact minimum-cost `(k+1)`-arborescence from
/// vertex 0, and keep every edge whose arcs appear in it.
///
/// The projected edge set is feasible and costs at most `k + 1` times the
/// optimum; the arborescence cost divided by `k + 1` is a certified lower
/// bound on the optimum.
pub fn solve_1k(inst: &FgcInstance, _config: &SolverConfig) -> Result<SolveReport, SolveError> {
    if inst.p() != 1 {
        return Err(SolveError::BadParameters("the (1,k) solver requires p = 1".into()));
    }
    let k = inst.q();
    let g = inst.graph();
    let guarantee = rat(k as i64 + 1);
    if g.vertex_count() < 2 {
        return Ok(SolveReport {
            solution: Default::default(),
            cost: Rational::zero(),
            guarantee,
            lower_bound: Some(Rational::zero()),
            iterations: 1,
            stage_costs: vec![Rational::zero()],
        });
    }
    if !check_1k(inst, &g.all_edge_ids()) {
        return Err(SolveError::Infeasible(format!(
            "no (1,{k}) solution: some cut lacks a safe edge and {} unsafe edges",
            k + 1
        )));
    }
    let d = bidirect(g, |e| if e.label == EdgeLabel::Safe { k as u64 + 1 } else { 1 });
    let (t, arb_cost) = min_cost_k_arborescence(&d, 0, k + 1)?;
    let solution = project_arcs_to_edges(&t, &d);
    let cost = g.total_cost(&solution);
    debug_assert!(check_1k(inst, &solution));
    let lower_bound = arb_cost / &guarantee;
    Ok(SolveReport {
        solution,
        cost: cost.clone(),
        guarantee,
        lower_bound: Some(lower_bound),
        iterations: 1,
        stage_costs: vec![cost],
    })
}

/// Capacitated k-connected subgraph solver: replace each edge by its
/// (normalized) capacity many bidirected arc pairs, take an exact
/// minimum-cost k-arborescence from vertex 0, and project. Factor
/// `min(k, 2 u_max)`.
pub fn solve_cap_kecss(inst: &CapEcssInstance) -> Result<SolveReport, SolveError> {
    let g = inst.graph();
    let k = inst.k();
    if g.vertex_count() < 2 {
        return Ok(SolveReport {
            solution: Default::default(),
            cost: Rational::zero(),
            guarantee: rat(1),
            lower_bound: Some(Rational::zero()),
            iterations: 1,
            stage_costs: vec![Rational::zero()],
        });
    }
    let weights: Vec<Rational> = g
        .edges()
        .iter()
        .map(|e| rat(inst.normalized_capacity(e) as i64))
        .collect();
    let feasible = min_cut_value(g, &weights)
        .map(|value| value >= rat(k as i64))
        .unwrap_or(false);
    if !feasible {
        return Err(SolveError::Infeasible(format!(
            "capacitated instance has a cut of capacity below {k}"
        )));
    }
    let d = bidirect(g, |e| inst.normalized_capacity(e));
    let (t, arb_cost) = min_cost_k_arborescence(&d, 0, k)?;
    let solution = project_arcs_to_edges(&t, &d);
    let cost = g.total_cost(&solution);
    let guarantee = rat(k as i64).min(rat(2) * rat(inst.u_max() as i64));
    let lower_bound = arb_cost / &guarantee;
    Ok(SolveReport {
        solution,
        cost: cost.clone(),
        guarantee,
        lower_bound: Some(lower_bound),
        iterations: 1,
        stage_costs: vec![cost],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, EdgeSpec, MultiGraph};
    use std::collections::BTreeSet;

    fn spec(u: usize, v: usize, cost: i64, label: EdgeLabel) -> EdgeSpec {
        EdgeSpec::new(u, v, rat(cost), label)
    }

    #[test]
    fn two_vertex_safe_and_unsafe() {
        // (1,1): safe cost 10 parallel to unsafe cost 1. The reduction buys
        // both (cost 11); the optimum is the safe edge alone (10).
        let g = MultiGraph::build(
            2,
            vec![spec(0, 1, 10, EdgeLabel::Safe), spec(0, 1, 1, EdgeLabel::Unsafe)],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let report = solve_1k(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(report.solution, [EdgeId(0), EdgeId(1)].into_iter().collect());
        assert_eq!(report.cost, rat(11));
        assert_eq!(report.guarantee, rat(2));
        assert!(report.lower_bound.unwrap() <= rat(10));
    }

    #[test]
    fn all_safe_triangle_picks_cheap_tree() {
        for k in 1..=3 {
            let g = MultiGraph::build(
                3,
                vec![
                    spec(0, 1, 1, EdgeLabel::Safe),
                    spec(1, 2, 2, EdgeLabel::Safe),
                    spec(0, 2, 3, EdgeLabel::Safe),
                ],
            )
            .unwrap();
            let inst = FgcInstance::new(g, 1, k).unwrap();
            let report = solve_1k(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(report.cost, rat(3));
            assert_eq!(report.solution, [EdgeId(0), EdgeId(1)].into_iter().collect());
        }
    }

    #[test]
    fn unsafe_triangle_needs_all_edges() {
        let g = MultiGraph::build(
            3,
            vec![
                spec(0, 1, 1, EdgeLabel::Unsafe),
                spec(1, 2, 1, EdgeLabel::Unsafe),
                spec(0, 2, 1, EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let report = solve_1k(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(report.cost, rat(3));
        assert_eq!(report.solution.len(), 3);
    }

    #[test]
    fn infeasible_one_k() {
        // A lone unsafe bridge cannot survive its own failure.
        let g = MultiGraph::build(
            2,
            vec![spec(0, 1, 1, EdgeLabel::Unsafe)],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        assert!(matches!(
            solve_1k(&inst, &SolverConfig::default()),
            Err(SolveError::Infeasible(_))
        ));
    }

    #[test]
    fn capk_two_vertices() {
        // caps 2/1/1 with costs 3/1/1 and k = 2: optimum picks the two unit
        // edges (cost 2); the solver stays within factor 2.
        let g = MultiGraph::build(
            2,
            vec![
                spec(0, 1, 3, EdgeLabel::Safe).with_capacity(2),
                spec(0, 1, 1, EdgeLabel::Safe).with_capacity(1),
                spec(0, 1, 1, EdgeLabel::Safe).with_capacity(1),
            ],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 2).unwrap();
        let report = solve_cap_kecss(&inst).unwrap();
        let weights: Vec<Rational> = inst
            .graph()
            .edges()
            .iter()
            .map(|e| {
                if report.solution.contains(&e.id) {
                    rat(inst.normalized_capacity(e) as i64)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        assert!(min_cut_value(inst.graph(), &weights).unwrap() >= rat(2));
        assert!(report.cost <= rat(4));
    }

    #[test]
    fn capk_unit_caps_is_the_kecss_routine() {
        // Unit capacities with k = 2 on a 4-cycle plus chord: the output is
        // a 2-edge-connected subgraph within twice the optimum (4).
        let g = MultiGraph::build(
            4,
            vec![
                spec(0, 1, 1, EdgeLabel::Safe),
                spec(1, 2, 1, EdgeLabel::Safe),
                spec(2, 3, 1, EdgeLabel::Safe),
                spec(3, 0, 1, EdgeLabel::Safe),
                spec(0, 2, 1, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 2).unwrap();
        let report = solve_cap_kecss(&inst).unwrap();
        let weights: Vec<Rational> = inst
            .graph()
            .edges()
            .iter()
            .map(|e| {
                if report.solution.contains(&e.id) {
                    rat(1)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        assert!(min_cut_value(inst.graph(), &weights).unwrap() >= rat(2));
        assert!(report.cost <= rat(8));
    }

    #[test]
    fn capk_k1_is_a_minimum_spanning_tree() {
        let g = MultiGraph::build(
            4,
            vec![
                spec(0, 1, 5, EdgeLabel::Safe),
                spec(1, 2, 1, EdgeLabel::Safe),
                spec(2, 3, 2, EdgeLabel::Safe),
                spec(3, 0, 1, EdgeLabel::Safe),
                spec(0, 2, 7, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 1).unwrap();
        let report = solve_cap_kecss(&inst).unwrap();
        assert_eq!(report.cost, rat(4));
        assert_eq!(report.guarantee, rat(1));
        assert_eq!(report.solution.len(), 3);
    }

    #[test]
    fn capk_normalizes_capacities() {
        // A zero-capacity edge is unusable; a capacity-9 edge acts as k.
        let g = MultiGraph::build(
            2,
            vec![
                spec(0, 1, 1, EdgeLabel::Safe).with_capacity(0),
                spec(0, 1, 5, EdgeLabel::Safe).with_capacity(9),
            ],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 2).unwrap();
        assert_eq!(inst.u_max(), 2);
        let report = solve_cap_kecss(&inst).unwrap();
        let expected: BTreeSet<EdgeId> = [EdgeId(1)].into_iter().collect();
        assert_eq!(report.solution, expected);
    }

    #[test]
    fn capk_infeasible() {
        let g = MultiGraph::build(
            2,
            vec![spec(0, 1, 1, EdgeLabel::Safe).with_capacity(1)],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 3).unwrap();
        assert!(matches!(solve_cap_kecss(&inst), Err(SolveError::Infeasible(_))));
    }
}
