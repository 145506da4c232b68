//! The general `(p,q)` solver: a capacitated stage-one subgraph followed by
//! rounds of greedy hitting-set augmentation over the deficient cuts.
//!
//! Stage one models the instance as a capacitated k-connected subgraph
//! problem: unit capacities with `k = p` when `p > q`, otherwise capacities
//! `p+q` (safe) / `p` (unsafe) with `k = p(p+q)`. A cut is deficient when
//! the current edge set gives it fewer than `p` safe and fewer than `p+q`
//! total edges; deficient cuts always have capacity at most `2k`, so
//! enumerating 2-approximate minimum cuts finds all of them. Each round
//! hits every deficient cut greedily; at most `q` rounds are needed.

use super::arb_based::solve_cap_kecss;
use super::checkers::check_pq;
use super::k_one::solve_k1;
use super::{reshape_graph, CapEcssInstance, FgcInstance, SolveError, SolveReport, SolverConfig};
use crate::cuts::enumerate_cuts_within;
use crate::graph::{CutSide, EdgeId, EdgeLabel};
use crate::mincut::min_cut_value;
use crate::rational::{rat, ratio, Rational};
use num::Zero;
use std::collections::BTreeSet;

/// Minimum-cost hitting set instance: elements with costs, and the subsets
/// that must each be intersected.
#[derive(Debug, Clone)]
pub struct HittingSetProblem {
    pub element_costs: Vec<Rational>,
    pub sets: Vec<BTreeSet<usize>>,
}

/// Exact harmonic sum `H(n) = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: usize) -> Rational {
    (1..=n as i64).map(|i| ratio(1, i)).sum()
}

/// Greedy hitting set: repeatedly take the element minimizing
/// cost / (newly hit sets), ties to the smallest element id. The cost is
/// within `H(|sets|)` of the optimum.
pub fn greedy_hitting_set(problem: &HittingSetProblem) -> Result<BTreeSet<usize>, SolveError> {
    if problem.sets.iter().any(|s| s.is_empty()) {
        return Err(SolveError::Infeasible("infeasible hitting set: empty set".into()));
    }
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    let mut unhit: Vec<&BTreeSet<usize>> = problem.sets.iter().collect();
    while !unhit.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (element, newly hit)
        for e in 0..problem.element_costs.len() {
            if chosen.contains(&e) {
                continue;
            }
            let hits = unhit.iter().filter(|s| s.contains(&e)).count();
            if hits == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((be, bh)) => {
                    // cost_e / hits < cost_be / bh, exactly.
                    let lhs = &problem.element_costs[e] * rat(bh as i64);
                    let rhs = &problem.element_costs[be] * rat(hits as i64);
                    lhs < rhs
                }
            };
            if better {
                best = Some((e, hits));
            }
        }
        let Some((element, _)) = best else {
            return Err(SolveError::Infeasible(
                "infeasible hitting set: uncoverable set".into(),
            ));
        };
        chosen.insert(element);
        unhit.retain(|s| !s.contains(&element));
    }
    Ok(chosen)
}

/// One augmentation round: the deficient cuts, the hitting-set instance
/// they induce over the unused edges, and the greedy pick.
#[derive(Debug, Clone)]
pub struct PqIteration {
    pub deficient_sides: Vec<CutSide>,
    pub problem: HittingSetProblem,
    pub element_ids: Vec<EdgeId>,
    pub chosen: BTreeSet<EdgeId>,
    pub cost: Rational,
}

#[derive(Debug, Clone, Default)]
pub struct PqTrace {
    pub stage_one: BTreeSet<EdgeId>,
    pub rounds: Vec<PqIteration>,
}

pub fn solve_pq(inst: &FgcInstance, config: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve_pq_traced(inst, config).map(|(report, _)| report)
}

pub fn solve_pq_traced(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<(SolveReport, PqTrace), SolveError> {
    let (p, q) = (inst.p(), inst.q());
    // q <= 1 has specialized solvers with better factors.
    if q == 0 {
        let unit_caps = reshape_graph(inst.graph(), |e| e.cost.clone(), |_| 1);
        let report = solve_cap_kecss(&CapEcssInstance::new(unit_caps, p)?)?;
        let trace = PqTrace { stage_one: report.solution.clone(), rounds: Vec::new() };
        return Ok((report, trace));
    }
    if q == 1 {
        let report = solve_k1(inst, config)?;
        let trace = PqTrace { stage_one: report.solution.clone(), rounds: Vec::new() };
        return Ok((report, trace));
    }

    let g = inst.graph();
    if g.vertex_count() < 2 {
        let report = SolveReport {
            solution: Default::default(),
            cost: Rational::zero(),
            guarantee: rat(1),
            lower_bound: Some(Rational::zero()),
            iterations: 0,
            stage_costs: vec![Rational::zero()],
        };
        return Ok((report, PqTrace::default()));
    }
    if !check_pq(inst, &g.all_edge_ids()) {
        return Err(SolveError::Infeasible(format!(
            "no ({p},{q}) solution: some cut lacks {p} safe edges and {} edges",
            p + q
        )));
    }

    // Stage one: capacitated model of the instance.
    let (capacity_of, k): (Box<dyn Fn(&crate::graph::EdgeRecord) -> u64>, usize) = if p > q {
        (Box::new(|_: &crate::graph::EdgeRecord| 1), p)
    } else {
        (
            Box::new(move |e: &crate::graph::EdgeRecord| {
                if e.label == EdgeLabel::Safe {
                    (p + q) as u64
                } else {
                    p as u64
                }
            }),
            p * (p + q),
        )
    };
    let capacitated = reshape_graph(g, |e| e.cost.clone(), &capacity_of);
    let stage_one_instance = CapEcssInstance::new(capacitated, k)?;
    let stage_one_report = solve_cap_kecss(&stage_one_instance)?;
    let mut current: BTreeSet<EdgeId> = stage_one_report.solution.clone();
    let mut guarantee = stage_one_report.guarantee.clone();
    let mut stage_costs = vec![stage_one_report.cost.clone()];
    let mut trace = PqTrace { stage_one: current.clone(), rounds: Vec::new() };

    // Stage two: repeatedly hit all deficient cuts.
    loop {
        let deficient = deficient_cuts(inst, &current, &capacity_of, k)?;
        if deficient.is_empty() {
            break;
        }
        let element_ids: Vec<EdgeId> = g
            .all_edge_ids()
            .difference(&current)
            .copied()
            .collect();
        let index_of = |id: &EdgeId| element_ids.binary_search(id).expect("element present");
        let mut sets = Vec::with_capacity(deficient.len());
        for side in &deficient {
            let crossing: BTreeSet<usize> = g
                .cut_edges(side)?
                .into_iter()
                .filter(|id| !current.contains(id))
                .map(|id| index_of(&id))
                .collect();
            if crossing.is_empty() {
                return Err(SolveError::Infeasible(format!(
                    "deficient cut {side} has no remaining edge to add"
                )));
            }
            sets.push(crossing);
        }
        let problem = HittingSetProblem {
            element_costs: element_ids.iter().map(|id| g.edges()[id.0].cost.clone()).collect(),
            sets,
        };
        let picked = greedy_hitting_set(&problem)?;
        let chosen: BTreeSet<EdgeId> = picked.iter().map(|&i| element_ids[i]).collect();
        let round_cost = g.total_cost(&chosen);
        guarantee += harmonic(problem.sets.len());
        stage_costs.push(round_cost.clone());
        current.extend(chosen.iter().copied());
        trace.rounds.push(PqIteration {
            deficient_sides: deficient,
            problem,
            element_ids,
            chosen,
            cost: round_cost,
        });
        if trace.rounds.len() > g.edge_count() {
            return Err(SolveError::Internal("augmentation failed to make progress".into()));
        }
    }

    debug_assert!(check_pq(inst, &current));
    let cost = g.total_cost(&current);
    let report = SolveReport {
        solution: current,
        cost,
        guarantee,
        lower_bound: stage_one_report.lower_bound,
        iterations: trace.rounds.len(),
        stage_costs,
    };
    Ok((report, trace))
}

/// All deficient cuts of the current edge set: capacity at most `2k` in the
/// stage-one capacitated view, fewer than `p + q` chosen edges, fewer than
/// `p` chosen safe edges. Deficient cuts are 2-approximate minimum cuts, so
/// enumerating up to twice the current minimum finds every one of them.
fn deficient_cuts(
    inst: &FgcInstance,
    current: &BTreeSet<EdgeId>,
    capacity_of: &dyn Fn(&crate::graph::EdgeRecord) -> u64,
    k: usize,
) -> Result<Vec<CutSide>, SolveError> {
    let g = inst.graph();
    let (p, q) = (inst.p(), inst.q());
    let weights: Vec<Rational> = g
        .edges()
        .iter()
        .map(|e| {
            if current.contains(&e.id) {
                rat(capacity_of(e) as i64)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let lambda = min_cut_value(g, &weights)?;
    let bound = (rat(2) * &lambda).max(rat(2 * k as i64));
    let band = enumerate_cuts_within(g, &weights, &bound)?;
    let cap_limit = rat(2 * k as i64);
    let mut result = Vec::new();
    for (capacity, side) in band {
        if capacity > cap_limit {
            continue;
        }
        let ids = g.cut_edges(&side)?;
        let mut safe = 0usize;
        let mut total = 0usize;
        for id in &ids {
            if current.contains(id) {
                total += 1;
                if g.edges()[id.0].label == EdgeLabel::Safe {
                    safe += 1;
                }
            }
        }
        if safe < p && total < p + q {
            result.push(side);
        }
    }
    Ok(result)
}
