//! Unit-cost FGC: two candidate solutions, keep the smaller.
//!
//! Candidate one grows a spanning tree with as many safe edges as
//! possible, contracts its safe part, and patches the unsafe remainder
//! with a minimum-cardinality join so the contracted graph becomes
//! Eulerian (hence 2-edge-connected). Candidate two doubles every safe
//! edge and runs the pluggable minimum-size 2-edge-connected subgraph
//! subroutine. With a factor-`alpha` subroutine the smaller candidate is a
//! `4 alpha / (2 alpha + 1)` approximation.

use super::arb_based::solve_cap_kecss;
use super::checkers::check_1k;
use super::{reshape_graph, CapEcssInstance, FgcInstance, SolveError, SolveReport, SolverConfig};
use crate::graph::{EdgeId, EdgeLabel, EdgeSpec, MultiGraph};
use crate::joins::{min_cardinality_wjoin, odd_degree_set, safe_max_spanning_tree, JoinProblem};
use crate::mincut::min_cut_value;
use crate::rational::{rat, Rational};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Internals of an unweighted FGC run, for certification.
#[derive(Debug, Clone, Default)]
pub struct UnweightedTrace {
    pub tree: BTreeSet<EdgeId>,
    /// Size of the contracted-graph join, when the join route ran.
    pub join_size: Option<usize>,
    pub join_candidate: Option<BTreeSet<EdgeId>>,
    pub two_ecss_candidate: Option<BTreeSet<EdgeId>>,
}

/// Minimum-size 2-edge-connected spanning subgraph, within a factor of 2:
/// the capacitated solver on unit costs and unit capacities with `k = 2`.
pub fn two_ecss_unweighted(g: &MultiGraph) -> Result<BTreeSet<EdgeId>, SolveError> {
    if g.vertex_count() < 2 {
        return Ok(BTreeSet::new());
    }
    let unit_weights: Vec<Rational> = vec![rat(1); g.edge_count()];
    let two_connected = min_cut_value(g, &unit_weights)
        .map(|v| v >= rat(2))
        .unwrap_or(false);
    if !two_connected {
        return Err(SolveError::BadParameters(
            "2-ECSS subroutine requires a 2-edge-connected graph".into(),
        ));
    }
    let unit = reshape_graph(g, |_| rat(1), |_| 1);
    let report = solve_cap_kecss(&CapEcssInstance::new(unit, 2)?)?;
    Ok(report.solution)
}

pub fn solve_unweighted_fgc(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    solve_unweighted_fgc_traced(inst, config).map(|(report, _)| report)
}

pub fn solve_unweighted_fgc_traced(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<(SolveReport, UnweightedTrace), SolveError> {
    if inst.p() != 1 || inst.q() != 1 {
        return Err(SolveError::BadParameters(
            "the unweighted solver handles p = q = 1".into(),
        ));
    }
    if !inst.has_unit_costs() {
        return Err(SolveError::NonUnitCosts);
    }
    let g = inst.graph();
    let n = g.vertex_count();
    let guarantee = unweighted_guarantee(&config.two_ecss_factor);
    if n < 2 {
        let report = SolveReport {
            solution: Default::default(),
            cost: Rational::zero(),
            guarantee,
            lower_bound: Some(Rational::zero()),
            iterations: 1,
            stage_costs: vec![],
        };
        return Ok((report, UnweightedTrace::default()));
    }
    let all = g.all_edge_ids();
    let unsafe_bridges: Vec<EdgeId> = g
        .bridges(&all)
        .into_iter()
        .filter(|id| g.edges()[id.0].label == EdgeLabel::Unsafe)
        .collect();
    if let Some(bridge) = unsafe_bridges.first() {
        return Err(SolveError::Infeasible(format!(
            "unsafe bridge {bridge}: the instance cannot survive its failure"
        )));
    }

    let tree = safe_max_spanning_tree(g)?;
    let all_safe = tree
        .iter()
        .all(|id| g.edges()[id.0].label == EdgeLabel::Safe);
    if all_safe {
        let cost = rat(tree.len() as i64);
        let report = SolveReport {
            solution: tree.clone(),
            cost: cost.clone(),
            guarantee,
            lower_bound: Some(cost),
            iterations: 1,
            stage_costs: vec![rat(tree.len() as i64)],
        };
        let trace = UnweightedTrace { tree, ..Default::default() };
        return Ok((report, trace));
    }

    let join_candidate = join_based_candidate(inst, &tree)?;
    debug_assert!(check_1k(inst, &join_candidate.0));

    let two_ecss_candidate = two_ecss_based_candidate(inst, config)?;
    debug_assert!(check_1k(inst, &two_ecss_candidate));

    let solution = if two_ecss_candidate.len() < join_candidate.0.len() {
        two_ecss_candidate.clone()
    } else {
        join_candidate.0.clone()
    };
    let cost = rat(solution.len() as i64);
    let report = SolveReport {
        solution,
        cost,
        guarantee,
        lower_bound: Some(rat(n as i64 - 1)),
        iterations: 1,
        stage_costs: vec![
            rat(join_candidate.0.len() as i64),
            rat(two_ecss_candidate.len() as i64),
        ],
    };
    let trace = UnweightedTrace {
        tree,
        join_size: Some(join_candidate.1),
        join_candidate: Some(join_candidate.0),
        two_ecss_candidate: Some(two_ecss_candidate),
    };
    Ok((report, trace))
}

pub(crate) fn unweighted_guarantee(alpha: &Rational) -> Rational {
    rat(4) * alpha / (rat(2) * alpha + rat(1))
}

/// Tree-plus-join candidate, de-duplicated. Returns the edge set and the
/// size of the join in the contracted graph.
fn join_based_candidate(
    inst: &FgcInstance,
    tree: &BTreeSet<EdgeId>,
) -> Result<(BTreeSet<EdgeId>, usize), SolveError> {
    let g = inst.graph();
    let safe_tree: BTreeSet<EdgeId> = tree
        .iter()
        .filter(|id| g.edges()[id.0].label == EdgeLabel::Safe)
        .copied()
        .collect();
    let unsafe_tree: BTreeSet<EdgeId> = tree.difference(&safe_tree).copied().collect();
    let contraction = g.contract(&safe_tree);
    debug_assert!(contraction
        .graph
        .edges()
        .iter()
        .all(|e| e.label == EdgeLabel::Unsafe));
    let new_of_old: BTreeMap<EdgeId, EdgeId> = contraction
        .origin_edges
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, EdgeId(new)))
        .collect();
    let tree_image: BTreeSet<EdgeId> = unsafe_tree
        .iter()
        .map(|old| new_of_old[old])
        .collect();
    let targets = odd_degree_set(&contraction.graph, &tree_image);
    let join = min_cardinality_wjoin(&JoinProblem {
        graph: contraction.graph.clone(),
        targets,
    })?;
    let join_size = join.len();
    let join_origins: BTreeSet<EdgeId> = join
        .iter()
        .map(|new| contraction.origin_edges[new.0])
        .collect();

    // The tree and the join may share unsafe edges; each shared edge is a
    // doubled copy that must be dropped, patching with a fresh edge across
    // the induced cut whenever the drop leaves a bridge behind.
    let mut support: BTreeSet<EdgeId> = tree.union(&join_origins).copied().collect();
    let duplicates: Vec<EdgeId> = unsafe_tree
        .intersection(&join_origins)
        .copied()
        .collect();
    for &dup in &duplicates {
        let mut without = support.clone();
        without.remove(&dup);
        if g.is_connected(&without) {
            continue;
        }
        // The single remaining copy is a bridge; find its cut and patch it.
        let mut dsu = crate::graph::Dsu::new(g.vertex_count());
        for id in &without {
            let e = &g.edges()[id.0];
            dsu.union(e.endpoints.0, e.endpoints.1);
        }
        let anchor = g.edges()[dup.0].endpoints.0;
        let anchor_root = dsu.find(anchor);
        let patch = g
            .edges()
            .iter()
            .find(|e| {
                !support.contains(&e.id)
                    && (dsu.find(e.endpoints.0) == anchor_root)
                        != (dsu.find(e.endpoints.1) == anchor_root)
            })
            .map(|e| e.id)
            .ok_or_else(|| {
                SolveError::Internal("no patch edge across a bridge cut".into())
            })?;
        support.insert(patch);
    }
    Ok((support, join_size))
}

/// Safe-doubled 2-ECSS candidate: duplicate safe edges, run the subroutine,
/// fold duplicates back.
fn two_ecss_based_candidate(
    inst: &FgcInstance,
    config: &SolverConfig,
) -> Result<BTreeSet<EdgeId>, SolveError> {
    let g = inst.graph();
    let mut specs = Vec::new();
    let mut origin: Vec<EdgeId> = Vec::new();
    for e in g.edges() {
        specs.push(EdgeSpec::new(e.endpoints.0, e.endpoints.1, rat(1), e.label));
        origin.push(e.id);
        if e.label == EdgeLabel::Safe {
            specs.push(EdgeSpec::new(e.endpoints.0, e.endpoints.1, rat(1), e.label));
            origin.push(e.id);
        }
    }
    let doubled = MultiGraph::build(g.vertex_count(), specs)?;
    let chosen = match &config.two_ecss_override {
        Some(subroutine) => subroutine(&doubled)?,
        None => two_ecss_unweighted(&doubled)?,
    };
    Ok(chosen.iter().map(|id| origin[id.0]).collect())
}

/// Baseline that starts from a maximal safe forest and greedily adds the
/// cheapest edges until feasible. On the hard spoked-cycle family this is
/// forced into size `3n - 1` while the optimum is `2n`.
pub fn forest_first_baseline(inst: &FgcInstance) -> Result<BTreeSet<EdgeId>, SolveError> {
    if inst.p() != 1 || inst.q() != 1 {
        return Err(SolveError::BadParameters(
            "the baseline handles p = q = 1".into(),
        ));
    }
    let g = inst.graph();
    let mut dsu = crate::graph::Dsu::new(g.vertex_count());
    let mut chosen: BTreeSet<EdgeId> = BTreeSet::new();
    for e in g.edges() {
        if e.label == EdgeLabel::Safe && dsu.union(e.endpoints.0, e.endpoints.1) {
            chosen.insert(e.id);
        }
    }
    let mut remaining: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| !chosen.contains(&e.id))
        .map(|e| e.id)
        .collect();
    remaining.sort_by(|a, b| {
        (&g.edges()[a.0].cost, a.0).cmp(&(&g.edges()[b.0].cost, b.0))
    });
    let mut queue = remaining.into_iter();
    while !check_1k(inst, &chosen) {
        match queue.next() {
            Some(id) => {
                chosen.insert(id);
            }
            None => {
                return Err(SolveError::Infeasible(
                    "no feasible completion of the safe forest".into(),
                ))
            }
        }
    }
    Ok(chosen)
}
