//! Problem instances, solver configuration, and the approximation
//! algorithms for the flexible-connectivity family.

mod arb_based;
mod checkers;
mod k_one;
mod pq;
mod unweighted;

pub use arb_based::{solve_1k, solve_cap_kecss};
pub use checkers::{check_1k, check_k1, check_pq};
pub use k_one::{solve_k1, solve_k1_traced, solve_unweighted_k1, solve_unweighted_k1_traced, K1Trace};
pub use pq::{greedy_hitting_set, harmonic, solve_pq, solve_pq_traced, HittingSetProblem, PqIteration, PqTrace};
pub use unweighted::{
    forest_first_baseline, solve_unweighted_fgc, solve_unweighted_fgc_traced, two_ecss_unweighted,
    UnweightedTrace,
};

use crate::arborescence::ArbError;
use crate::cuts::CutError;
use crate::graph::{EdgeId, EdgeRecord, GraphError, MultiGraph};
use crate::joins::JoinError;
use crate::primal_dual::PdError;
use crate::rational::{rat, Rational};
use num::One;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Arborescence(#[from] ArbError),
    #[error(transparent)]
    Join(#[from] JoinError),
    #[error(transparent)]
    PrimalDual(#[from] PdError),
    #[error("instance infeasible: {0}")]
    Infeasible(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("algorithm requires unit costs")]
    NonUnitCosts,
    #[error("internal error: {0}")]
    Internal(String),
}

impl SolveError {
    /// Whether the error reports an infeasible instance (as opposed to a
    /// usage or internal error); drives the CLI exit code.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            SolveError::Infeasible(_)
                | SolveError::Arborescence(ArbError::NoKArborescence { .. })
                | SolveError::PrimalDual(PdError::AugmentationInfeasible(_))
        )
    }
}

/// A flexible-connectivity instance: stay `p`-edge-connected after the
/// failure of any `q` unsafe edges.
#[derive(Debug, Clone)]
pub struct FgcInstance {
    graph: MultiGraph,
    p: usize,
    q: usize,
}

impl FgcInstance {
    pub fn new(graph: MultiGraph, p: usize, q: usize) -> Result<Self, SolveError> {
        if p < 1 {
            return Err(SolveError::BadParameters("p must be at least 1".into()));
        }
        if !graph.is_connected(&graph.all_edge_ids()) {
            return Err(SolveError::BadParameters("instance graph must be connected".into()));
        }
        Ok(FgcInstance { graph, p, q })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn has_unit_costs(&self) -> bool {
        self.graph.edges().iter().all(|e| e.cost.is_one())
    }
}

/// Capacitated connectivity instance: every cut must carry total selected
/// capacity at least `k`. Capacities are normalized on the fly: zero
/// capacity drops an edge, anything above `k` acts as `k`.
#[derive(Debug, Clone)]
pub struct CapEcssInstance {
    graph: MultiGraph,
    k: usize,
}

impl CapEcssInstance {
    pub fn new(graph: MultiGraph, k: usize) -> Result<Self, SolveError> {
        if k < 1 {
            return Err(SolveError::BadParameters("k must be at least 1".into()));
        }
        if !graph.is_connected(&graph.all_edge_ids()) {
            return Err(SolveError::BadParameters("instance graph must be connected".into()));
        }
        Ok(CapEcssInstance { graph, k })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn normalized_capacity(&self, e: &EdgeRecord) -> u64 {
        e.capacity.min(self.k as u64)
    }

    /// Maximum normalized capacity over usable edges.
    pub fn u_max(&self) -> u64 {
        self.graph
            .edges()
            .iter()
            .map(|e| self.normalized_capacity(e))
            .max()
            .unwrap_or(0)
    }

    /// Minimum normalized capacity over usable (positive-capacity) edges.
    pub fn u_min(&self) -> u64 {
        self.graph
            .edges()
            .iter()
            .map(|e| self.normalized_capacity(e))
            .filter(|&c| c > 0)
            .min()
            .unwrap_or(0)
    }
}

/// Either problem kind, as read from an instance file.
#[derive(Debug, Clone)]
pub enum ProblemInstance {
    Fgc(FgcInstance),
    CapEcss(CapEcssInstance),
}

impl ProblemInstance {
    pub fn graph(&self) -> &MultiGraph {
        match self {
            ProblemInstance::Fgc(inst) => inst.graph(),
            ProblemInstance::CapEcss(inst) => inst.graph(),
        }
    }
}

/// Unweighted subroutine injection points and their declared factors.
///
/// The built-in routines are arborescence-based with factor 2; a better
/// subroutine can be plugged in together with the factor it guarantees,
/// and reported guarantees are computed from these fields.
#[derive(Clone)]
pub struct SolverConfig {
    /// Factor of the unweighted 2-edge-connected subgraph subroutine.
    pub two_ecss_factor: Rational,
    /// Factor of the unweighted k-edge-connected subgraph subroutine.
    pub k_ecss_factor: Rational,
    pub random_seed: u64,
    /// Override for the minimum-size 2-edge-connected spanning subgraph
    /// subroutine; receives the safe-doubled graph and returns ids in it.
    pub two_ecss_override: Option<Arc<TwoEcssFn>>,
    /// Override for the minimum-size k-edge-connected spanning subgraph
    /// subroutine used by the unweighted `(k,1)` pipeline.
    pub k_ecss_override: Option<Arc<KEcssFn>>,
}

pub type TwoEcssFn = dyn Fn(&MultiGraph) -> Result<BTreeSet<EdgeId>, SolveError> + Send + Sync;
pub type KEcssFn =
    dyn Fn(&MultiGraph, usize) -> Result<BTreeSet<EdgeId>, SolveError> + Send + Sync;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            two_ecss_factor: rat(2),
            k_ecss_factor: rat(2),
            random_seed: 0,
            two_ecss_override: None,
            k_ecss_override: None,
        }
    }
}

impl fmt::Debug for SolverConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolverConfig")
            .field("two_ecss_factor", &self.two_ecss_factor)
            .field("k_ecss_factor", &self.k_ecss_factor)
            .field("random_seed", &self.random_seed)
            .field("two_ecss_override", &self.two_ecss_override.as_ref().map(|_| "<fn>"))
            .field("k_ecss_override", &self.k_ecss_override.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

/// Solver output: the chosen edges, exact cost, the a-priori factor for the
/// algorithm that ran, and a certified lower bound when one is available.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: BTreeSet<EdgeId>,
    pub cost: Rational,
    pub guarantee: Rational,
    pub lower_bound: Option<Rational>,
    pub iterations: usize,
    pub stage_costs: Vec<Rational>,
}

/// Rebuilds a graph with mapped costs and capacities; ids and labels are
/// preserved.
pub(crate) fn reshape_graph(
    g: &MultiGraph,
    cost: impl Fn(&EdgeRecord) -> Rational,
    capacity: impl Fn(&EdgeRecord) -> u64,
) -> MultiGraph {
    let specs = g
        .edges()
        .iter()
        .map(|e| crate::graph::EdgeSpec {
            u: e.endpoints.0,
            v: e.endpoints.1,
            cost: cost(e),
            label: e.label,
            capacity: capacity(e),
        })
        .collect();
    MultiGraph::build(g.vertex_count(), specs).expect("reshaped graph stays valid")
}
