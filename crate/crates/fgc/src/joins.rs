//! Spanning trees that favor safe edges, odd-degree vertex sets, and exact
//! minimum-cardinality W-joins.
//!
//! The W-join solver runs breadth-first searches for pairwise distances
//! among the target vertices, a subset-DP perfect matching on those
//! distances (exact, supported up to 22 targets), and takes the symmetric
//! difference of the matched shortest paths. For unit weights this is
//! optimal; tests compare against exhaustive search over edge subsets.

use crate::graph::{EdgeId, EdgeLabel, GraphError, MultiGraph};
use std::collections::BTreeSet;
use thiserror::Error;

/// Subset-DP matching is exponential in the number of targets; this is the
/// supported limit.
pub const MAX_JOIN_TARGETS: usize = 22;

#[derive(Debug, Error)]
pub enum JoinError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("target set has odd size {0}")]
    OddTargetCount(usize),
    #[error("no join exists: some component holds an odd number of targets")]
    NoJoin,
    #[error("target set of size {0} exceeds the supported limit {MAX_JOIN_TARGETS}")]
    TooManyTargets(usize),
    #[error("target vertex {vertex} out of range (n = {n})")]
    TargetOutOfRange { vertex: usize, n: usize },
}

/// A minimum-cardinality join instance: find an edge set of the graph whose
/// odd-degree vertex set is exactly `targets`.
#[derive(Debug, Clone)]
pub struct JoinProblem {
    pub graph: MultiGraph,
    pub targets: BTreeSet<usize>,
}

/// Spanning tree maximizing the number of safe edges: a minimum spanning
/// tree under weights 0 (safe) / 1 (unsafe), ties by edge id.
pub fn safe_max_spanning_tree(g: &MultiGraph) -> Result<BTreeSet<EdgeId>, GraphError> {
    let mut dsu = crate::graph::Dsu::new(g.vertex_count());
    let mut tree = BTreeSet::new();
    let ordered = g
        .edges()
        .iter()
        .filter(|e| e.label == EdgeLabel::Safe)
        .chain(g.edges().iter().filter(|e| e.label == EdgeLabel::Unsafe));
    for e in ordered {
        if dsu.union(e.endpoints.0, e.endpoints.1) {
            tree.insert(e.id);
        }
    }
    if dsu.component_count() != 1 {
        return Err(GraphError::Disconnected);
    }
    Ok(tree)
}

/// Vertices of odd degree in `(V, F)`; always an even-sized set.
pub fn odd_degree_set<'a>(
    g: &MultiGraph,
    f: impl IntoIterator<Item = &'a EdgeId>,
) -> BTreeSet<usize> {
    let mut degree = vec![0usize; g.vertex_count()];
    for id in f {
        let e = &g.edges()[id.0];
        degree[e.endpoints.0] += 1;
        degree[e.endpoints.1] += 1;
    }
    (0..g.vertex_count()).filter(|&v| degree[v] % 2 == 1).collect()
}

struct Bfs {
    dist: Vec<u32>,
    parent_edge: Vec<Option<EdgeId>>,
}

/// Unit-length BFS with deterministic parents (adjacency scanned in edge-id
/// order, so the first discovery wins).
fn bfs(g: &MultiGraph, source: usize) -> Bfs {
    let n = g.vertex_count();
    let mut adjacency: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for e in g.edges() {
        adjacency[e.endpoints.0].push((e.endpoints.1, e.id));
        adjacency[e.endpoints.1].push((e.endpoints.0, e.id));
    }
    let mut dist = vec![u32::MAX; n];
    let mut parent_edge = vec![None; n];
    dist[source] = 0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &(w, id) in &adjacency[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                parent_edge[w] = Some(id);
                queue.push_back(w);
            }
        }
    }
    Bfs { dist, parent_edge }
}

/// Exact minimum-cardinality join for the target set.
pub fn min_cardinality_wjoin(problem: &JoinProblem) -> Result<BTreeSet<EdgeId>, JoinError> {
    let g = &problem.graph;
    let n = g.vertex_count();
    let targets: Vec<usize> = problem.targets.iter().copied().collect();
    for &t in &targets {
        if t >= n {
            return Err(JoinError::TargetOutOfRange { vertex: t, n });
        }
    }
    if targets.len() % 2 != 0 {
        return Err(JoinError::OddTargetCount(targets.len()));
    }
    if targets.is_empty() {
        return Ok(BTreeSet::new());
    }
    if targets.len() > MAX_JOIN_TARGETS {
        return Err(JoinError::TooManyTargets(targets.len()));
    }
    let searches: Vec<Bfs> = targets.iter().map(|&t| bfs(g, t)).collect();
    let w = targets.len();
    let full: u32 = (1u32 << w) - 1;
    const INF: u64 = u64::MAX / 4;
    let mut dp = vec![INF; (full as usize) + 1];
    let mut choice = vec![0u8; (full as usize) + 1];
    dp[0] = 0;
    for mask in 1..=full {
        if (mask.count_ones() % 2) != 0 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut j_bits = rest;
        while j_bits != 0 {
            let j = j_bits.trailing_zeros() as usize;
            j_bits &= j_bits - 1;
            let d = searches[i].dist[targets[j]];
            if d == u32::MAX {
                continue;
            }
            let prev = rest & !(1 << j);
            if dp[prev as usize] == INF {
                continue;
            }
            let cand = dp[prev as usize] + d as u64;
            // On ties keep the smallest partner index for determinism.
            if cand < dp[mask as usize] {
                dp[mask as usize] = cand;
                choice[mask as usize] = j as u8;
            }
        }
    }
    if dp[full as usize] >= INF {
        return Err(JoinError::NoJoin);
    }
    // Reconstruct the pairing, then XOR the matched shortest paths.
    let mut join: BTreeSet<EdgeId> = BTreeSet::new();
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = choice[mask as usize] as usize;
        mask &= !(1 << i);
        mask &= !(1 << j);
        let mut v = targets[j];
        let source = targets[i];
        while v != source {
            let id = searches[i].parent_edge[v].expect("path exists");
            if !join.remove(&id) {
                join.insert(id);
            }
            v = g.edges()[id.0].other_endpoint(v);
        }
    }
    debug_assert_eq!(odd_degree_set(g, &join), problem.targets);
    Ok(join)
}
