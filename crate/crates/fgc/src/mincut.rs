//! Global minimum cuts (maximum-adjacency contraction) and s-t maximum
//! flow, both over exact rationals.

use crate::graph::{CutSide, GraphError, MultiGraph};
use crate::rational::Rational;
use num::Zero;
use std::collections::BTreeSet;

/// Weight matrix view of a multigraph: parallel edges summed.
fn weight_matrix(g: &MultiGraph, weights: &[Rational]) -> Vec<Vec<Rational>> {
    let n = g.vertex_count();
    let mut w = vec![vec![Rational::zero(); n]; n];
    for e in g.edges() {
        let (u, v) = e.endpoints;
        w[u][v] += &weights[e.id.0];
        w[v][u] += &weights[e.id.0];
    }
    w
}

/// Minimum cut value by repeated maximum-adjacency orderings.
///
/// Deterministic: each phase starts at the smallest live vertex and ties in
/// the adjacency ordering go to the smallest vertex index. Returns the value
/// only; [`global_min_cut`] recovers the lexicographically smallest side.
pub fn min_cut_value(g: &MultiGraph, weights: &[Rational]) -> Result<Rational, GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::TooSmallForCut);
    }
    assert_eq!(weights.len(), g.edge_count());
    let mut w = weight_matrix(g, weights);
    let mut live: Vec<usize> = (0..n).collect();
    let mut best: Option<Rational> = None;
    while live.len() > 1 {
        // Maximum-adjacency ordering over the current contracted graph.
        let mut in_order = vec![false; n];
        let mut conn: Vec<Rational> = vec![Rational::zero(); n];
        let start = live[0];
        in_order[start] = true;
        for &v in &live {
            if v != start {
                conn[v] = w[start][v].clone();
            }
        }
        let mut order = vec![start];
        while order.len() < live.len() {
            let mut pick = usize::MAX;
            for &v in &live {
                if in_order[v] {
                    continue;
                }
                if pick == usize::MAX || conn[v] > conn[pick] {
                    pick = v;
                }
            }
            in_order[pick] = true;
            order.push(pick);
            for &v in &live {
                if !in_order[v] {
                    conn[v] += &w[pick][v];
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        let cut_of_phase = conn[t].clone();
        best = match best {
            None => Some(cut_of_phase),
            Some(b) if cut_of_phase < b => Some(cut_of_phase),
            Some(b) => Some(b),
        };
        // Merge t into s.
        for &v in &live {
            if v != s && v != t {
                let add = w[t][v].clone();
                w[s][v] += &add;
                w[v][s] += add;
            }
        }
        live.retain(|&v| v != t);
    }
    Ok(best.expect("at least one phase"))
}

/// Global minimum cut: exact value plus the lexicographically smallest
/// canonical side attaining it.
pub fn global_min_cut(
    g: &MultiGraph,
    weights: &[Rational],
) -> Result<(Rational, CutSide), GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::TooSmallForCut);
    }
    let support: Vec<crate::graph::EdgeId> = g
        .edges()
        .iter()
        .filter(|e| !weights[e.id.0].is_zero())
        .map(|e| e.id)
        .collect();
    if !g.is_connected(&support) {
        return Err(GraphError::Disconnected);
    }
    let value = min_cut_value(g, weights)?;
    let collection = crate::cuts::enumerate_cuts_within(g, weights, &value)?;
    let side = collection
        .into_iter()
        .map(|(_, side)| side)
        .min()
        .expect("a minimum cut exists");
    Ok((value, side))
}

/// Arc of a flow network with a fixed rational capacity.
#[derive(Debug, Clone)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Rational,
}

/// Maximum s-t flow (augmenting shortest paths) and the sink-side min cut.
///
/// Returns the flow value and the set of vertices NOT reachable from `s`
/// in the final residual network (a minimum s-t cut's sink side).
pub fn max_flow(
    n: usize,
    arcs: &[FlowArc],
    source: usize,
    sink: usize,
) -> (Rational, BTreeSet<usize>) {
    assert_ne!(source, sink);
    // Residual arcs stored pairwise: 2i forward, 2i+1 backward.
    let mut residual: Vec<Rational> = Vec::with_capacity(arcs.len() * 2);
    for arc in arcs {
        residual.push(arc.capacity.clone());
        residual.push(Rational::zero());
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, arc) in arcs.iter().enumerate() {
        adjacency[arc.tail].push(2 * i);
        adjacency[arc.head].push(2 * i + 1);
    }
    let endpoint = |slot: usize| -> (usize, usize) {
        let arc = &arcs[slot / 2];
        if slot % 2 == 0 {
            (arc.tail, arc.head)
        } else {
            (arc.head, arc.tail)
        }
    };
    let mut value = Rational::zero();
    loop {
        // BFS for a shortest augmenting path.
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &slot in &adjacency[v] {
                let (tail, head) = endpoint(slot);
                if tail != v || seen[head] || residual[slot].is_zero() {
                    continue;
                }
                seen[head] = true;
                pred[head] = Some(slot);
                queue.push_back(head);
            }
        }
        if !seen[sink] {
            let side: BTreeSet<usize> = (0..n).filter(|&v| !seen[v]).collect();
            return (value, side);
        }
        // Bottleneck along the path.
        let mut bottleneck: Option<Rational> = None;
        let mut v = sink;
        while v != source {
            let slot = pred[v].unwrap();
            bottleneck = Some(match bottleneck {
                None => residual[slot].clone(),
                Some(b) if residual[slot] < b => residual[slot].clone(),
                Some(b) => b,
            });
            v = endpoint(slot).0;
        }
        let bottleneck = bottleneck.unwrap();
        let mut v = sink;
        while v != source {
            let slot = pred[v].unwrap();
            residual[slot] -= &bottleneck;
            residual[slot ^ 1] += &bottleneck;
            v = endpoint(slot).0;
        }
        value += bottleneck;
    }
}
