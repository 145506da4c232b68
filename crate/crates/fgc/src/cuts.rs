//! Complete enumeration of minimum and near-minimum cuts.
//!
//! The enumerator is a recursive contraction search: vertices are committed
//! one at a time to the side of vertex 0 or to the opposite side (committing
//! is edge contraction onto one of two terminals), and a branch is pruned
//! when the minimum s-t cut of the contracted graph already exceeds the
//! weight budget. The search is deterministic and complete; completeness is
//! unit-tested against exhaustive bipartition enumeration.

use crate::graph::{CutSide, EdgeId, GraphError, MultiGraph};
use crate::mincut::{self, FlowArc};
use crate::rational::{rat, Rational};
use num::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CutError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge set is not {required}-edge-connected (minimum cut {found})")]
    NotKEdgeConnected { required: usize, found: Rational },
    #[error("approximation radius must be at least 1")]
    BadRadius,
}

/// Every cut side whose weight lies within `[lambda, radius * lambda]`,
/// sorted by (weight, canonical side). Complete and duplicate-free.
#[derive(Debug, Clone)]
pub struct CutCollection {
    pub cuts: Vec<CutSide>,
    /// The global minimum cut value of the capacitated graph.
    pub reference_value: Rational,
    pub approximation_radius: Rational,
}

impl CutCollection {
    pub fn side_set(&self) -> BTreeSet<CutSide> {
        self.cuts.iter().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }
}

/// All canonical cut sides with weight at most `bound`, together with their
/// weights, sorted by (weight, side). Used by the global min-cut tie-break
/// and by the public enumeration entry points.
pub(crate) fn enumerate_cuts_within(
    g: &MultiGraph,
    weights: &[Rational],
    bound: &Rational,
) -> Result<Vec<(Rational, CutSide)>, GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::TooSmallForCut);
    }
    assert_eq!(weights.len(), g.edge_count());
    let mut search = Search {
        g,
        weights,
        bound,
        assignment: vec![Side::Open; n],
        found: Vec::new(),
    };
    search.assignment[0] = Side::Zero;
    search.run(1, Rational::zero());
    let mut found = search.found;
    found.sort();
    Ok(found)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Open,
    Zero,
    One,
}

struct Search<'a> {
    g: &'a MultiGraph,
    weights: &'a [Rational],
    bound: &'a Rational,
    assignment: Vec<Side>,
    found: Vec<(Rational, CutSide)>,
}

impl Search<'_> {
    fn run(&mut self, next: usize, crossing: Rational) {
        let n = self.g.vertex_count();
        if crossing > *self.bound {
            return;
        }
        if next == n {
            let members: BTreeSet<usize> = (0..n)
                .filter(|&v| self.assignment[v] == Side::One)
                .collect();
            if !members.is_empty() {
                let side = CutSide::new(members, n).expect("proper nonempty side");
                self.found.push((crossing, side));
            }
            return;
        }
        if !self.completion_possible() {
            return;
        }
        for side in [Side::Zero, Side::One] {
            self.assignment[next] = side;
            let mut added = Rational::zero();
            for e in self.g.edges() {
                let (u, v) = e.endpoints;
                let other = if u == next {
                    v
                } else if v == next {
                    u
                } else {
                    continue;
                };
                let other_side = self.assignment[other];
                if other_side != Side::Open && other_side != side {
                    added += &self.weights[e.id.0];
                }
            }
            self.run(next + 1, crossing.clone() + added);
            self.assignment[next] = Side::Open;
        }
    }

    /// Minimum s-t cut of the graph with both committed sides contracted;
    /// if it already exceeds the budget, no completion of this branch can
    /// stay within it.
    fn completion_possible(&self) -> bool {
        let n = self.g.vertex_count();
        if !self.assignment.contains(&Side::One) {
            return true;
        }
        // Terminal 0 = side of vertex 0, terminal 1 = opposite side,
        // open vertex v maps to 2 + v.
        let map = |v: usize| -> usize {
            match self.assignment[v] {
                Side::Zero => 0,
                Side::One => 1,
                Side::Open => 2 + v,
            }
        };
        let mut arcs = Vec::new();
        for e in self.g.edges() {
            let w = &self.weights[e.id.0];
            if w.is_zero() {
                continue;
            }
            let (u, v) = (map(e.endpoints.0), map(e.endpoints.1));
            if u == v {
                continue;
            }
            arcs.push(FlowArc { tail: u, head: v, capacity: w.clone() });
            arcs.push(FlowArc { tail: v, head: u, capacity: w.clone() });
        }
        let (value, _) = mincut::max_flow(2 + n, &arcs, 0, 1);
        value <= *self.bound
    }
}

/// Enumerates every cut side of weight at most `alpha` times the global
/// minimum cut value. Requires the positive-weight support to be connected.
pub fn enumerate_near_min_cuts(
    g: &MultiGraph,
    weights: &[Rational],
    alpha: &Rational,
) -> Result<CutCollection, CutError> {
    if *alpha < rat(1) {
        return Err(CutError::BadRadius);
    }
    let support: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| !weights[e.id.0].is_zero())
        .map(|e| e.id)
        .collect();
    if !g.is_connected(&support) {
        return Err(CutError::Graph(GraphError::Disconnected));
    }
    let lambda = mincut::min_cut_value(g, weights)?;
    let bound = alpha.clone() * &lambda;
    let found = enumerate_cuts_within(g, weights, &bound)?;
    Ok(CutCollection {
        cuts: found.into_iter().map(|(_, side)| side).collect(),
        reference_value: lambda,
        approximation_radius: alpha.clone(),
    })
}

/// The collection of vertex sets whose cut in `(V, F)` has exactly `k`
/// edges. Empty when the minimum cut of `(V, F)` exceeds `k`; an error when
/// `(V, F)` is not `k`-edge-connected.
pub fn k_edge_cut_collection(
    g: &MultiGraph,
    f: &BTreeSet<EdgeId>,
    k: usize,
) -> Result<CutCollection, CutError> {
    assert!(k >= 1);
    let weights: Vec<Rational> = g
        .edges()
        .iter()
        .map(|e| if f.contains(&e.id) { rat(1) } else { Rational::zero() })
        .collect();
    if !g.is_connected(f) {
        return Err(CutError::NotKEdgeConnected { required: k, found: Rational::zero() });
    }
    if g.vertex_count() < 2 {
        return Ok(CutCollection {
            cuts: Vec::new(),
            reference_value: rat(k as i64),
            approximation_radius: rat(1),
        });
    }
    let lambda = mincut::min_cut_value(g, &weights)?;
    if lambda < rat(k as i64) {
        return Err(CutError::NotKEdgeConnected { required: k, found: lambda });
    }
    let cuts = if lambda == rat(k as i64) {
        enumerate_cuts_within(g, &weights, &lambda)?
            .into_iter()
            .map(|(_, side)| side)
            .collect()
    } else {
        Vec::new()
    };
    Ok(CutCollection {
        cuts,
        reference_value: lambda,
        approximation_radius: rat(1),
    })
}
