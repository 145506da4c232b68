//! Undirected multigraph with labeled edges, exact rational costs and
//! integer capacities. Vertices are `0..n-1`; parallel edges are distinct
//! ids; self-loops are rejected at construction.

use crate::rational::{is_nonnegative, Rational};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Dense edge identifier, unique within one graph, assigned in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Safe,
    Unsafe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    /// Unordered pair, stored with the smaller vertex first.
    pub endpoints: (usize, usize),
    pub cost: Rational,
    pub label: EdgeLabel,
    /// Only meaningful in capacitated contexts; defaults to 1.
    pub capacity: u64,
}

impl EdgeRecord {
    pub fn other_endpoint(&self, v: usize) -> usize {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    pub fn is_safe(&self) -> bool {
        self.label == EdgeLabel::Safe
    }

    /// True when exactly one endpoint lies in `members`.
    pub fn crosses(&self, members: &BTreeSet<usize>) -> bool {
        members.contains(&self.endpoints.0) != members.contains(&self.endpoints.1)
    }
}

/// Edge description fed to [`MultiGraph::build`].
#[derive(Debug, Clone)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    pub cost: Rational,
    pub label: EdgeLabel,
    pub capacity: u64,
}

impl EdgeSpec {
    pub fn new(u: usize, v: usize, cost: Rational, label: EdgeLabel) -> Self {
        EdgeSpec { u, v, cost, label, capacity: 1 }
    }

    pub fn with_capacity(mut self, capacity: u64) -> Self {
        self.capacity = capacity;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} is a self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index} has negative cost")]
    NegativeCost { index: usize },
    #[error("edge {index} endpoint {vertex} is out of range (n = {n})")]
    EndpointOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("cut side is empty or covers every vertex")]
    InvalidCutSide,
    #[error("cut side references vertex {vertex} outside 0..{n}")]
    CutSideOutOfRange { vertex: usize, n: usize },
    #[error("edge id {0} out of range")]
    UnknownEdge(usize),
    #[error("graph with fewer than two vertices has no cut")]
    TooSmallForCut,
    #[error("graph is disconnected under the positive-weight support")]
    Disconnected,
}

/// One side of a cut, canonicalized so that vertex 0 is never a member.
///
/// Cuts are symmetric, so `{S, V \ S}` collapse to a single stored value;
/// collections keyed by `CutSide` are automatically deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutSide {
    members: BTreeSet<usize>,
}

impl CutSide {
    /// Canonicalizes `members` (complementing if it contains vertex 0) and
    /// validates it against a graph on `n` vertices.
    pub fn new(members: BTreeSet<usize>, n: usize) -> Result<Self, GraphError> {
        if let Some(&max) = members.iter().max() {
            if max >= n {
                return Err(GraphError::CutSideOutOfRange { vertex: max, n });
            }
        }
        if members.is_empty() || members.len() >= n {
            return Err(GraphError::InvalidCutSide);
        }
        let members = if members.contains(&0) {
            (0..n).filter(|v| !members.contains(v)).collect()
        } else {
            members
        };
        Ok(CutSide { members })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The complementary vertex set (which contains vertex 0).
    pub fn complement(&self, n: usize) -> BTreeSet<usize> {
        (0..n).filter(|v| !self.members.contains(v)).collect()
    }
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
}

/// Result of contracting an edge set: the quotient graph, the vertex map,
/// and for every surviving edge the id it had in the original graph.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: MultiGraph,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<usize>,
    /// `origin_edges[new edge id] = old edge id`.
    pub origin_edges: Vec<EdgeId>,
}

impl MultiGraph {
    pub fn build(vertex_count: usize, specs: Vec<EdgeSpec>) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut edges = Vec::with_capacity(specs.len());
        for (index, spec) in specs.into_iter().enumerate() {
            if spec.u >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { index, vertex: spec.u, n: vertex_count });
            }
            if spec.v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { index, vertex: spec.v, n: vertex_count });
            }
            if spec.u == spec.v {
                return Err(GraphError::SelfLoop { index, vertex: spec.u });
            }
            if !is_nonnegative(&spec.cost) {
                return Err(GraphError::NegativeCost { index });
            }
            let endpoints = (spec.u.min(spec.v), spec.u.max(spec.v));
            edges.push(EdgeRecord {
                id: EdgeId(index),
                endpoints,
                cost: spec.cost,
                label: spec.label,
                capacity: spec.capacity,
            });
        }
        Ok(MultiGraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&EdgeRecord, GraphError> {
        self.edges.get(id.0).ok_or(GraphError::UnknownEdge(id.0))
    }

    pub fn all_edge_ids(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn total_cost<'a>(&self, ids: impl IntoIterator<Item = &'a EdgeId>) -> Rational {
        ids.into_iter()
            .map(|id| self.edges[id.0].cost.clone())
            .fold(Rational::from_integer(0.into()), |acc, c| acc + c)
    }

    /// Edge ids with exactly one endpoint in `side`, in id order.
    /// Parallel edges appear once per copy.
    pub fn cut_edges(&self, side: &CutSide) -> Result<Vec<EdgeId>, GraphError> {
        if self.vertex_count < 2 {
            return Err(GraphError::TooSmallForCut);
        }
        if let Some(&max) = side.members().iter().max() {
            if max >= self.vertex_count {
                return Err(GraphError::CutSideOutOfRange { vertex: max, n: self.vertex_count });
            }
        }
        if side.is_empty() || side.len() >= self.vertex_count {
            return Err(GraphError::InvalidCutSide);
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.crosses(side.members()))
            .map(|e| e.id)
            .collect())
    }

    /// True iff `(V, F)` is connected (`n = 1` counts as connected).
    pub fn is_connected<'a>(&self, f: impl IntoIterator<Item = &'a EdgeId>) -> bool {
        let mut dsu = Dsu::new(self.vertex_count);
        for id in f {
            let e = &self.edges[id.0];
            dsu.union(e.endpoints.0, e.endpoints.1);
        }
        dsu.component_count() == 1
    }

    /// Contracts every edge in `f`: each connected component of `(V, f)`
    /// becomes one vertex, self-loops vanish, parallel edges survive and
    /// remember their originating id.
    pub fn contract(&self, f: &BTreeSet<EdgeId>) -> Contraction {
        let mut dsu = Dsu::new(self.vertex_count);
        for id in f {
            let e = &self.edges[id.0];
            dsu.union(e.endpoints.0, e.endpoints.1);
        }
        // New ids ordered by the smallest original vertex of each component.
        let mut new_of_root = vec![usize::MAX; self.vertex_count];
        let mut next = 0usize;
        let mut vertex_map = vec![0usize; self.vertex_count];
        for v in 0..self.vertex_count {
            let root = dsu.find(v);
            if new_of_root[root] == usize::MAX {
                new_of_root[root] = next;
                next += 1;
            }
            vertex_map[v] = new_of_root[root];
        }
        let mut specs = Vec::new();
        let mut origin_edges = Vec::new();
        for e in &self.edges {
            let (u, v) = (vertex_map[e.endpoints.0], vertex_map[e.endpoints.1]);
            if u == v {
                continue;
            }
            specs.push(EdgeSpec {
                u,
                v,
                cost: e.cost.clone(),
                label: e.label,
                capacity: e.capacity,
            });
            origin_edges.push(e.id);
        }
        let graph = MultiGraph::build(next, specs).expect("contraction preserves validity");
        Contraction { graph, vertex_map, origin_edges }
    }

    /// Bridges of the subgraph `(V, F)`: edges whose removal disconnects
    /// their own component.
    pub fn bridges<'a>(&self, f: impl IntoIterator<Item = &'a EdgeId> + Clone) -> Vec<EdgeId> {
        let ids: Vec<EdgeId> = f.into_iter().copied().collect();
        let mut result = Vec::new();
        for &candidate in &ids {
            let e = &self.edges[candidate.0];
            let mut dsu = Dsu::new(self.vertex_count);
            for &other in &ids {
                if other != candidate {
                    let o = &self.edges[other.0];
                    dsu.union(o.endpoints.0, o.endpoints.1);
                }
            }
            if dsu.find(e.endpoints.0) != dsu.find(e.endpoints.1) {
                result.push(candidate);
            }
        }
        result
    }
}

/// Union-find over `0..n`.
pub(crate) struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}
