//! Rooted k-arborescences: bidirection reductions, an exact minimum-cost
//! solver, and constructive decomposition into arc-disjoint arborescences.
//!
//! `k = 1` uses the classical contraction algorithm. For `k >= 2` the solver
//! runs branch-and-bound on the cut-covering integer program
//! `min { c.x : x(din(S)) >= k for all S avoiding the root, 0 <= x <= u }`
//! with lazily separated cut constraints (a minimum root-to-v cut per
//! vertex) and an exact rational LP bound. The cut system is integral, so
//! the LP bound is almost always tight; branching guarantees exactness
//! regardless. Identical parallel arcs are aggregated into one variable
//! with an integer upper bound, which keeps the LPs tiny.

use crate::graph::{EdgeId, EdgeRecord, MultiGraph};
use crate::mincut::{self, FlowArc};
use crate::rational::{rat, Rational};
use crate::simplex::{self, LpOutcome, LpProblem, LpRow};
use num::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArbError {
    #[error("arc {index} is a self-loop at vertex {vertex}")]
    SelfLoopArc { index: usize, vertex: usize },
    #[error("arc {index} endpoint {vertex} out of range (n = {n})")]
    ArcOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("no {k}-arborescence rooted at {root}")]
    NoKArborescence { root: usize, k: usize },
    #[error("arc multiset is not a valid k-arborescence: {0}")]
    InvalidArborescence(String),
    #[error("lp failure: {0}")]
    Lp(#[from] simplex::LpError),
    #[error("internal solver error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct DigraphArc {
    pub tail: usize,
    pub head: usize,
    pub cost: Rational,
    /// The undirected edge this arc arises from, when built by [`bidirect`].
    pub origin_edge: Option<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<DigraphArc>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: Vec<DigraphArc>) -> Result<Self, ArbError> {
        for (index, arc) in arcs.iter().enumerate() {
            if arc.tail >= vertex_count {
                return Err(ArbError::ArcOutOfRange { index, vertex: arc.tail, n: vertex_count });
            }
            if arc.head >= vertex_count {
                return Err(ArbError::ArcOutOfRange { index, vertex: arc.head, n: vertex_count });
            }
            if arc.tail == arc.head {
                return Err(ArbError::SelfLoopArc { index, vertex: arc.tail });
            }
        }
        Ok(Digraph { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[DigraphArc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn cost_of<'a>(&self, arc_ids: impl IntoIterator<Item = &'a usize>) -> Rational {
        arc_ids.into_iter().map(|&i| self.arcs[i].cost.clone()).sum()
    }
}

/// Union of `k` arc-disjoint arborescences rooted at `root`, stored as the
/// arc index set. Validity (in-degrees and the cut condition) is checked by
/// [`KArborescence::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KArborescence {
    pub root: usize,
    pub k: usize,
    pub arc_ids: BTreeSet<usize>,
}

impl KArborescence {
    pub fn validate(&self, d: &Digraph) -> Result<(), ArbError> {
        let n = d.vertex_count();
        if self.arc_ids.len() != self.k * (n.saturating_sub(1)) {
            return Err(ArbError::InvalidArborescence(format!(
                "expected {} arcs, found {}",
                self.k * (n - 1),
                self.arc_ids.len()
            )));
        }
        let mut indeg = vec![0usize; n];
        for &i in &self.arc_ids {
            indeg[d.arcs[i].head] += 1;
        }
        if indeg[self.root] != 0 {
            return Err(ArbError::InvalidArborescence("root has incoming arcs".into()));
        }
        for v in 0..n {
            if v != self.root && indeg[v] != self.k {
                return Err(ArbError::InvalidArborescence(format!(
                    "vertex {v} has in-degree {} (want {})",
                    indeg[v], self.k
                )));
            }
        }
        let pairs: Vec<(usize, usize)> = self
            .arc_ids
            .iter()
            .map(|&i| (d.arcs[i].tail, d.arcs[i].head))
            .collect();
        for v in 0..n {
            if v != self.root && !unit_flow_at_least(n, &pairs, self.root, v, self.k) {
                return Err(ArbError::InvalidArborescence(format!(
                    "in-cut below {} towards vertex {v}",
                    self.k
                )));
            }
        }
        Ok(())
    }
}

/// For each edge, `multiplicity(e)` bidirected arc pairs with the edge's
/// cost; every arc remembers its originating edge.
pub fn bidirect(g: &MultiGraph, multiplicity: impl Fn(&EdgeRecord) -> u64) -> Digraph {
    let mut arcs = Vec::new();
    for e in g.edges() {
        let (u, v) = e.endpoints;
        for _ in 0..multiplicity(e) {
            arcs.push(DigraphArc { tail: u, head: v, cost: e.cost.clone(), origin_edge: Some(e.id) });
            arcs.push(DigraphArc { tail: v, head: u, cost: e.cost.clone(), origin_edge: Some(e.id) });
        }
    }
    Digraph { vertex_count: g.vertex_count(), arcs }
}

/// Max-flow feasibility: true iff every vertex other than the root has
/// `k` arc-disjoint paths from the root.
pub fn has_k_arborescence(d: &Digraph, root: usize, k: usize) -> bool {
    assert!(root < d.vertex_count());
    let pairs: Vec<(usize, usize)> = d.arcs.iter().map(|a| (a.tail, a.head)).collect();
    (0..d.vertex_count())
        .filter(|&v| v != root)
        .all(|v| unit_flow_at_least(d.vertex_count(), &pairs, root, v, k))
}

/// Unit-capacity max-flow with early exit once `k` augmenting paths exist.
fn unit_flow_at_least(n: usize, arcs: &[(usize, usize)], s: usize, t: usize, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if s == t {
        return true;
    }
    // Residual slots: 2i forward (cap 1), 2i+1 backward (cap 0).
    let mut residual = vec![false; arcs.len() * 2];
    for slot in (0..arcs.len() * 2).step_by(2) {
        residual[slot] = true;
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(tail, head)) in arcs.iter().enumerate() {
        adjacency[tail].push(2 * i);
        adjacency[head].push(2 * i + 1);
    }
    let endpoints = |slot: usize| -> (usize, usize) {
        let (tail, head) = arcs[slot / 2];
        if slot % 2 == 0 {
            (tail, head)
        } else {
            (head, tail)
        }
    };
    let mut flow = 0usize;
    while flow < k {
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &slot in &adjacency[v] {
                let (tail, head) = endpoints(slot);
                if tail != v || seen[head] || !residual[slot] {
                    continue;
                }
                seen[head] = true;
                pred[head] = Some(slot);
                if head == t {
                    break 'bfs;
                }
                queue.push_back(head);
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let slot = pred[v].unwrap();
            residual[slot] = false;
            residual[slot ^ 1] = true;
            v = endpoints(slot).0;
        }
        flow += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Classical contraction algorithm (k = 1).

#[derive(Clone)]
struct CArc {
    id: usize,
    tail: usize,
    head: usize,
    cost: Rational,
}

/// Minimum-cost arborescence by cycle contraction; returns arc ids.
fn contraction_arborescence(n: usize, arcs: &[CArc], root: usize) -> Option<Vec<usize>> {
    if n <= 1 {
        return Some(Vec::new());
    }
    // Cheapest in-arc per vertex, ties to the smallest id.
    let mut chosen: Vec<Option<&CArc>> = vec![None; n];
    for arc in arcs {
        if arc.head == root {
            continue;
        }
        let replace = match chosen[arc.head] {
            None => true,
            Some(current) => {
                arc.cost < current.cost || (arc.cost == current.cost && arc.id < current.id)
            }
        };
        if replace {
            chosen[arc.head] = Some(arc);
        }
    }
    for v in 0..n {
        if v != root && chosen[v].is_none() {
            return None;
        }
    }
    // Find a cycle among chosen arcs, if any.
    let mut color = vec![0u8; n]; // 0 unseen, 1 active, 2 done
    let mut cycle: Option<Vec<usize>> = None;
    'outer: for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if v == root || color[v] == 2 {
                break;
            }
            if color[v] == 1 {
                // v is on the current path: extract the cycle.
                let pos = path.iter().position(|&u| u == v).unwrap();
                cycle = Some(path[pos..].to_vec());
                break 'outer;
            }
            color[v] = 1;
            path.push(v);
            v = chosen[v].unwrap().tail;
        }
        for &u in &path {
            color[u] = 2;
        }
    }
    let Some(cycle) = cycle else {
        // Acyclic: the chosen arcs are the optimum.
        return Some((0..n).filter(|&v| v != root).map(|v| chosen[v].unwrap().id).collect());
    };

    // Contract the cycle into one supervertex and recurse on reduced costs.
    let in_cycle: Vec<bool> = {
        let mut f = vec![false; n];
        for &v in &cycle {
            f[v] = true;
        }
        f
    };
    let mut map = vec![usize::MAX; n];
    let super_vertex = 0usize;
    let mut next = 1usize;
    for v in 0..n {
        map[v] = if in_cycle[v] {
            super_vertex
        } else {
            let id = next;
            next += 1;
            id
        };
    }
    let mut reduced: Vec<CArc> = Vec::new();
    for arc in arcs {
        let (t, h) = (map[arc.tail], map[arc.head]);
        if t == h {
            continue;
        }
        let cost = if in_cycle[arc.head] {
            &arc.cost - &chosen[arc.head].unwrap().cost
        } else {
            arc.cost.clone()
        };
        reduced.push(CArc { id: arc.id, tail: t, head: h, cost });
    }
    let sub = contraction_arborescence(next, &reduced, map[root])?;
    // The unique arc of the solution entering the supervertex decides which
    // cycle arc is dropped.
    let by_id: BTreeMap<usize, &CArc> = arcs.iter().map(|a| (a.id, a)).collect();
    let entering_head = sub
        .iter()
        .map(|id| by_id[id])
        .find(|a| in_cycle[a.head])
        .map(|a| a.head)
        .expect("exactly one arc enters the contracted cycle");
    let mut result = sub;
    for &v in &cycle {
        if v != entering_head {
            result.push(chosen[v].unwrap().id);
        }
    }
    Some(result)
}

// ---------------------------------------------------------------------------
// Branch-and-bound with lazy cut constraints (any k).

struct Group {
    tail: usize,
    head: usize,
    cost: Rational,
    arc_ids: Vec<usize>,
}

fn build_groups(d: &Digraph) -> Vec<Group> {
    let mut index: BTreeMap<(usize, usize, Option<usize>, Rational), usize> = BTreeMap::new();
    let mut groups: Vec<Group> = Vec::new();
    for (i, arc) in d.arcs.iter().enumerate() {
        let key = (arc.tail, arc.head, arc.origin_edge.map(|e| e.0), arc.cost.clone());
        match index.get(&key) {
            Some(&g) => groups[g].arc_ids.push(i),
            None => {
                index.insert(key, groups.len());
                groups.push(Group {
                    tail: arc.tail,
                    head: arc.head,
                    cost: arc.cost.clone(),
                    arc_ids: vec![i],
                });
            }
        }
    }
    groups
}

struct SearchState<'a> {
    groups: &'a [Group],
    n: usize,
    root: usize,
    k: usize,
    pool: Vec<BTreeSet<usize>>,
    pool_keys: BTreeSet<Vec<usize>>,
    incumbent: Option<(Rational, Vec<usize>)>,
    nodes: u64,
}

impl SearchState<'_> {
    fn push_cut(&mut self, side: BTreeSet<usize>) -> bool {
        let key: Vec<usize> = side.iter().copied().collect();
        if self.pool_keys.insert(key) {
            self.pool.push(side);
            true
        } else {
            false
        }
    }

    fn lp(&self, lb: &[usize], ub: &[usize]) -> LpProblem {
        let costs: Vec<Rational> = self.groups.iter().map(|g| g.cost.clone()).collect();
        let lower: Vec<Rational> = lb.iter().map(|&b| rat(b as i64)).collect();
        let upper: Vec<Option<Rational>> = ub.iter().map(|&b| Some(rat(b as i64))).collect();
        let rows = self
            .pool
            .iter()
            .map(|side| LpRow {
                coefficients: self
                    .groups
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !side.contains(&g.tail) && side.contains(&g.head))
                    .map(|(j, _)| (j, rat(1)))
                    .collect(),
                rhs: rat(self.k as i64),
            })
            .collect();
        LpProblem { costs, lower, upper, rows }
    }

    fn explore(&mut self, lb: &mut Vec<usize>, ub: &mut Vec<usize>) -> Result<(), ArbError> {
        self.nodes += 1;
        let values = loop {
            match simplex::solve_min(&self.lp(lb, ub))? {
                LpOutcome::Infeasible => return Ok(()),
                LpOutcome::Optimal { objective, values } => {
                    if let Some((best, _)) = &self.incumbent {
                        if objective >= *best {
                            return Ok(());
                        }
                    }
                    // Separate violated cut constraints with a min cut per
                    // vertex under the fractional arc usage.
                    let mut flow_arcs = Vec::new();
                    for (j, g) in self.groups.iter().enumerate() {
                        if !values[j].is_zero() {
                            flow_arcs.push(FlowArc {
                                tail: g.tail,
                                head: g.head,
                                capacity: values[j].clone(),
                            });
                        }
                    }
                    let target = rat(self.k as i64);
                    let mut added = false;
                    for v in 0..self.n {
                        if v == self.root {
                            continue;
                        }
                        let (flow, side) = mincut::max_flow(self.n, &flow_arcs, self.root, v);
                        if flow < target {
                            debug_assert!(side.contains(&v) && !side.contains(&self.root));
                            added |= self.push_cut(side);
                        }
                    }
                    if !added {
                        break values;
                    }
                }
            }
        };
        if let Some(j) = values.iter().position(|v| !v.denom().is_one()) {
            // Branch on the lowest-index fractional group, ceiling first.
            let floor = values[j].floor().to_integer().to_usize().expect("small count");
            let (old_lb, old_ub) = (lb[j], ub[j]);
            lb[j] = floor + 1;
            self.explore(lb, ub)?;
            lb[j] = old_lb;
            ub[j] = floor;
            self.explore(lb, ub)?;
            ub[j] = old_ub;
            return Ok(());
        }
        let counts: Vec<usize> = values
            .iter()
            .map(|v| v.to_integer().to_usize().expect("small count"))
            .collect();
        let cost: Rational = counts
            .iter()
            .zip(self.groups)
            .map(|(&c, g)| rat(c as i64) * &g.cost)
            .sum();
        let better = match &self.incumbent {
            None => true,
            Some((best, _)) => cost < *best,
        };
        if better {
            self.incumbent = Some((cost, counts));
        }
        Ok(())
    }
}

/// Exact minimum-cost rooted k-arborescence via branch-and-bound with lazy
/// cut generation. Exposed separately so tests can cross-check it against
/// the classical algorithm at `k = 1`.
pub fn min_cost_k_arborescence_branch_bound(
    d: &Digraph,
    root: usize,
    k: usize,
) -> Result<(KArborescence, Rational), ArbError> {
    assert!(k >= 1 && root < d.vertex_count());
    if !has_k_arborescence(d, root, k) {
        return Err(ArbError::NoKArborescence { root, k });
    }
    let n = d.vertex_count();
    if n == 1 {
        return Ok((KArborescence { root, k, arc_ids: BTreeSet::new() }, Rational::zero()));
    }
    let groups = build_groups(d);
    let mut state = SearchState {
        groups: &groups,
        n,
        root,
        k,
        pool: Vec::new(),
        pool_keys: BTreeSet::new(),
        incumbent: None,
        nodes: 0,
    };
    for v in 0..n {
        if v != root {
            state.push_cut([v].into_iter().collect());
        }
    }
    let mut lb = vec![0usize; groups.len()];
    let mut ub: Vec<usize> = groups.iter().map(|g| g.arc_ids.len()).collect();
    state.explore(&mut lb, &mut ub)?;
    let Some((_, counts)) = state.incumbent else {
        return Err(ArbError::Internal("search ended without an incumbent".into()));
    };
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for (g, &count) in groups.iter().zip(&counts) {
        chosen.extend(g.arc_ids.iter().take(count).copied());
    }
    let arb = shrink_to_k_arborescence(d, chosen, root, k)?;
    let cost = d.cost_of(&arb.arc_ids);
    Ok((arb, cost))
}

/// Turns an arc set satisfying the cut condition into an exact
/// k-arborescence (the optimum may carry zero-cost excess arcs).
fn shrink_to_k_arborescence(
    d: &Digraph,
    chosen: BTreeSet<usize>,
    root: usize,
    k: usize,
) -> Result<KArborescence, ArbError> {
    let direct = KArborescence { root, k, arc_ids: chosen.clone() };
    if direct.validate(d).is_ok() {
        return Ok(direct);
    }
    let parts = extract_arborescences(d, &chosen, root, k)?;
    let arc_ids: BTreeSet<usize> = parts.into_iter().flatten().collect();
    let arb = KArborescence { root, k, arc_ids };
    arb.validate(d)?;
    Ok(arb)
}

/// Minimum cut over sets containing every target and avoiding `s` is at
/// least `need`: checked by max-flow to a merged super-sink.
fn merged_flow_at_least(
    n: usize,
    arcs: &[(usize, usize)],
    s: usize,
    targets: &[usize],
    need: usize,
) -> bool {
    if need == 0 {
        return true;
    }
    let sink = n;
    let mut extended: Vec<(usize, usize)> = arcs.to_vec();
    for &t in targets {
        // A bundle wider than `need` so the sink attachment is never the
        // limiting cut.
        for _ in 0..=need {
            extended.push((t, sink));
        }
    }
    unit_flow_at_least(n + 1, &extended, s, sink, need)
}

/// Constructively splits `available` (which must have every in-cut of size
/// at least `k`) into `k` arc-disjoint spanning arborescences.
///
/// Growth step: an arc (u, v) from the reached set to a new vertex may be
/// committed when every set that contains v together with some reached
/// vertex keeps an in-cut of `rounds - 1` in the remaining arcs; sets made
/// purely of unreached vertices keep their full in-cut automatically.
fn extract_arborescences(
    d: &Digraph,
    available: &BTreeSet<usize>,
    root: usize,
    k: usize,
) -> Result<Vec<BTreeSet<usize>>, ArbError> {
    let n = d.vertex_count();
    let mut avail = available.clone();
    let mut result = Vec::with_capacity(k);
    for round in 0..k {
        let remaining_rounds = k - round;
        let mut tree: BTreeSet<usize> = BTreeSet::new();
        let mut reached: BTreeSet<usize> = [root].into_iter().collect();
        while reached.len() < n {
            let mut committed = false;
            let candidates: Vec<usize> = avail
                .iter()
                .copied()
                .filter(|&i| reached.contains(&d.arcs[i].tail) && !reached.contains(&d.arcs[i].head))
                .collect();
            for i in candidates {
                let head = d.arcs[i].head;
                let rest: Vec<(usize, usize)> = avail
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| (d.arcs[j].tail, d.arcs[j].head))
                    .collect();
                let ok = reached.iter().filter(|&&w| w != root).all(|&w| {
                    merged_flow_at_least(n, &rest, root, &[head, w], remaining_rounds - 1)
                });
                if ok {
                    avail.remove(&i);
                    tree.insert(i);
                    reached.insert(head);
                    committed = true;
                    break;
                }
            }
            if !committed {
                return Err(ArbError::InvalidArborescence(
                    "arc set does not decompose into arborescences".into(),
                ));
            }
        }
        result.push(tree);
    }
    Ok(result)
}

/// Exact minimum-cost rooted k-arborescence. `k = 1` dispatches to the
/// classical contraction algorithm.
pub fn min_cost_k_arborescence(
    d: &Digraph,
    root: usize,
    k: usize,
) -> Result<(KArborescence, Rational), ArbError> {
    assert!(k >= 1 && root < d.vertex_count());
    if !has_k_arborescence(d, root, k) {
        return Err(ArbError::NoKArborescence { root, k });
    }
    if k == 1 {
        let arcs: Vec<CArc> = d
            .arcs
            .iter()
            .enumerate()
            .map(|(id, a)| CArc { id, tail: a.tail, head: a.head, cost: a.cost.clone() })
            .collect();
        let ids = contraction_arborescence(d.vertex_count(), &arcs, root)
            .ok_or(ArbError::NoKArborescence { root, k })?;
        let arb = KArborescence { root, k, arc_ids: ids.into_iter().collect() };
        debug_assert!(arb.validate(d).is_ok());
        let cost = d.cost_of(&arb.arc_ids);
        return Ok((arb, cost));
    }
    min_cost_k_arborescence_branch_bound(d, root, k)
}

/// Splits a valid k-arborescence into `k` arc-disjoint arborescences.
pub fn decompose_k_arborescence(
    d: &Digraph,
    t: &KArborescence,
) -> Result<Vec<BTreeSet<usize>>, ArbError> {
    t.validate(d)?;
    extract_arborescences(d, &t.arc_ids, t.root, t.k)
}

/// The set of undirected edges whose arcs appear in `t` (each edge once).
pub fn project_arcs_to_edges(t: &KArborescence, d: &Digraph) -> BTreeSet<EdgeId> {
    t.arc_ids
        .iter()
        .filter_map(|&i| d.arcs[i].origin_edge)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeLabel, EdgeSpec};
    use crate::rational::ratio;

    fn arc(tail: usize, head: usize, cost: i64) -> DigraphArc {
        DigraphArc { tail, head, cost: rat(cost), origin_edge: None }
    }

    /// Exhaustive reference: cheapest arc subset that is a k-arborescence.
    fn exhaustive_optimum(d: &Digraph, root: usize, k: usize) -> Option<Rational> {
        let m = d.arc_count();
        let mut best: Option<Rational> = None;
        for mask in 0u32..(1 << m) {
            let ids: BTreeSet<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let cand = KArborescence { root, k, arc_ids: ids };
            if cand.validate(d).is_ok() {
                let cost = d.cost_of(&cand.arc_ids);
                best = Some(match best {
                    None => cost,
                    Some(b) if cost < b => cost,
                    Some(b) => b,
                });
            }
        }
        best
    }

    #[test]
    fn bidirect_counts() {
        let g = MultiGraph::build(2, vec![EdgeSpec::new(0, 1, rat(4), EdgeLabel::Safe)]).unwrap();
        assert_eq!(bidirect(&g, |_| 1).arc_count(), 2);
        assert_eq!(bidirect(&g, |_| 3).arc_count(), 6);
        let capk = MultiGraph::build(
            2,
            vec![EdgeSpec::new(0, 1, rat(4), EdgeLabel::Safe).with_capacity(2)],
        )
        .unwrap();
        assert_eq!(bidirect(&capk, |e| e.capacity).arc_count(), 4);
    }

    #[test]
    fn feasibility_checks() {
        let g = MultiGraph::build(
            3,
            vec![
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(0, 2, rat(1), EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let d = bidirect(&g, |_| 1);
        assert!(has_k_arborescence(&d, 0, 1));
        assert!(has_k_arborescence(&d, 0, 2));
        assert!(!has_k_arborescence(&d, 0, 3));
        let disconnected = Digraph::new(2, vec![]).unwrap();
        assert!(!has_k_arborescence(&disconnected, 0, 1));
    }

    #[test]
    fn star_forced_solution() {
        let d = Digraph::new(3, vec![arc(0, 1, 5), arc(0, 2, 7)]).unwrap();
        let (t, cost) = min_cost_k_arborescence(&d, 0, 1).unwrap();
        assert_eq!(cost, rat(12));
        assert_eq!(t.arc_ids.len(), 2);
    }

    #[test]
    fn two_vertex_double_arc() {
        // k = 2 must take both forward arcs; the backward arc is useless.
        let d = Digraph::new(2, vec![arc(0, 1, 3), arc(0, 1, 4), arc(1, 0, 1)]).unwrap();
        let (t, cost) = min_cost_k_arborescence(&d, 0, 2).unwrap();
        assert_eq!(cost, rat(7));
        assert_eq!(t.arc_ids, [0, 1].into_iter().collect());
        assert_eq!(exhaustive_optimum(&d, 0, 2).unwrap(), rat(7));
    }

    #[test]
    fn bidirected_triangle_k1_and_k2() {
        let g = MultiGraph::build(
            3,
            vec![
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(0, 2, rat(1), EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let d = bidirect(&g, |_| 1);
        let (_, cost1) = min_cost_k_arborescence(&d, 0, 1).unwrap();
        assert_eq!(cost1, rat(2));
        let (t2, cost2) = min_cost_k_arborescence(&d, 0, 2).unwrap();
        assert_eq!(cost2, exhaustive_optimum(&d, 0, 2).unwrap());
        let parts = decompose_k_arborescence(&d, &t2).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_disjoint(&parts[1]));
    }

    #[test]
    fn infeasible_errors_out() {
        let d = Digraph::new(3, vec![arc(0, 1, 1)]).unwrap();
        assert!(matches!(
            min_cost_k_arborescence(&d, 0, 1),
            Err(ArbError::NoKArborescence { .. })
        ));
    }

    #[test]
    fn rational_costs_stay_exact() {
        let d = Digraph::new(
            3,
            vec![
                DigraphArc { tail: 0, head: 1, cost: ratio(1, 3), origin_edge: None },
                DigraphArc { tail: 0, head: 2, cost: ratio(1, 6), origin_edge: None },
                DigraphArc { tail: 1, head: 2, cost: ratio(1, 7), origin_edge: None },
            ],
        )
        .unwrap();
        let (_, cost) = min_cost_k_arborescence(&d, 0, 1).unwrap();
        assert_eq!(cost, ratio(1, 3) + ratio(1, 7));
    }

    #[test]
    fn decompose_doubled_star() {
        let d = Digraph::new(
            3,
            vec![arc(0, 1, 1), arc(0, 1, 1), arc(0, 2, 1), arc(0, 2, 1)],
        )
        .unwrap();
        let t = KArborescence { root: 0, k: 2, arc_ids: (0..4).collect() };
        let parts = decompose_k_arborescence(&d, &t).unwrap();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert_eq!(part.len(), 2);
        }
    }

    #[test]
    fn decompose_rejects_invalid() {
        let d = Digraph::new(3, vec![arc(0, 1, 1), arc(1, 2, 1), arc(2, 1, 1)]).unwrap();
        let t = KArborescence { root: 0, k: 1, arc_ids: [0, 2].into_iter().collect() };
        assert!(decompose_k_arborescence(&d, &t).is_err());
    }

    #[test]
    fn projection_dedups_origins() {
        let g = MultiGraph::build(
            2,
            vec![EdgeSpec::new(0, 1, rat(2), EdgeLabel::Safe)],
        )
        .unwrap();
        let d = bidirect(&g, |_| 2);
        let t = KArborescence { root: 0, k: 2, arc_ids: [0, 2].into_iter().collect() };
        assert_eq!(project_arcs_to_edges(&t, &d), [EdgeId(0)].into_iter().collect());
        let empty = KArborescence { root: 0, k: 1, arc_ids: BTreeSet::new() };
        assert!(project_arcs_to_edges(&empty, &d).is_empty());
        // Three arcs from two distinct origin edges project to two edges.
        let two = MultiGraph::build(
            2,
            vec![
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        let d2 = bidirect(&two, |_| 2);
        // Arcs 0,2 arise from edge 0; arc 4 from edge 1.
        let mixed = KArborescence { root: 0, k: 3, arc_ids: [0, 2, 4].into_iter().collect() };
        assert_eq!(
            project_arcs_to_edges(&mixed, &d2),
            [EdgeId(0), EdgeId(1)].into_iter().collect()
        );
    }

    #[test]
    fn zero_cost_excess_is_peeled_away() {
        // With zero costs the LP optimum may carry spare arcs; the result
        // must still be an exact k-arborescence.
        let g = MultiGraph::build(
            3,
            vec![
                EdgeSpec::new(0, 1, rat(0), EdgeLabel::Safe),
                EdgeSpec::new(1, 2, rat(0), EdgeLabel::Safe),
                EdgeSpec::new(0, 2, rat(0), EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let d = bidirect(&g, |_| 3);
        for k in 2..=3 {
            let (t, cost) = min_cost_k_arborescence(&d, 0, k).unwrap();
            assert_eq!(cost, rat(0));
            t.validate(&d).unwrap();
            let parts = decompose_k_arborescence(&d, &t).unwrap();
            assert_eq!(parts.len(), k);
        }
    }

    #[test]
    fn branch_bound_agrees_with_exhaustive_small() {
        // A handful of adversarial small digraphs, both k values.
        let cases: Vec<Digraph> = vec![
            Digraph::new(3, vec![arc(0, 1, 2), arc(1, 2, 3), arc(0, 2, 4), arc(2, 1, 1), arc(0, 1, 1), arc(1, 0, 9)]).unwrap(),
            Digraph::new(4, vec![arc(0, 1, 1), arc(1, 2, 1), arc(2, 3, 1), arc(3, 1, 1), arc(0, 2, 5), arc(0, 3, 5), arc(2, 1, 0)]).unwrap(),
            Digraph::new(3, vec![arc(0, 1, 0), arc(0, 1, 0), arc(1, 2, 0), arc(0, 2, 1), arc(2, 0, 1), arc(1, 2, 2)]).unwrap(),
        ];
        for d in &cases {
            for k in 1..=2 {
                let expected = exhaustive_optimum(d, 0, k);
                let got = min_cost_k_arborescence_branch_bound(d, 0, k);
                match expected {
                    None => assert!(got.is_err()),
                    Some(opt) => {
                        let (t, cost) = got.unwrap();
                        assert_eq!(cost, opt);
                        t.validate(d).unwrap();
                    }
                }
            }
        }
    }
}
