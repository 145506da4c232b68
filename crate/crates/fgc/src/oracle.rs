//! Exhaustive exact optimization and definition-level feasibility, used to
//! certify every approximation ratio on desk-scale instances.
//!
//! Everything here is deliberately independent of the solver machinery:
//! feasibility scans all `2^(n-1) - 1` bipartitions directly with bitmask
//! counting (the per-cut form of the failure-set definition), and optima
//! come from a cost-pruned depth-first search over edge subsets.

use crate::graph::{EdgeId, EdgeLabel, MultiGraph};
use crate::rational::{rat, Rational};
use crate::solvers::{FgcInstance, HittingSetProblem, ProblemInstance};
use num::Zero;
use std::collections::BTreeSet;

/// Result of an exhaustive optimization: `None` optimum means infeasible.
#[derive(Debug, Clone)]
pub struct OracleResult<T = EdgeId> {
    pub optimum: Option<Rational>,
    pub witness: BTreeSet<T>,
    pub explored: u64,
}

const MAX_ORACLE_EDGES: usize = 24;
const MAX_ORACLE_VERTICES: usize = 20;

/// Per-edge bitmask encoding over vertices `1..n-1` (vertex 0 is encoded as
/// no bits, so "crosses side `mask`" is a two-bit test).
struct CutScanner {
    codes: Vec<(u64, u64, bool)>, // (code(u), code(v), is_safe)
    capacities: Vec<u64>,
    n: usize,
}

impl CutScanner {
    fn new(g: &MultiGraph, capacity: impl Fn(&crate::graph::EdgeRecord) -> u64) -> Self {
        assert!(g.vertex_count() <= MAX_ORACLE_VERTICES);
        let code = |v: usize| -> u64 {
            if v == 0 {
                0
            } else {
                1u64 << (v - 1)
            }
        };
        CutScanner {
            codes: g
                .edges()
                .iter()
                .map(|e| {
                    (
                        code(e.endpoints.0),
                        code(e.endpoints.1),
                        e.label == EdgeLabel::Safe,
                    )
                })
                .collect(),
            capacities: g.edges().iter().map(&capacity).collect(),
            n: g.vertex_count(),
        }
    }

    /// Every bipartition satisfies: at least `p` chosen safe edges or at
    /// least `p + q` chosen edges across it.
    fn fgc_feasible(&self, chosen: u64, p: usize, q: usize) -> bool {
        if self.n < 2 {
            return true;
        }
        for side in 1u64..(1 << (self.n - 1)) {
            let mut safe = 0usize;
            let mut total = 0usize;
            for (i, &(cu, cv, is_safe)) in self.codes.iter().enumerate() {
                if chosen >> i & 1 == 0 {
                    continue;
                }
                if ((cu & side) != 0) != ((cv & side) != 0) {
                    total += 1;
                    if is_safe {
                        safe += 1;
                    }
                }
            }
            if safe < p && total < p + q {
                return false;
            }
        }
        true
    }

    /// Every bipartition carries total chosen capacity at least `k`.
    fn capacitated_feasible(&self, chosen: u64, k: u64) -> bool {
        if self.n < 2 {
            return true;
        }
        for side in 1u64..(1 << (self.n - 1)) {
            let mut cap = 0u64;
            for (i, &(cu, cv, _)) in self.codes.iter().enumerate() {
                if chosen >> i & 1 == 0 {
                    continue;
                }
                if ((cu & side) != 0) != ((cv & side) != 0) {
                    cap += self.capacities[i];
                }
            }
            if cap < k {
                return false;
            }
        }
        true
    }
}

/// Definition-level feasibility for an edge set of an FGC instance: for
/// every failure set of at most `q` chosen unsafe edges, the remainder is
/// `p`-edge-connected. Checked in its per-cut form (at least `p` safe or at
/// least `p + q` chosen edges across every bipartition), which is the same
/// predicate with the two universal quantifiers swapped.
pub fn brute_force_feasible(inst: &FgcInstance, f: &BTreeSet<EdgeId>) -> bool {
    let scanner = CutScanner::new(inst.graph(), |e| e.capacity);
    let mut chosen = 0u64;
    for id in f {
        chosen |= 1 << id.0;
    }
    scanner.fgc_feasible(chosen, inst.p(), inst.q())
}

/// Exact optimum by depth-first search over edge subsets, excluding
/// expensive edges first, pruning any prefix that already matches the
/// incumbent cost. Exact rational costs make the bound safe.
pub fn brute_force_opt(instance: &ProblemInstance) -> OracleResult {
    let g = instance.graph();
    let m = g.edge_count();
    assert!(m <= MAX_ORACLE_EDGES, "oracle supports at most {MAX_ORACLE_EDGES} edges");
    let feasible: Box<dyn Fn(u64) -> bool> = match instance {
        ProblemInstance::Fgc(inst) => {
            let scanner = CutScanner::new(inst.graph(), |e| e.capacity);
            let (p, q) = (inst.p(), inst.q());
            Box::new(move |chosen| scanner.fgc_feasible(chosen, p, q))
        }
        ProblemInstance::CapEcss(inst) => {
            let scanner = CutScanner::new(inst.graph(), {
                let inst = inst.clone();
                move |e| inst.normalized_capacity(e)
            });
            let k = inst.k() as u64;
            Box::new(move |chosen| scanner.capacitated_feasible(chosen, k))
        }
    };
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut explored: u64 = 1;
    if !feasible(full) {
        return OracleResult { optimum: None, witness: BTreeSet::new(), explored };
    }
    let costs: Vec<Rational> = g.edges().iter().map(|e| e.cost.clone()).collect();
    // Expensive edges first, so the exclude-first search meets cheap
    // subsets early.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| (&costs[b], b).cmp(&(&costs[a], a)));

    struct Dfs<'a> {
        order: &'a [usize],
        costs: &'a [Rational],
        feasible: &'a dyn Fn(u64) -> bool,
        best_cost: Rational,
        best_set: u64,
        explored: u64,
    }
    impl Dfs<'_> {
        fn run(&mut self, depth: usize, chosen: u64, cost: Rational) {
            self.explored += 1;
            if cost >= self.best_cost {
                return;
            }
            if depth == self.order.len() {
                if (self.feasible)(chosen) {
                    self.best_cost = cost;
                    self.best_set = chosen;
                }
                return;
            }
            let edge = self.order[depth];
            self.run(depth + 1, chosen, cost.clone());
            self.run(
                depth + 1,
                chosen | (1 << edge),
                cost + &self.costs[edge],
            );
        }
    }
    let total_cost: Rational = costs.iter().cloned().sum();
    let mut dfs = Dfs {
        order: &order,
        costs: &costs,
        feasible: feasible.as_ref(),
        best_cost: total_cost.clone() + rat(1),
        best_set: full,
        explored,
    };
    dfs.run(0, 0, Rational::zero());
    explored = dfs.explored;
    let witness: BTreeSet<EdgeId> = (0..m)
        .filter(|i| dfs.best_set >> i & 1 == 1)
        .map(EdgeId)
        .collect();
    let optimum = g.total_cost(&witness);
    OracleResult { optimum: Some(optimum), witness, explored }
}

/// Exact minimum-cost hitting set by pruned depth-first search.
pub fn brute_force_min_hitting_set(problem: &HittingSetProblem) -> OracleResult<usize> {
    let n = problem.element_costs.len();
    assert!(n <= 20, "hitting-set oracle supports at most 20 elements");
    if problem.sets.iter().any(|s| s.is_empty()) {
        return OracleResult { optimum: None, witness: BTreeSet::new(), explored: 1 };
    }
    // Expensive elements first; exclude branch first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (&problem.element_costs[b], b).cmp(&(&problem.element_costs[a], a))
    });
    let position_of = {
        let mut pos = vec![0usize; n];
        for (idx, &e) in order.iter().enumerate() {
            pos[e] = idx;
        }
        pos
    };
    // A set is dead if unhit and all of its members lie before the cursor.
    let last_position: Vec<usize> = problem
        .sets
        .iter()
        .map(|s| s.iter().map(|&e| position_of[e]).max().unwrap())
        .collect();

    struct Dfs<'a> {
        problem: &'a HittingSetProblem,
        order: &'a [usize],
        last_position: &'a [usize],
        hits: Vec<usize>,
        unhit: usize,
        best_cost: Option<Rational>,
        best_set: Vec<usize>,
        chosen: Vec<usize>,
        explored: u64,
    }
    impl Dfs<'_> {
        fn run(&mut self, depth: usize, cost: Rational) {
            self.explored += 1;
            if let Some(best) = &self.best_cost {
                if cost >= *best {
                    return;
                }
            }
            if self.unhit == 0 {
                self.best_cost = Some(cost);
                self.best_set = self.chosen.clone();
                return;
            }
            if depth == self.order.len() {
                return;
            }
            for (s, &last) in self.last_position.iter().enumerate() {
                if self.hits[s] == 0 && last < depth {
                    return;
                }
            }
            let element = self.order[depth];
            // Exclude first.
            self.run(depth + 1, cost.clone());
            self.chosen.push(element);
            for (s, set) in self.problem.sets.iter().enumerate() {
                if set.contains(&element) {
                    self.hits[s] += 1;
                    if self.hits[s] == 1 {
                        self.unhit -= 1;
                    }
                }
            }
            self.run(depth + 1, cost + &self.problem.element_costs[element]);
            for (s, set) in self.problem.sets.iter().enumerate() {
                if set.contains(&element) {
                    self.hits[s] -= 1;
                    if self.hits[s] == 0 {
                        self.unhit += 1;
                    }
                }
            }
            self.chosen.pop();
        }
    }
    let mut dfs = Dfs {
        problem,
        order: &order,
        last_position: &last_position,
        hits: vec![0; problem.sets.len()],
        unhit: problem.sets.len(),
        best_cost: None,
        best_set: Vec::new(),
        chosen: Vec::new(),
        explored: 0,
    };
    dfs.run(0, Rational::zero());
    match dfs.best_cost {
        None => OracleResult { optimum: None, witness: BTreeSet::new(), explored: dfs.explored },
        Some(cost) => OracleResult {
            optimum: Some(cost),
            witness: dfs.best_set.into_iter().collect(),
            explored: dfs.explored,
        },
    }
}

/// Removal-loop form of the feasibility definition, kept as a second
/// independent route for cross-checking the bipartition scan in tests.
#[cfg(test)]
pub(crate) fn feasible_by_removals(inst: &FgcInstance, f: &BTreeSet<EdgeId>) -> bool {
    use crate::graph::Dsu;
    let g = inst.graph();
    let (p, q) = (inst.p(), inst.q());
    let unsafe_chosen: Vec<EdgeId> = f
        .iter()
        .filter(|id| g.edges()[id.0].label == EdgeLabel::Unsafe)
        .copied()
        .collect();
    let mut removal_sets: Vec<Vec<EdgeId>> = vec![Vec::new()];
    fn combos(pool: &[EdgeId], size: usize, from: usize, cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            combos(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    for size in 1..=q.min(unsafe_chosen.len()) {
        combos(&unsafe_chosen, size, 0, &mut Vec::new(), &mut removal_sets);
    }
    for removal in &removal_sets {
        let kept: Vec<EdgeId> = f.iter().filter(|id| !removal.contains(id)).copied().collect();
        // p-edge-connectivity via exhaustive cuts on the tiny test graphs.
        let n = g.vertex_count();
        if n < 2 {
            continue;
        }
        let mut dsu = Dsu::new(n);
        for id in &kept {
            let e = &g.edges()[id.0];
            dsu.union(e.endpoints.0, e.endpoints.1);
        }
        if dsu.component_count() != 1 {
            return false;
        }
        for side in 1u64..(1 << (n - 1)) {
            let crossing = kept
                .iter()
                .filter(|id| {
                    let e = &g.edges()[id.0];
                    let in_side = |v: usize| v != 0 && (side >> (v - 1)) & 1 == 1;
                    in_side(e.endpoints.0) != in_side(e.endpoints.1)
                })
                .count();
            if crossing < p {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_figure1;
    use crate::graph::EdgeSpec;
    use crate::solvers::{check_pq, CapEcssInstance, SolverConfig};

    fn unit(u: usize, v: usize, label: EdgeLabel) -> EdgeSpec {
        EdgeSpec::new(u, v, rat(1), label)
    }

    fn unsafe_triangle() -> FgcInstance {
        let g = MultiGraph::build(
            3,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Unsafe),
                unit(0, 2, EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        FgcInstance::new(g, 1, 1).unwrap()
    }

    #[test]
    fn triangle_feasibility() {
        let inst = unsafe_triangle();
        assert!(brute_force_feasible(&inst, &inst.graph().all_edge_ids()));
        let partial: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(1)].into_iter().collect();
        assert!(!brute_force_feasible(&inst, &partial));
    }

    #[test]
    fn spanning_tree_with_unsafe_edge_fails() {
        let g = MultiGraph::build(
            3,
            vec![
                unit(0, 1, EdgeLabel::Safe),
                unit(1, 2, EdgeLabel::Unsafe),
                unit(0, 2, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let tree: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(1)].into_iter().collect();
        assert!(!brute_force_feasible(&inst, &tree));
    }

    #[test]
    fn q_zero_is_plain_connectivity() {
        let g = MultiGraph::build(
            3,
            vec![unit(0, 1, EdgeLabel::Unsafe), unit(1, 2, EdgeLabel::Unsafe)],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 0).unwrap();
        assert!(brute_force_feasible(&inst, &inst.graph().all_edge_ids()));
    }

    #[test]
    fn scan_and_removal_routes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(2..6);
            let m = rng.gen_range(n - 1..9);
            let spec = crate::gen::RandomInstanceSpec {
                problem: crate::gen::ProblemKind::Fgc {
                    p: rng.gen_range(1..3),
                    q: rng.gen_range(0..3),
                },
                n,
                m,
                safe_probability: 0.5,
                cost_range: (1, 4),
                cap_range: (1, 1),
                seed: rng.gen(),
                ensure_feasible: false,
            };
            let ProblemInstance::Fgc(inst) = crate::gen::gen_random(&spec).unwrap() else {
                unreachable!()
            };
            for _ in 0..8 {
                let f: BTreeSet<EdgeId> = (0..inst.graph().edge_count())
                    .filter(|_| rng.gen_bool(0.7))
                    .map(EdgeId)
                    .collect();
                assert_eq!(
                    brute_force_feasible(&inst, &f),
                    feasible_by_removals(&inst, &f)
                );
            }
        }
    }

    #[test]
    fn figure_one_optimum_is_2n() {
        for n in 2..=4 {
            let inst = gen_figure1(n).unwrap();
            let result = brute_force_opt(&ProblemInstance::Fgc(inst));
            assert_eq!(result.optimum.unwrap(), rat(2 * n as i64));
        }
    }

    #[test]
    fn all_safe_reduces_to_mst() {
        let g = MultiGraph::build(
            4,
            vec![
                EdgeSpec::new(0, 1, rat(3), EdgeLabel::Safe),
                EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
                EdgeSpec::new(2, 3, rat(2), EdgeLabel::Safe),
                EdgeSpec::new(3, 0, rat(4), EdgeLabel::Safe),
                EdgeSpec::new(0, 2, rat(1), EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 2).unwrap();
        let result = brute_force_opt(&ProblemInstance::Fgc(inst));
        assert_eq!(result.optimum.unwrap(), rat(4));
    }

    #[test]
    fn two_vertex_safe_unsafe_optimum() {
        let g = MultiGraph::build(
            2,
            vec![
                EdgeSpec::new(0, 1, rat(10), EdgeLabel::Safe),
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let result = brute_force_opt(&ProblemInstance::Fgc(inst));
        assert_eq!(result.optimum.unwrap(), rat(10));
        assert_eq!(result.witness, [EdgeId(0)].into_iter().collect());
    }

    #[test]
    fn infeasible_reports_none() {
        let g = MultiGraph::build(2, vec![unit(0, 1, EdgeLabel::Unsafe)]).unwrap();
        let inst = FgcInstance::new(g, 1, 1).unwrap();
        let result = brute_force_opt(&ProblemInstance::Fgc(inst));
        assert!(result.optimum.is_none());
    }

    #[test]
    fn oracle_agrees_with_checker_on_feasibility() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..40 {
            let spec = crate::gen::RandomInstanceSpec {
                problem: crate::gen::ProblemKind::Fgc {
                    p: rng.gen_range(1..3),
                    q: rng.gen_range(0..3),
                },
                n: rng.gen_range(2..6),
                m: rng.gen_range(4..9),
                safe_probability: 0.6,
                cost_range: (1, 5),
                cap_range: (1, 1),
                seed: rng.gen(),
                ensure_feasible: false,
            };
            if spec.m + 1 < spec.n {
                continue;
            }
            let ProblemInstance::Fgc(inst) = crate::gen::gen_random(&spec).unwrap() else {
                unreachable!()
            };
            let f: BTreeSet<EdgeId> = (0..inst.graph().edge_count())
                .filter(|_| rng.gen_bool(0.8))
                .map(EdgeId)
                .collect();
            assert_eq!(brute_force_feasible(&inst, &f), check_pq(&inst, &f));
        }
    }

    #[test]
    fn capacitated_optimum() {
        let g = MultiGraph::build(
            2,
            vec![
                EdgeSpec::new(0, 1, rat(3), EdgeLabel::Safe).with_capacity(2),
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe).with_capacity(1),
                EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe).with_capacity(1),
            ],
        )
        .unwrap();
        let inst = CapEcssInstance::new(g, 2).unwrap();
        let result = brute_force_opt(&ProblemInstance::CapEcss(inst));
        assert_eq!(result.optimum.unwrap(), rat(2));
    }

    #[test]
    fn hitting_set_oracle() {
        let problem = HittingSetProblem {
            element_costs: vec![rat(1), rat(1), rat(1)],
            sets: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
        };
        let result = brute_force_min_hitting_set(&problem);
        assert_eq!(result.optimum.unwrap(), rat(1));
        assert_eq!(result.witness, [1].into_iter().collect());

        let infeasible = HittingSetProblem {
            element_costs: vec![rat(1)],
            sets: vec![BTreeSet::new()],
        };
        assert!(brute_force_min_hitting_set(&infeasible).optimum.is_none());

        let disjoint = HittingSetProblem {
            element_costs: vec![rat(1); 4],
            sets: vec![
                [0].into_iter().collect(),
                [1].into_iter().collect(),
                [3].into_iter().collect(),
            ],
        };
        assert_eq!(brute_force_min_hitting_set(&disjoint).optimum.unwrap(), rat(3));
    }

    #[test]
    fn oracle_monotone_under_edge_addition() {
        // Adding an edge never raises the optimum.
        let base = MultiGraph::build(
            3,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Unsafe),
                unit(0, 2, EdgeLabel::Unsafe),
            ],
        )
        .unwrap();
        let bigger = MultiGraph::build(
            3,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Unsafe),
                unit(0, 2, EdgeLabel::Unsafe),
                unit(0, 1, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let small = brute_force_opt(&ProblemInstance::Fgc(FgcInstance::new(base, 1, 1).unwrap()));
        let large = brute_force_opt(&ProblemInstance::Fgc(FgcInstance::new(bigger, 1, 1).unwrap()));
        assert!(large.optimum.unwrap() <= small.optimum.unwrap());
    }

    #[test]
    fn ratio_certificate_example() {
        let inst = unsafe_triangle();
        let report = crate::solvers::solve_1k(&inst, &SolverConfig::default()).unwrap();
        let opt = brute_force_opt(&ProblemInstance::Fgc(inst)).optimum.unwrap();
        assert!(report.cost <= report.guarantee * opt);
    }
}
