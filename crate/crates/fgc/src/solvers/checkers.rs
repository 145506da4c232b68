//! Exact feasibility checkers via capacitated minimum cuts.
//!
//! A solution is feasible iff every cut keeps enough safe edges or enough
//! total edges. For `p = 1` or `q <= 1` a single min-cut threshold decides
//! this; the general `(p,q)` case additionally scans every cut of capacity
//! up to twice the minimum (the closed interval is a superset of what is
//! strictly needed, and costs nothing extra to verify).

use super::FgcInstance;
use crate::cuts::enumerate_cuts_within;
use crate::graph::{EdgeId, EdgeLabel};
use crate::mincut::min_cut_value;
use crate::rational::{rat, Rational};
use num::Zero;
use std::collections::BTreeSet;

fn capacity_weights(
    inst: &FgcInstance,
    f: &BTreeSet<EdgeId>,
    safe_capacity: i64,
    unsafe_capacity: i64,
) -> Vec<Rational> {
    inst.graph()
        .edges()
        .iter()
        .map(|e| {
            if !f.contains(&e.id) {
                Rational::zero()
            } else if e.label == EdgeLabel::Safe {
                rat(safe_capacity)
            } else {
                rat(unsafe_capacity)
            }
        })
        .collect()
}

/// Feasibility for `p = 1`: every cut holds a safe edge or `k + 1` unsafe
/// edges, equivalently the capacitated min cut (safe `k+1`, unsafe `1`) is
/// at least `k + 1`.
pub fn check_1k(inst: &FgcInstance, f: &BTreeSet<EdgeId>) -> bool {
    debug_assert_eq!(inst.p(), 1);
    let k = inst.q() as i64;
    if inst.graph().vertex_count() < 2 {
        return true;
    }
    let weights = capacity_weights(inst, f, k + 1, 1);
    min_cut_value(inst.graph(), &weights)
        .map(|value| value >= rat(k + 1))
        .unwrap_or(false)
}

/// Feasibility for `q = 1`: every cut holds `k` safe edges or `k + 1`
/// edges, equivalently the capacitated min cut (safe `k+1`, unsafe `k`) is
/// at least `k(k+1)`.
pub fn check_k1(inst: &FgcInstance, f: &BTreeSet<EdgeId>) -> bool {
    debug_assert_eq!(inst.q(), 1);
    let k = inst.p() as i64;
    if inst.graph().vertex_count() < 2 {
        return true;
    }
    let weights = capacity_weights(inst, f, k + 1, k);
    min_cut_value(inst.graph(), &weights)
        .map(|value| value >= rat(k * (k + 1)))
        .unwrap_or(false)
}

/// General feasibility: every cut holds `p` safe edges or `p + q` edges.
///
/// Under capacities `p+q` (safe) / `p` (unsafe), a min cut below `p(p+q)`
/// is an immediate witness of infeasibility; otherwise any cut of capacity
/// at least twice the minimum satisfies the requirement automatically, so
/// only the cuts within the `[mu, 2 mu]` band need an explicit scan.
pub fn check_pq(inst: &FgcInstance, f: &BTreeSet<EdgeId>) -> bool {
    let (p, q) = (inst.p() as i64, inst.q() as i64);
    let g = inst.graph();
    if g.vertex_count() < 2 {
        return true;
    }
    let weights = capacity_weights(inst, f, p + q, p);
    let Ok(mu) = min_cut_value(g, &weights) else {
        return false;
    };
    if mu < rat(p * (p + q)) {
        return false;
    }
    let bound = rat(2) * &mu;
    let Ok(band) = enumerate_cuts_within(g, &weights, &bound) else {
        return false;
    };
    for (_, side) in band {
        let Ok(ids) = g.cut_edges(&side) else {
            return false;
        };
        let mut safe = 0i64;
        let mut total = 0i64;
        for id in ids {
            if f.contains(&id) {
                total += 1;
                if g.edges()[id.0].label == EdgeLabel::Safe {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeSpec, MultiGraph};

    fn unit(u: usize, v: usize, label: EdgeLabel) -> EdgeSpec {
        EdgeSpec::new(u, v, rat(1), label)
    }

    fn triangle_unsafe() -> FgcInstance {
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
    fn one_k_triangle() {
        let inst = triangle_unsafe();
        assert!(check_1k(&inst, &inst.graph().all_edge_ids()));
        let two: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(1)].into_iter().collect();
        assert!(!check_1k(&inst, &two));
    }

    #[test]
    fn one_k_all_safe_tree() {
        for k in 1..4 {
            let g = MultiGraph::build(
                4,
                vec![
                    unit(0, 1, EdgeLabel::Safe),
                    unit(1, 2, EdgeLabel::Safe),
                    unit(2, 3, EdgeLabel::Safe),
                ],
            )
            .unwrap();
            let inst = FgcInstance::new(g, 1, k).unwrap();
            assert!(check_1k(&inst, &inst.graph().all_edge_ids()));
        }
    }

    #[test]
    fn k_one_four_cycle() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Safe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        assert!(check_k1(&inst, &inst.graph().all_edge_ids()));

        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        assert!(!check_k1(&inst, &inst.graph().all_edge_ids()));
    }

    #[test]
    fn pq_on_k4() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Safe),
                unit(0, 2, EdgeLabel::Safe),
                unit(0, 3, EdgeLabel::Safe),
                unit(1, 2, EdgeLabel::Safe),
                unit(1, 3, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        assert!(check_pq(&inst, &inst.graph().all_edge_ids()));
    }

    #[test]
    fn pq_rejects_weak_cycle() {
        let g = MultiGraph::build(
            4,
            vec![
                unit(0, 1, EdgeLabel::Unsafe),
                unit(1, 2, EdgeLabel::Safe),
                unit(2, 3, EdgeLabel::Safe),
                unit(3, 0, EdgeLabel::Safe),
            ],
        )
        .unwrap();
        let inst = FgcInstance::new(g, 2, 1).unwrap();
        assert!(!check_pq(&inst, &inst.graph().all_edge_ids()));
    }

    #[test]
    fn pq_and_1k_agree_when_p_is_one() {
        let inst = triangle_unsafe();
        let all = inst.graph().all_edge_ids();
        assert_eq!(check_pq(&inst, &all), check_1k(&inst, &all));
        let partial: BTreeSet<EdgeId> = [EdgeId(0), EdgeId(2)].into_iter().collect();
        assert_eq!(check_pq(&inst, &partial), check_1k(&inst, &partial));
    }

    #[test]
    fn single_vertex_is_feasible() {
        let g = MultiGraph::build(1, vec![]).unwrap();
        let inst = FgcInstance::new(g, 2, 3).unwrap();
        assert!(check_pq(&inst, &BTreeSet::new()));
    }
}
