//! Instance generators: the hard spoked-cycle family and seeded random
//! instances with an optional feasibility repair pass.

use crate::graph::{EdgeLabel, EdgeRecord, EdgeSpec, MultiGraph};
use crate::mincut::{global_min_cut, min_cut_value};
use crate::rational::{rat, Rational};
use crate::solvers::{
    check_pq, CapEcssInstance, FgcInstance, ProblemInstance, SolveError,
};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lower-bound family: `2n` vertices on an unsafe Hamiltonian cycle, with a
/// safe spoke from every second vertex to the hub `v_{2n}`. Every feasible
/// solution contains all `2n` unsafe edges, so the optimum is `2n`, while
/// anything built on a maximal safe forest is forced to `3n - 1` or more.
pub fn gen_figure1(n: usize) -> Result<FgcInstance, SolveError> {
    if n < 2 {
        return Err(SolveError::BadParameters("the family needs n >= 2".into()));
    }
    let vertices = 2 * n;
    let mut specs = Vec::with_capacity(3 * n - 1);
    for v in 0..vertices {
        specs.push(EdgeSpec::new(v, (v + 1) % vertices, rat(1), EdgeLabel::Unsafe));
    }
    // Spokes v_{2i} .. v_{2n} for i = 1..n-1, in 0-indexed terms 2i-1 .. 2n-1.
    for i in 1..n {
        specs.push(EdgeSpec::new(2 * i - 1, vertices - 1, rat(1), EdgeLabel::Safe));
    }
    let graph = MultiGraph::build(vertices, specs)?;
    FgcInstance::new(graph, 1, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Fgc { p: usize, q: usize },
    CapEcss { k: usize },
}

/// Parameters of a seeded random instance. With `ensure_feasible`, a
/// deterministic repair pass duplicates edges across violated cuts (safe
/// labels, clamped capacities) until the instance admits a solution.
#[derive(Debug, Clone)]
pub struct RandomInstanceSpec {
    pub problem: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub safe_probability: f64,
    pub cost_range: (i64, i64),
    pub cap_range: (u64, u64),
    pub seed: u64,
    pub ensure_feasible: bool,
}

impl RandomInstanceSpec {
    pub fn unit_costs(problem: ProblemKind, n: usize, m: usize, safe_probability: f64, seed: u64) -> Self {
        RandomInstanceSpec {
            problem,
            n,
            m,
            safe_probability,
            cost_range: (1, 1),
            cap_range: (1, 1),
            seed,
            ensure_feasible: true,
        }
    }
}

pub fn gen_random(spec: &RandomInstanceSpec) -> Result<ProblemInstance, SolveError> {
    if spec.n == 0 {
        return Err(SolveError::BadParameters("n must be positive".into()));
    }
    if spec.n > 1 && spec.m + 1 < spec.n {
        return Err(SolveError::BadParameters("m must be at least n - 1".into()));
    }
    if spec.cost_range.0 < 0 || spec.cost_range.0 > spec.cost_range.1 {
        return Err(SolveError::BadParameters("bad cost range".into()));
    }
    if spec.cap_range.0 > spec.cap_range.1 {
        return Err(SolveError::BadParameters("bad capacity range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut specs: Vec<EdgeSpec> = Vec::with_capacity(spec.m);
    let draw_edge = |rng: &mut ChaCha8Rng, u: usize, v: usize| {
        let label = if rng.gen_bool(spec.safe_probability.clamp(0.0, 1.0)) {
            EdgeLabel::Safe
        } else {
            EdgeLabel::Unsafe
        };
        let cost = rat(rng.gen_range(spec.cost_range.0..=spec.cost_range.1));
        let capacity = rng.gen_range(spec.cap_range.0..=spec.cap_range.1);
        EdgeSpec::new(u, v, cost, label).with_capacity(capacity)
    };
    // Random spanning tree first, then extra edges.
    for v in 1..spec.n {
        let u = rng.gen_range(0..v);
        specs.push(draw_edge(&mut rng, u, v));
    }
    while specs.len() < spec.m {
        let u = rng.gen_range(0..spec.n);
        let v = rng.gen_range(0..spec.n);
        if u != v {
            specs.push(draw_edge(&mut rng, u, v));
        }
    }
    let graph = MultiGraph::build(spec.n, specs)?;
    let instance = match spec.problem {
        ProblemKind::Fgc { p, q } => ProblemInstance::Fgc(FgcInstance::new(graph, p, q)?),
        ProblemKind::CapEcss { k } => ProblemInstance::CapEcss(CapEcssInstance::new(graph, k)?),
    };
    if spec.ensure_feasible {
        repair_to_feasible(instance)
    } else {
        Ok(instance)
    }
}

/// Deterministic repair: while the full edge set is infeasible, find a
/// violated cut and duplicate its smallest-id graph edge as a safe edge of
/// full capacity. Terminates because every round strictly raises the
/// capacity of the violated cut.
fn repair_to_feasible(instance: ProblemInstance) -> Result<ProblemInstance, SolveError> {
    let mut instance = instance;
    let limit = 10 * instance.graph().edge_count() + 20;
    for _ in 0..limit {
        match &instance {
            ProblemInstance::Fgc(inst) => {
                if inst.graph().vertex_count() < 2 || check_pq(inst, &inst.graph().all_edge_ids()) {
                    return Ok(instance);
                }
                let (p, q) = (inst.p(), inst.q());
                let side = violated_fgc_cut(inst).ok_or_else(|| {
                    SolveError::Internal("checker failed but no violated cut found".into())
                })?;
                let graph = duplicate_smallest_crossing(inst.graph(), &side, (p + q) as u64)?;
                instance = ProblemInstance::Fgc(FgcInstance::new(graph, p, q)?);
            }
            ProblemInstance::CapEcss(inst) => {
                let g = inst.graph();
                if g.vertex_count() < 2 {
                    return Ok(instance);
                }
                let k = inst.k();
                let weights: Vec<Rational> = g
                    .edges()
                    .iter()
                    .map(|e| rat(inst.normalized_capacity(e) as i64))
                    .collect();
                let lambda = min_cut_value(g, &weights)?;
                if lambda >= rat(k as i64) {
                    return Ok(instance);
                }
                // A minimum cut is a violated cut; the enumeration works
                // even when zero-capacity edges disconnect the support.
                let band = crate::cuts::enumerate_cuts_within(g, &weights, &lambda)?;
                let side = band
                    .into_iter()
                    .map(|(_, side)| side)
                    .next()
                    .ok_or_else(|| SolveError::Internal("no minimum cut found".into()))?;
                let graph = duplicate_smallest_crossing(g, &side, k as u64)?;
                instance = ProblemInstance::CapEcss(CapEcssInstance::new(graph, k)?);
            }
        }
    }
    Err(SolveError::Internal("feasibility repair did not converge".into()))
}

fn violated_fgc_cut(inst: &FgcInstance) -> Option<crate::graph::CutSide> {
    let g = inst.graph();
    let (p, q) = (inst.p() as i64, inst.q() as i64);
    let weights: Vec<Rational> = g
        .edges()
        .iter()
        .map(|e| if e.label == EdgeLabel::Safe { rat(p + q) } else { rat(p) })
        .collect();
    let (mu, side) = global_min_cut(g, &weights).ok()?;
    if mu < rat(p * (p + q)) {
        return Some(side);
    }
    let bound = rat(2) * &mu;
    let band = crate::cuts::enumerate_cuts_within(g, &weights, &bound).ok()?;
    for (_, side) in band {
        let ids = g.cut_edges(&side).ok()?;
        let safe = ids
            .iter()
            .filter(|id| g.edges()[id.0].label == EdgeLabel::Safe)
            .count() as i64;
        if safe < p && (ids.len() as i64) < p + q {
            return Some(side);
        }
    }
    None
}

fn duplicate_smallest_crossing(
    g: &MultiGraph,
    side: &crate::graph::CutSide,
    capacity: u64,
) -> Result<MultiGraph, SolveError> {
    let crossing = g.cut_edges(side)?;
    let template: &EdgeRecord = match crossing.first() {
        Some(id) => &g.edges()[id.0],
        None => {
            // Disconnected across the cut: connect the smallest vertices.
            let u = *side.complement(g.vertex_count()).iter().next().unwrap();
            let v = *side.members().iter().next().unwrap();
            let mut specs = existing_specs(g);
            specs.push(EdgeSpec::new(u, v, Rational::zero(), EdgeLabel::Safe).with_capacity(capacity));
            return Ok(MultiGraph::build(g.vertex_count(), specs)?);
        }
    };
    let mut specs = existing_specs(g);
    specs.push(
        EdgeSpec::new(
            template.endpoints.0,
            template.endpoints.1,
            template.cost.clone(),
            EdgeLabel::Safe,
        )
        .with_capacity(capacity.max(1)),
    );
    Ok(MultiGraph::build(g.vertex_count(), specs)?)
}

fn existing_specs(g: &MultiGraph) -> Vec<EdgeSpec> {
    g.edges()
        .iter()
        .map(|e| {
            EdgeSpec::new(e.endpoints.0, e.endpoints.1, e.cost.clone(), e.label)
                .with_capacity(e.capacity)
        })
        .collect()
}
