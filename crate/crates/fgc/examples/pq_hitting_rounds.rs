//! The general (p,q) solver with its augmentation rounds made visible:
//! each round collects the deficient cuts and hits them greedily.
//!
//! ```bash
//! cargo run -p fgc --example pq_hitting_rounds
//! ```

use fgc::gen::{gen_random, ProblemKind, RandomInstanceSpec};
use fgc::rational::format_rational;
use fgc::solvers::{check_pq, solve_pq_traced, ProblemInstance, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RandomInstanceSpec {
        problem: ProblemKind::Fgc { p: 2, q: 2 },
        n: 6,
        m: 11,
        safe_probability: 0.5,
        cost_range: (1, 7),
        cap_range: (1, 1),
        seed: 12,
        ensure_feasible: true,
    };
    let ProblemInstance::Fgc(instance) = gen_random(&spec)? else {
        unreachable!()
    };
    println!(
        "instance: n = {}, m = {}, (p,q) = ({},{})",
        instance.graph().vertex_count(),
        instance.graph().edge_count(),
        instance.p(),
        instance.q()
    );

    let (report, trace) = solve_pq_traced(&instance, &SolverConfig::default())?;
    println!(
        "stage 1 edge count: {} (cost {})",
        trace.stage_one.len(),
        format_rational(&report.stage_costs[0])
    );
    for (i, round) in trace.rounds.iter().enumerate() {
        println!(
            "round {}: {} deficient cuts, picked {:?} at cost {}",
            i + 1,
            round.deficient_sides.len(),
            round.chosen.iter().map(|e| e.0).collect::<Vec<_>>(),
            format_rational(&round.cost)
        );
        for side in &round.deficient_sides {
            println!("  deficient cut {side}");
        }
    }
    if trace.rounds.is_empty() {
        println!("stage 1 already feasible; no augmentation rounds needed");
    }
    println!("iterations: {} (at most q = {})", report.iterations, instance.q());
    println!("total cost: {}", format_rational(&report.cost));
    assert!(check_pq(&instance, &report.solution));
    Ok(())
}
