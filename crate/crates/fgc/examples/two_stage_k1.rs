//! The (k,1) pipeline, stage by stage: a k-edge-connected subgraph first,
//! then primal-dual augmentation of the k-edge-cuts that still carry an
//! unsafe edge. The dual total is a certified lower bound.
//!
//! ```bash
//! cargo run -p fgc --example two_stage_k1
//! ```

use fgc::rational::{format_rational, rat};
use fgc::solvers::{check_k1, solve_k1_traced, FgcInstance, SolverConfig};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 2-edge-connectivity that must survive one unsafe failure (k = 2).
    let graph = MultiGraph::build(
        4,
        vec![
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(2, 3, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(3, 0, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(0, 2, rat(2), EdgeLabel::Safe),
            EdgeSpec::new(1, 3, rat(3), EdgeLabel::Safe),
        ],
    )?;
    let instance = FgcInstance::new(graph, 2, 1)?;

    let (report, trace) = solve_k1_traced(&instance, &SolverConfig::default())?;
    println!(
        "stage 1 (k-ECSS):        {:?}",
        trace.stage_one.iter().map(|e| e.0).collect::<Vec<_>>()
    );
    println!(
        "stage 2 (augmentation):  {:?}",
        trace.stage_two.iter().map(|e| e.0).collect::<Vec<_>>()
    );
    for (side, value) in &trace.dual.dual_values {
        println!("  dual on cut {side}: {}", format_rational(value));
    }
    println!("dual total:              {}", format_rational(&trace.dual.total));
    let stage_two_cost = instance.graph().total_cost(&trace.stage_two);
    println!(
        "augmentation cost {} <= 2 x dual {}",
        format_rational(&stage_two_cost),
        format_rational(&trace.dual.total)
    );
    println!("total cost:              {}", format_rational(&report.cost));
    println!("guarantee:               {}", format_rational(&report.guarantee));
    assert!(check_k1(&instance, &report.solution));
    Ok(())
}
