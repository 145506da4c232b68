//! Capacitated k-connected subgraph: every cut of the chosen edges must
//! carry total capacity at least k.
//!
//! ```bash
//! cargo run -p fgc --example capacitated_subgraph
//! ```

use fgc::rational::{format_rational, rat};
use fgc::solvers::{solve_cap_kecss, CapEcssInstance};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two hubs joined by a fat edge, plus cheap thin edges. k = 3.
    let graph = MultiGraph::build(
        4,
        vec![
            EdgeSpec::new(0, 1, rat(4), EdgeLabel::Safe).with_capacity(3),
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe).with_capacity(1),
            EdgeSpec::new(1, 2, rat(2), EdgeLabel::Safe).with_capacity(2),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe).with_capacity(1),
            EdgeSpec::new(2, 3, rat(3), EdgeLabel::Safe).with_capacity(3),
            EdgeSpec::new(2, 3, rat(1), EdgeLabel::Safe).with_capacity(2),
            EdgeSpec::new(3, 0, rat(2), EdgeLabel::Safe).with_capacity(2),
            // Capacity 9 acts as capacity k after normalization.
            EdgeSpec::new(0, 2, rat(6), EdgeLabel::Safe).with_capacity(9),
        ],
    )?;
    let instance = CapEcssInstance::new(graph, 3)?;
    println!("k = {}, u_max after normalization = {}", instance.k(), instance.u_max());

    let report = solve_cap_kecss(&instance)?;
    println!("picked edges: {:?}", report.solution.iter().map(|e| e.0).collect::<Vec<_>>());
    println!("cost:         {}", format_rational(&report.cost));
    println!(
        "guarantee:    {} (min(k, 2 u_max))",
        format_rational(&report.guarantee)
    );
    Ok(())
}
