//! Build a small mixed instance in code and solve the (1,k) problem.
//!
//! ```bash
//! cargo run -p fgc --example build_and_solve
//! ```

use fgc::rational::{format_rational, rat};
use fgc::solvers::{check_1k, solve_1k, FgcInstance, SolverConfig};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A wheel: unsafe rim, safe spokes into the hub (vertex 5). The
    // solution must stay connected when any 2 unsafe edges fail
    // (p = 1, q = 2), so the solver weighs cheap rim edges against
    // expensive spokes.
    let graph = MultiGraph::build(
        6,
        vec![
            EdgeSpec::new(0, 1, rat(2), EdgeLabel::Unsafe),
            EdgeSpec::new(1, 2, rat(2), EdgeLabel::Unsafe),
            EdgeSpec::new(2, 3, rat(2), EdgeLabel::Unsafe),
            EdgeSpec::new(3, 4, rat(2), EdgeLabel::Unsafe),
            EdgeSpec::new(4, 0, rat(2), EdgeLabel::Unsafe),
            EdgeSpec::new(0, 5, rat(5), EdgeLabel::Safe),
            EdgeSpec::new(1, 5, rat(5), EdgeLabel::Safe),
            EdgeSpec::new(2, 5, rat(5), EdgeLabel::Safe),
            EdgeSpec::new(3, 5, rat(5), EdgeLabel::Safe),
            EdgeSpec::new(4, 5, rat(5), EdgeLabel::Safe),
        ],
    )?;
    let instance = FgcInstance::new(graph, 1, 2)?;

    let report = solve_1k(&instance, &SolverConfig::default())?;
    println!("picked edges: {:?}", report.solution.iter().map(|e| e.0).collect::<Vec<_>>());
    println!("cost:         {}", format_rational(&report.cost));
    println!("guarantee:    {} (a-priori factor k+1)", format_rational(&report.guarantee));
    if let Some(lower) = &report.lower_bound {
        println!("lower bound:  {} (arborescence certificate)", format_rational(lower));
    }
    assert!(check_1k(&instance, &report.solution));
    println!("feasible:     yes (survives any 2 unsafe-edge failures)");
    Ok(())
}
