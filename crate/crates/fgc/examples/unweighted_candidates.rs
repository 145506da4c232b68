//! Unit-cost FGC on the spoked-cycle family: the tree-plus-join candidate,
//! the doubled-2ECSS candidate, the forest-first baseline, and the exact
//! optimum side by side.
//!
//! ```bash
//! cargo run -p fgc --example unweighted_candidates
//! ```

use fgc::gen::gen_figure1;
use fgc::oracle::brute_force_opt;
use fgc::solvers::{forest_first_baseline, solve_unweighted_fgc_traced, ProblemInstance, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SolverConfig::default();
    println!("{:<4} {:>5} {:>10} {:>10} {:>10} {:>9}", "n", "opt", "join-cand", "ecss-cand", "returned", "baseline");
    for n in 2..=6 {
        let instance = gen_figure1(n)?;
        let optimum = brute_force_opt(&ProblemInstance::Fgc(instance.clone()))
            .optimum
            .expect("family instances are feasible");
        let (report, trace) = solve_unweighted_fgc_traced(&instance, &config)?;
        let baseline = forest_first_baseline(&instance)?;
        println!(
            "{:<4} {:>5} {:>10} {:>10} {:>10} {:>9}",
            n,
            optimum,
            trace.join_candidate.as_ref().map_or_else(|| "-".into(), |c| c.len().to_string()),
            trace
                .two_ecss_candidate
                .as_ref()
                .map_or_else(|| "-".into(), |c| c.len().to_string()),
            report.solution.len(),
            baseline.len(),
        );
    }
    println!();
    println!("optimum is 2n; anything built on a maximal safe forest is stuck at 3n-1 or more");
    Ok(())
}
