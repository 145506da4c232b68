//! Certify approximation ratios on a batch of random instances: run a
//! solver next to the exhaustive oracle and compare, exactly.
//!
//! ```bash
//! cargo run -p fgc --example oracle_certificates
//! ```

use fgc::gen::{gen_random, ProblemKind, RandomInstanceSpec};
use fgc::oracle::brute_force_opt;
use fgc::rational::{format_rational, rat, Rational};
use fgc::solvers::{solve_1k, ProblemInstance, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SolverConfig::default();
    let k = 2usize; // (1,2): survive any two unsafe failures
    let mut worst: Option<Rational> = None;
    println!("{:<6} {:>8} {:>8} {:>8}", "seed", "cost", "opt", "ratio");
    for seed in 0..12u64 {
        let spec = RandomInstanceSpec {
            problem: ProblemKind::Fgc { p: 1, q: k },
            n: 6,
            m: 10,
            safe_probability: 0.5,
            cost_range: (1, 9),
            cap_range: (1, 1),
            seed,
            ensure_feasible: true,
        };
        let ProblemInstance::Fgc(instance) = gen_random(&spec)? else {
            unreachable!()
        };
        let report = solve_1k(&instance, &config)?;
        let oracle = brute_force_opt(&ProblemInstance::Fgc(instance.clone()));
        let optimum = oracle.optimum.expect("repaired instances are feasible");
        let ratio = &report.cost / &optimum;
        assert!(ratio <= rat(k as i64 + 1), "guarantee violated");
        println!(
            "{:<6} {:>8} {:>8} {:>8}",
            seed,
            format_rational(&report.cost),
            format_rational(&optimum),
            format_rational(&ratio)
        );
        worst = Some(match worst {
            None => ratio,
            Some(w) if ratio > w => ratio,
            Some(w) => w,
        });
    }
    println!(
        "\nworst observed ratio {} against an a-priori factor of {}",
        format_rational(&worst.unwrap()),
        k + 1
    );
    Ok(())
}
