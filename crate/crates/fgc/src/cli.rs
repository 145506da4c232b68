//! Command-line front end: generate, check, solve, certify, enumerate, and
//! benchmark instances from files.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when the instance (or the
//! requested run) is infeasible.

use crate::cuts::enumerate_near_min_cuts;
use crate::format::{instance_digest, parse_instance, parse_solution, serialize_instance};
use crate::gen::{gen_figure1, gen_random, ProblemKind, RandomInstanceSpec};
use crate::mincut::min_cut_value;
use crate::oracle::brute_force_opt;
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::solvers::{
    check_pq, forest_first_baseline, solve_1k, solve_cap_kecss, solve_k1, solve_pq,
    solve_unweighted_fgc, solve_unweighted_k1, ProblemInstance, SolveError,
    SolveReport, SolverConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::time::Instant;

/// One solve, as emitted on stdout. Costs and ratios are exact rationals
/// rendered as strings; `elapsed_ms` is the only non-reproducible field.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub instance_digest: String,
    pub algorithm: String,
    pub cost: String,
    pub guarantee: String,
    pub lower_bound: Option<String>,
    pub ratio: Option<String>,
    pub iterations: usize,
    pub elapsed_ms: f64,
    pub solution: Vec<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "fgc", about = "Flexible graph connectivity solvers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// (1,k) via the (k+1)-arborescence reduction.
    #[value(name = "1k")]
    OneK,
    /// Capacitated k-connected subgraph.
    #[value(name = "capk")]
    CapK,
    /// (k,1) two-stage: k-ECSS plus primal-dual augmentation.
    #[value(name = "k1")]
    KOne,
    /// General (p,q) with greedy hitting-set rounds.
    #[value(name = "pq")]
    Pq,
    /// Unit-cost FGC, best of the join and doubled-2ECSS candidates.
    #[value(name = "unweighted-fgc")]
    UnweightedFgc,
    /// Unit-cost (k,1) with the pluggable k-ECSS stage.
    #[value(name = "unweighted-k1")]
    UnweightedKOne,
    /// Maximal-safe-forest baseline (for the lower-bound family).
    #[value(name = "forest-first")]
    ForestFirst,
}

impl Algorithm {
    fn name(&self) -> &'static str {
        match self {
            Algorithm::OneK => "1k",
            Algorithm::CapK => "capk",
            Algorithm::KOne => "k1",
            Algorithm::Pq => "pq",
            Algorithm::UnweightedFgc => "unweighted-fgc",
            Algorithm::UnweightedKOne => "unweighted-k1",
            Algorithm::ForestFirst => "forest-first",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an instance file.
    Gen(GenArgs),
    /// Test a solution file against the instance's feasibility predicate.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Run an approximation algorithm and print a JSON report.
    Solve {
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long)]
        input: PathBuf,
        /// Also run the exhaustive oracle and report the exact ratio.
        #[arg(long)]
        with_oracle: bool,
    },
    /// Exhaustive exact optimum (desk-scale instances only).
    Oracle {
        #[arg(long)]
        input: PathBuf,
    },
    /// List all cuts within a factor of the minimum cut.
    EnumerateCuts {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Run a seeded family and print per-algorithm ratio statistics.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// figure1 or random.
    #[arg(long)]
    family: String,
    /// Family size for figure1 (2n vertices); vertex count for random.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// fgc or capk (random family).
    #[arg(long, default_value = "fgc")]
    problem: String,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    safe_prob: f64,
    #[arg(long, default_value_t = 1)]
    cost_min: i64,
    #[arg(long, default_value_t = 10)]
    cost_max: i64,
    #[arg(long, default_value_t = 1)]
    cap_min: u64,
    #[arg(long, default_value_t = 1)]
    cap_max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repair the instance until it is feasible.
    #[arg(long, default_value_t = true)]
    ensure_feasible: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// figure1 or random.
    #[arg(long)]
    family: String,
    /// Largest family index for figure1.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "fgc")]
    problem: String,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    m: usize,
    #[arg(long, default_value_t = 0.5)]
    safe_prob: f64,
    #[arg(long, default_value_t = 5)]
    cost_max: i64,
}

#[derive(Debug)]
enum CliFailure {
    Usage(String),
    Infeasible(String),
}

impl From<SolveError> for CliFailure {
    fn from(err: SolveError) -> Self {
        if err.is_infeasibility() {
            CliFailure::Infeasible(err.to_string())
        } else {
            CliFailure::Usage(err.to_string())
        }
    }
}

impl From<crate::format::FormatError> for CliFailure {
    fn from(err: crate::format::FormatError) -> Self {
        CliFailure::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(err: std::io::Error) -> Self {
        CliFailure::Usage(err.to_string())
    }
}

/// Entry point used by the `fgc` binary; returns the process exit code.
pub fn cli_main(args: Vec<String>) -> i32 {
    let mut argv = vec!["fgc".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(CliFailure::Usage(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliFailure::Infeasible(message)) => {
            eprintln!("infeasible: {message}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Check { input, solution } => run_check(&input, &solution),
        Command::Solve { algorithm, input, with_oracle } => {
            run_solve(algorithm, &input, with_oracle)
        }
        Command::Oracle { input } => run_oracle(&input),
        Command::EnumerateCuts { input, alpha } => run_enumerate(&input, &alpha),
        Command::Bench(args) => run_bench(args),
    }
}

fn load_instance(path: &PathBuf) -> Result<ProblemInstance, CliFailure> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_instance(&text)?)
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), CliFailure> {
    match path {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_problem_kind(args_problem: &str, p: usize, q: usize, k: usize) -> Result<ProblemKind, CliFailure> {
    match args_problem {
        "fgc" => Ok(ProblemKind::Fgc { p, q }),
        "capk" => Ok(ProblemKind::CapEcss { k }),
        other => Err(CliFailure::Usage(format!(
            "unknown problem {other:?} (want fgc or capk)"
        ))),
    }
}

fn run_gen(args: GenArgs) -> Result<(), CliFailure> {
    match args.family.as_str() {
        "figure1" => {
            let instance = ProblemInstance::Fgc(gen_figure1(args.n)?);
            emit(&args.output, &serialize_instance(&instance))
        }
        "random" => {
            if args.m == 0 {
                return Err(CliFailure::Usage("random family needs --m".into()));
            }
            let spec = RandomInstanceSpec {
                problem: parse_problem_kind(&args.problem, args.p, args.q, args.k)?,
                n: args.n,
                m: args.m,
                safe_probability: args.safe_prob,
                cost_range: (args.cost_min, args.cost_max),
                cap_range: (args.cap_min, args.cap_max),
                seed: args.seed,
                ensure_feasible: args.ensure_feasible,
            };
            let instance = gen_random(&spec)?;
            emit(&args.output, &serialize_instance(&instance))
        }
        other => Err(CliFailure::Usage(format!(
            "unknown family {other:?} (want figure1 or random)"
        ))),
    }
}

fn run_check(input: &PathBuf, solution: &PathBuf) -> Result<(), CliFailure> {
    let instance = load_instance(input)?;
    let text = std::fs::read_to_string(solution)?;
    let ids = parse_solution(&text, instance.graph().edge_count())?;
    let feasible = match &instance {
        ProblemInstance::Fgc(inst) => check_pq(inst, &ids),
        ProblemInstance::CapEcss(inst) => {
            let weights: Vec<Rational> = inst
                .graph()
                .edges()
                .iter()
                .map(|e| {
                    if ids.contains(&e.id) {
                        rat(inst.normalized_capacity(e) as i64)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            inst.graph().vertex_count() < 2
                || min_cut_value(inst.graph(), &weights)
                    .map(|v| v >= rat(inst.k() as i64))
                    .unwrap_or(false)
        }
    };
    println!("{}", if feasible { "feasible" } else { "infeasible" });
    Ok(())
}

fn dispatch_solver(
    algorithm: Algorithm,
    instance: &ProblemInstance,
    config: &SolverConfig,
) -> Result<SolveReport, CliFailure> {
    let report = match (algorithm, instance) {
        (Algorithm::CapK, ProblemInstance::CapEcss(inst)) => solve_cap_kecss(inst)?,
        (Algorithm::OneK, ProblemInstance::Fgc(inst)) => solve_1k(inst, config)?,
        (Algorithm::KOne, ProblemInstance::Fgc(inst)) => solve_k1(inst, config)?,
        (Algorithm::Pq, ProblemInstance::Fgc(inst)) => solve_pq(inst, config)?,
        (Algorithm::UnweightedFgc, ProblemInstance::Fgc(inst)) => {
            solve_unweighted_fgc(inst, config)?
        }
        (Algorithm::UnweightedKOne, ProblemInstance::Fgc(inst)) => {
            solve_unweighted_k1(inst, config)?
        }
        (Algorithm::ForestFirst, ProblemInstance::Fgc(inst)) => {
            let solution = forest_first_baseline(inst)?;
            let cost = inst.graph().total_cost(&solution);
            SolveReport {
                solution,
                cost,
                guarantee: rat(2),
                lower_bound: None,
                iterations: 1,
                stage_costs: vec![],
            }
        }
        (Algorithm::CapK, _) => {
            return Err(CliFailure::Usage("capk needs a capk instance file".into()))
        }
        _ => {
            return Err(CliFailure::Usage(format!(
                "algorithm {} needs an fgc instance file",
                algorithm.name()
            )))
        }
    };
    Ok(report)
}

fn make_run_report(
    algorithm: Algorithm,
    instance: &ProblemInstance,
    report: &SolveReport,
    with_oracle: bool,
    elapsed_ms: f64,
) -> RunReport {
    let lower_bound = if with_oracle {
        brute_force_opt(instance).optimum
    } else {
        report.lower_bound.clone()
    };
    let ratio = lower_bound.as_ref().and_then(|lb| {
        if lb.is_zero() {
            None
        } else {
            Some(format_rational(&(&report.cost / lb)))
        }
    });
    RunReport {
        instance_digest: instance_digest(instance),
        algorithm: algorithm.name().to_string(),
        cost: format_rational(&report.cost),
        guarantee: format_rational(&report.guarantee),
        lower_bound: lower_bound.as_ref().map(format_rational),
        ratio,
        iterations: report.iterations,
        elapsed_ms,
        solution: report.solution.iter().map(|id| id.0).collect(),
    }
}

fn run_solve(algorithm: Algorithm, input: &PathBuf, with_oracle: bool) -> Result<(), CliFailure> {
    let instance = load_instance(input)?;
    let config = SolverConfig::default();
    let started = Instant::now();
    let report = dispatch_solver(algorithm, &instance, &config)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
    let run = make_run_report(algorithm, &instance, &report, with_oracle, elapsed_ms);
    println!("{}", serde_json::to_string_pretty(&run).expect("report serializes"));
    Ok(())
}

fn run_oracle(input: &PathBuf) -> Result<(), CliFailure> {
    let instance = load_instance(input)?;
    let result = brute_force_opt(&instance);
    let body = serde_json::json!({
        "instance_digest": instance_digest(&instance),
        "optimum": result.optimum.as_ref().map(format_rational),
        "witness": result.witness.iter().map(|id| id.0).collect::<Vec<_>>(),
        "explored": result.explored,
    });
    println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    if result.optimum.is_none() {
        return Err(CliFailure::Infeasible("no feasible edge set exists".into()));
    }
    Ok(())
}

fn run_enumerate(input: &PathBuf, alpha: &str) -> Result<(), CliFailure> {
    let instance = load_instance(input)?;
    let alpha = parse_rational(alpha).map_err(CliFailure::Usage)?;
    let g = instance.graph();
    let weights: Vec<Rational> = match &instance {
        ProblemInstance::Fgc(_) => vec![rat(1); g.edge_count()],
        ProblemInstance::CapEcss(inst) => g
            .edges()
            .iter()
            .map(|e| rat(inst.normalized_capacity(e) as i64))
            .collect(),
    };
    let collection =
        enumerate_near_min_cuts(g, &weights, &alpha).map_err(|e| CliFailure::Usage(e.to_string()))?;
    let cuts: Vec<serde_json::Value> = collection
        .cuts
        .iter()
        .map(|side| {
            let weight: Rational = g
                .cut_edges(side)
                .expect("enumerated side is valid")
                .iter()
                .map(|id| weights[id.0].clone())
                .sum();
            serde_json::json!({
                "side": side.members().iter().copied().collect::<Vec<_>>(),
                "weight": format_rational(&weight),
            })
        })
        .collect();
    let body = serde_json::json!({
        "min_cut": format_rational(&collection.reference_value),
        "alpha": format_rational(&collection.approximation_radius),
        "count": collection.cuts.len(),
        "cuts": cuts,
    });
    println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    Ok(())
}

struct BenchRow {
    algorithm: &'static str,
    instance_label: String,
    cost: Rational,
    optimum: Rational,
}

fn run_bench(args: BenchArgs) -> Result<(), CliFailure> {
    let config = SolverConfig::default();
    let mut rows: Vec<BenchRow> = Vec::new();
    match args.family.as_str() {
        "figure1" => {
            let max_n = args.max_n;
            if max_n < 2 {
                return Err(CliFailure::Usage("max_n must be at least 2".into()));
            }
            for n in 2..=max_n {
                let inst = gen_figure1(n)?;
                let wrapped = ProblemInstance::Fgc(inst.clone());
                let optimum = brute_force_opt(&wrapped)
                    .optimum
                    .ok_or_else(|| CliFailure::Infeasible("family instance infeasible".into()))?;
                let label = format!("figure1-n{n}");
                let unweighted = solve_unweighted_fgc(&inst, &config)?;
                rows.push(BenchRow {
                    algorithm: "unweighted-fgc",
                    instance_label: label.clone(),
                    cost: unweighted.cost,
                    optimum: optimum.clone(),
                });
                let one_k = solve_1k(&inst, &config)?;
                rows.push(BenchRow {
                    algorithm: "1k",
                    instance_label: label.clone(),
                    cost: one_k.cost,
                    optimum: optimum.clone(),
                });
                let baseline = forest_first_baseline(&inst)?;
                rows.push(BenchRow {
                    algorithm: "forest-first",
                    instance_label: label,
                    cost: rat(baseline.len() as i64),
                    optimum,
                });
            }
        }
        "random" => {
            for index in 0..args.count {
                let kind = parse_problem_kind(&args.problem, args.p, args.q, args.k)?;
                let spec = RandomInstanceSpec {
                    problem: kind,
                    n: args.n,
                    m: args.m,
                    safe_probability: args.safe_prob,
                    cost_range: (1, args.cost_max.max(1)),
                    cap_range: (1, 3),
                    seed: args.seed.wrapping_add(index as u64),
                    ensure_feasible: true,
                };
                let instance = gen_random(&spec)?;
                let optimum = brute_force_opt(&instance)
                    .optimum
                    .ok_or_else(|| CliFailure::Infeasible("generated instance infeasible".into()))?;
                let label = format!("random-{index}");
                match &instance {
                    ProblemInstance::CapEcss(inst) => {
                        let report = solve_cap_kecss(inst)?;
                        rows.push(BenchRow {
                            algorithm: "capk",
                            instance_label: label,
                            cost: report.cost,
                            optimum,
                        });
                    }
                    ProblemInstance::Fgc(inst) => {
                        if inst.p() == 1 {
                            let report = solve_1k(inst, &config)?;
                            rows.push(BenchRow {
                                algorithm: "1k",
                                instance_label: label.clone(),
                                cost: report.cost,
                                optimum: optimum.clone(),
                            });
                        }
                        if inst.q() == 1 {
                            let report = solve_k1(inst, &config)?;
                            rows.push(BenchRow {
                                algorithm: "k1",
                                instance_label: label.clone(),
                                cost: report.cost,
                                optimum: optimum.clone(),
                            });
                        }
                        let report = solve_pq(inst, &config)?;
                        rows.push(BenchRow {
                            algorithm: "pq",
                            instance_label: label,
                            cost: report.cost,
                            optimum,
                        });
                    }
                }
            }
        }
        other => {
            return Err(CliFailure::Usage(format!(
                "unknown family {other:?} (want figure1 or random)"
            )))
        }
    }

    println!("{:<16} {:<14} {:>10} {:>8} {:>8}", "algorithm", "instance", "cost", "opt", "ratio");
    for row in &rows {
        let ratio = &row.cost / &row.optimum;
        println!(
            "{:<16} {:<14} {:>10} {:>8} {:>8}",
            row.algorithm,
            row.instance_label,
            format_rational(&row.cost),
            format_rational(&row.optimum),
            format_rational(&ratio),
        );
    }
    println!();
    println!("{:<16} {:>10} {:>12} {:>12}", "algorithm", "instances", "max_ratio", "mean_ratio");
    let mut algorithms: Vec<&'static str> = rows.iter().map(|r| r.algorithm).collect();
    algorithms.sort();
    algorithms.dedup();
    for algorithm in algorithms {
        let ratios: Vec<Rational> = rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .map(|r| &r.cost / &r.optimum)
            .collect();
        let max = ratios.iter().cloned().max().expect("nonempty group");
        let mean: Rational =
            ratios.iter().cloned().sum::<Rational>() / rat(ratios.len() as i64);
        println!(
            "{:<16} {:>10} {:>12} {:>12}",
            algorithm,
            ratios.len(),
            format_rational(&max),
            format_rational(&mean),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, content: &str) -> PathBuf {
        let path = std::env::temp_dir().join(format!("fgc-cli-test-{}-{name}", std::process::id()));
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn solve_triangle_via_cli() {
        let path = write_temp(
            "tri.fgc",
            "fgc 1\nn 3\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 0 2 1 U\n",
        );
        let code = cli_main(vec![
            "solve".into(),
            "--algorithm".into(),
            "1k".into(),
            "--input".into(),
            path.display().to_string(),
        ]);
        assert_eq!(code, 0);
        std::fs::remove_file(path).unwrap();
    }

    #[test]
    fn usage_error_is_exit_one() {
        assert_eq!(cli_main(vec!["solve".into(), "--algorithm".into(), "nope".into()]), 1);
        assert_eq!(cli_main(vec!["frobnicate".into()]), 1);
    }

    #[test]
    fn infeasible_is_exit_two() {
        let path = write_temp("bridge.fgc", "fgc 1\nn 2\np 1 q 1\nedge 0 1 1 U\n");
        let code = cli_main(vec![
            "solve".into(),
            "--algorithm".into(),
            "1k".into(),
            "--input".into(),
            path.display().to_string(),
        ]);
        assert_eq!(code, 2);
        std::fs::remove_file(path).unwrap();
    }

    #[test]
    fn check_command_reports_feasibility() {
        let instance = write_temp(
            "check.fgc",
            "fgc 1\nn 3\np 1 q 1\nedge 0 1 1 U\nedge 1 2 1 U\nedge 0 2 1 U\n",
        );
        let solution = write_temp("check.sol", "0\n1\n2\n");
        let code = cli_main(vec![
            "check".into(),
            "--input".into(),
            instance.display().to_string(),
            "--solution".into(),
            solution.display().to_string(),
        ]);
        assert_eq!(code, 0);
        std::fs::remove_file(instance).unwrap();
        std::fs::remove_file(solution).unwrap();
    }

    #[test]
    fn gen_and_oracle_round_trip() {
        let out = std::env::temp_dir().join(format!("fgc-cli-gen-{}.fgc", std::process::id()));
        let code = cli_main(vec![
            "gen".into(),
            "--family".into(),
            "figure1".into(),
            "--n".into(),
            "2".into(),
            "--output".into(),
            out.display().to_string(),
        ]);
        assert_eq!(code, 0);
        let code = cli_main(vec!["oracle".into(), "--input".into(), out.display().to_string()]);
        assert_eq!(code, 0);
        std::fs::remove_file(out).unwrap();
    }
}
