//! The text instance format: parse, normalize, digest, and write files the
//! `fgc` binary consumes.
//!
//! ```bash
//! cargo run -p fgc --example instance_files
//! ```

use fgc::format::{instance_digest, parse_instance, serialize_instance, serialize_solution};
use fgc::solvers::{solve_cap_kecss, ProblemInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
# a capacitated instance; costs may be decimals or fractions
capk 1
n 4
k 2
edge 0 1 1.5 2
edge 1 2 4/2 1
edge 1 2 1 1
edge 2 3 1 2
edge 3 0 2 1
edge 3 0 1 1
";
    let instance = parse_instance(text)?;
    println!("canonical form:\n{}", serialize_instance(&instance));
    println!("digest: {}", instance_digest(&instance));

    let ProblemInstance::CapEcss(capk) = &instance else {
        unreachable!()
    };
    let report = solve_cap_kecss(capk)?;
    println!("solution file:\n{}", serialize_solution(&report.solution));

    // Round-trip: canonical text parses back to the same digest.
    let reparsed = parse_instance(&serialize_instance(&instance))?;
    assert_eq!(instance_digest(&instance), instance_digest(&reparsed));
    println!("round-trip digest stable");
    Ok(())
}
