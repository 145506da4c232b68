//! Cut-requirement functions under the microscope: the two fixtures that
//! show the (k,1) augmentation function is neither proper nor weakly
//! supermodular, yet still uncrossable, plus a raw primal-dual run.
//!
//! ```bash
//! cargo run -p fgc --example requirement_functions
//! ```

use fgc::cuts::k_edge_cut_collection;
use fgc::primal_dual::{build_requirement, is_uncrossable_bruteforce, minimal_violated_sets, wgmv_solve};
use fgc::rational::{format_rational, rat};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};
use std::collections::BTreeSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Fixture 1: triangle with a doubled unsafe edge, k = 2. Maximality
    // fails: f({0}) = f({1}) = 0 but f({0,1}) = 1.
    let g = MultiGraph::build(
        3,
        vec![
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(0, 2, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Unsafe),
        ],
    )?;
    let base = g.all_edge_ids();
    let collection = k_edge_cut_collection(&g, &base, 2)?;
    let oracle = build_requirement(&collection, &base, &g);
    for members in [vec![0usize], vec![1], vec![0, 1]] {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        println!("f({members:?}) = {}", oracle.evaluate(&set) as u8);
    }
    println!("uncrossable: {}", oracle.is_uncrossable());
    println!(
        "minimal violated sets with nothing chosen: {:?}",
        minimal_violated_sets(&oracle, &BTreeSet::new())
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    );

    // A primal-dual run over fresh candidate edges crossing the cut.
    let augmented = MultiGraph::build(
        3,
        g.edges()
            .iter()
            .map(|e| EdgeSpec::new(e.endpoints.0, e.endpoints.1, e.cost.clone(), e.label))
            .chain([
                EdgeSpec::new(0, 2, rat(2), EdgeLabel::Safe),
                EdgeSpec::new(1, 2, rat(5), EdgeLabel::Safe),
            ])
            .collect(),
    )?;
    let collection = k_edge_cut_collection(&augmented, &base, 2)?;
    let oracle = build_requirement(&collection, &base, &augmented);
    let candidates: BTreeSet<_> = augmented
        .all_edge_ids()
        .difference(&base)
        .copied()
        .collect();
    let (bought, dual) = wgmv_solve(&augmented, &candidates, &oracle)?;
    println!(
        "primal-dual buys {:?} with dual total {}",
        bought.iter().map(|e| e.0).collect::<Vec<_>>(),
        format_rational(&dual.total)
    );

    // A hand-built non-symmetric function is rejected by the brute force.
    let asymmetric = |s: &BTreeSet<usize>| s == &[1].into_iter().collect();
    println!(
        "hand-built non-symmetric function uncrossable: {}",
        is_uncrossable_bruteforce(3, asymmetric)
    );
    Ok(())
}
