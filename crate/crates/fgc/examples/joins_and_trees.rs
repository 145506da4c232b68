//! Safe-maximal spanning trees, odd-degree sets, and minimum-cardinality
//! joins: the building blocks of the unweighted solver.
//!
//! ```bash
//! cargo run -p fgc --example joins_and_trees
//! ```

use fgc::joins::{min_cardinality_wjoin, odd_degree_set, safe_max_spanning_tree, JoinProblem};
use fgc::rational::rat;
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Unsafe 6-cycle with two safe chords.
    let g = MultiGraph::build(
        6,
        vec![
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(2, 3, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(3, 4, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(4, 5, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(5, 0, rat(1), EdgeLabel::Unsafe),
            EdgeSpec::new(0, 3, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(1, 4, rat(1), EdgeLabel::Safe),
        ],
    )?;

    let tree = safe_max_spanning_tree(&g)?;
    let safe_in_tree = tree.iter().filter(|id| g.edges()[id.0].is_safe()).count();
    println!(
        "spanning tree {:?} keeps {safe_in_tree} safe edges",
        tree.iter().map(|e| e.0).collect::<Vec<_>>()
    );

    let odd = odd_degree_set(&g, &tree);
    println!("odd-degree vertices of the tree: {odd:?}");

    // Fix the parity of the tree inside the graph itself.
    let join = min_cardinality_wjoin(&JoinProblem { graph: g.clone(), targets: odd.clone() })?;
    println!(
        "minimum join of size {}: {:?}",
        join.len(),
        join.iter().map(|e| e.0).collect::<Vec<_>>()
    );
    assert_eq!(odd_degree_set(&g, &join), odd);
    println!("tree + join has all-even degrees: Eulerian, hence 2-edge-connected after contraction");
    Ok(())
}
