//! The arborescence engine on its own: bidirect a multigraph, solve the
//! exact minimum-cost k-arborescence, split it into arc-disjoint trees,
//! and project back to undirected edges.
//!
//! ```bash
//! cargo run -p fgc --example arborescence_toolkit
//! ```

use fgc::arborescence::{
    bidirect, decompose_k_arborescence, has_k_arborescence, min_cost_k_arborescence,
    project_arcs_to_edges,
};
use fgc::rational::{format_rational, rat};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = MultiGraph::build(
        4,
        vec![
            EdgeSpec::new(0, 1, rat(3), EdgeLabel::Safe),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(2, 3, rat(2), EdgeLabel::Safe),
            EdgeSpec::new(3, 0, rat(2), EdgeLabel::Safe),
            EdgeSpec::new(0, 2, rat(4), EdgeLabel::Safe),
        ],
    )?;
    let d = bidirect(&g, |_| 1);
    println!("bidirected: {} arcs from {} edges", d.arc_count(), g.edge_count());

    for k in 1..=2 {
        if !has_k_arborescence(&d, 0, k) {
            println!("k = {k}: infeasible");
            continue;
        }
        let (t, cost) = min_cost_k_arborescence(&d, 0, k)?;
        println!("k = {k}: optimum cost {}", format_rational(&cost));
        let parts = decompose_k_arborescence(&d, &t)?;
        for (i, part) in parts.iter().enumerate() {
            let arcs: Vec<String> = part
                .iter()
                .map(|&a| format!("{}->{}", d.arcs()[a].tail, d.arcs()[a].head))
                .collect();
            println!("  tree {}: {}", i + 1, arcs.join(", "));
        }
        let edges = project_arcs_to_edges(&t, &d);
        println!(
            "  projected undirected edges: {:?}",
            edges.iter().map(|e| e.0).collect::<Vec<_>>()
        );
    }
    Ok(())
}
