//! Complete enumeration of minimum and near-minimum cuts.
//!
//! ```bash
//! cargo run -p fgc --example enumerate_cuts
//! ```

use fgc::cuts::enumerate_near_min_cuts;
use fgc::rational::{format_rational, rat, Rational};
use fgc::{EdgeLabel, EdgeSpec, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 6-cycle with one chord; min cut 2.
    let g = MultiGraph::build(
        6,
        vec![
            EdgeSpec::new(0, 1, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(1, 2, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(2, 3, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(3, 4, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(4, 5, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(5, 0, rat(1), EdgeLabel::Safe),
            EdgeSpec::new(1, 4, rat(1), EdgeLabel::Safe),
        ],
    )?;
    let weights: Vec<Rational> = vec![rat(1); g.edge_count()];

    for alpha in [rat(1), rat(2)] {
        let collection = enumerate_near_min_cuts(&g, &weights, &alpha)?;
        println!(
            "alpha = {}: min cut {} with {} cuts within the radius",
            format_rational(&alpha),
            format_rational(&collection.reference_value),
            collection.cuts.len()
        );
        for side in collection.cuts.iter().take(8) {
            let weight: Rational = g
                .cut_edges(side)?
                .iter()
                .map(|id| weights[id.0].clone())
                .sum();
            println!("  {side}  weight {}", format_rational(&weight));
        }
        if collection.cuts.len() > 8 {
            println!("  ... and {} more", collection.cuts.len() - 8);
        }
    }
    Ok(())
}
