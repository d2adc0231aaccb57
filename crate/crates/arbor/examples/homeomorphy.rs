//! Trees that differ only in how far their bridges stretch, and the common
//! refinement that proves it.

use arbor::homeo::{self, Insertion, RefinementSpec};
use arbor::Tree;

fn main() {
    // Stretching the root of a cherry gives the y-tree; both condense to
    // the same three-node shape.
    let y = Tree::from_parts(&["t", "u", "v", "w"], &[("t", "u"), ("u", "v"), ("u", "w")])
        .unwrap();
    let cherry = Tree::from_parts(&["r", "a", "b"], &[("r", "a"), ("r", "b")]).unwrap();

    println!("canonical form of y:      {}", homeo::canonical_form(&y).code);
    println!(
        "canonical form of cherry: {}",
        homeo::canonical_form(&cherry).code
    );
    println!("isomorphic: {}", homeo::isomorphic(&y, &cherry));
    println!("homeomorphic: {}", homeo::homeomorphic(&y, &cherry));

    // A refinement splices fresh nodes into a bridge; the condensation
    // cannot tell the difference.
    let longer = homeo::refine(
        &y,
        &RefinementSpec {
            insertions: vec![Insertion {
                lower: y.require("t").unwrap(),
                upper: y.require("u").unwrap(),
                chain: vec!["m".into()],
            }],
        },
    )
    .unwrap();
    println!(
        "after splicing m between t and u: {:?}",
        longer.labels_of(&longer.node_set())
    );
    println!("still homeomorphic to y: {}", homeo::homeomorphic(&longer, &y));
    println!("refines y: {}", homeo::is_refinement_of(&longer, &y));

    // Homeomorphic trees admit a common refinement; the witness matches
    // bridges and stretches each to a compatible length.
    let witness = homeo::common_refinement_witness(&y, &cherry).unwrap();
    println!(
        "common refinement of y and cherry ({} nodes):",
        witness.len()
    );
    for (p, c) in witness.edges() {
        println!("  {} -> {}", witness.label(p), witness.label(c));
    }
    println!(
        "refines both: {} / {}",
        homeo::is_refinement_of(&witness, &y),
        homeo::is_refinement_of(&witness, &cherry)
    );
}
