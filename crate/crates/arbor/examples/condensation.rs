//! Collapsing maximal bridges: the condensation quotient and what survives
//! the trip down.

use arbor::condense;
use arbor::{NodeSet, Tree};

fn main() {
    // Six bridges of length two or three, glued into a tree of thirteen.
    let t = Tree::from_parts(
        &[
            "a1", "a2", "a3", "b1", "b2", "c1", "c2", "d1", "d2", "e1", "e2", "f1", "f2",
        ],
        &[
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "b1"),
            ("b1", "b2"),
            ("a3", "c1"),
            ("c1", "c2"),
            ("b2", "d1"),
            ("d1", "d2"),
            ("b2", "e1"),
            ("e1", "e2"),
            ("b2", "f1"),
            ("f1", "f2"),
        ],
    )
    .unwrap();

    // A bridge is a segment every path either walks in full or avoids.
    // The maximal ones partition the tree.
    println!("maximal bridges:");
    for bridge in condense::bridge_partition(&t) {
        println!(
            "  {:?} anchored at {:?}",
            t.labels_of(&bridge.nodes),
            t.label(bridge.anchor)
        );
    }

    // The quotient by that partition is the condensation: the same tree
    // with every bridge pinched to a point.
    let q = condense::condensation(&t);
    let qt = q.quotient_tree();
    println!(
        "condensation has {} nodes, rooted at {:?}",
        qt.len(),
        qt.label(qt.root())
    );
    for (p, c) in qt.edges() {
        println!("  {} -> {}", qt.label(p), qt.label(c));
    }
    println!("condensed already: {}", condense::is_condensed(qt));

    // Sets move down to the quotient and back up.
    let spine: NodeSet = ["a1", "a2", "a3", "b1"]
        .iter()
        .map(|l| t.require(l).unwrap())
        .collect();
    let image = q.image(&spine).unwrap();
    println!("image of {:?}: {:?}", t.labels_of(&spine), qt.labels_of(&image));
    let back = q.preimage(&image).unwrap();
    println!("preimage of the image: {:?}", t.labels_of(&back));

    // Condensing twice changes nothing.
    let again = condense::condensation(qt);
    println!(
        "idempotent: {}",
        again.quotient_tree().forest() == qt.forest()
    );
}
