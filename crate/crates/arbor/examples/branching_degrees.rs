//! Where and how strongly a tree branches: undividedness classes, the two
//! branching notions, degrees, and bars.

use arbor::branching::{self, StemRef};
use arbor::Tree;

fn main() {
    // A chain of two that splits into three leaves at u.
    let t = Tree::from_parts(
        &["t", "u", "x", "y", "z"],
        &[("t", "u"), ("u", "x"), ("u", "y"), ("u", "z")],
    )
    .unwrap();
    let at = |l: &str| StemRef::Node(t.require(l).unwrap());

    // Two paths through a stem are undivided when they share a node above
    // it; the classes of that equivalence count the directions the tree
    // takes from there.
    let classes = branching::undividedness_classes(&t, at("u")).unwrap();
    println!("paths through u fall into {} classes:", classes.classes.len());
    for class in &classes.classes {
        println!(
            "  component around {:?} with {} path(s)",
            t.label(class.component.representative),
            class.paths.len()
        );
    }

    // Branching-1 asks for more than one class; branching-2 asks that no
    // node above the stem dominates the whole region.
    for label in ["t", "u"] {
        println!(
            "{}: branching1 = {}, branching2 = {}",
            label,
            branching::is_branching1(&t, at(label)).unwrap(),
            branching::is_branching2(&t, at(label)),
        );
    }

    // Both degree notions agree with the child count on finite trees.
    println!(
        "degree at u: n1 = {}, n2 = {:?}",
        branching::n_branching1(&t, at("u")).unwrap(),
        branching::n_branching2_bruteforce(&t, at("u"), branching::BRUTE_FORCE_CAP).unwrap(),
    );

    // A bar is a set above the stem that every path through it must meet.
    // Branching-2 is equivalent to: bars exist and none is a singleton.
    let bars = branching::enumerate_bars(&t, at("u")).unwrap();
    println!("bars over u:");
    for bar in &bars {
        println!("  {:?}", t.labels_of(bar));
    }

    // The whole picture, one row per node.
    let report = branching::branching_report(&t);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
