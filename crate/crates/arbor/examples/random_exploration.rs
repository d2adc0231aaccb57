//! Seeded random trees, spot checks against the invariant suite, and
//! Graphviz output for whatever turns up.

use arbor::generate::{random_tree, GeneratorConfig};
use arbor::{condense, dot, suite};

fn main() {
    // Same seed, same tree: the generator is deterministic.
    let config = GeneratorConfig {
        min_nodes: 6,
        max_nodes: 10,
        child_weights: vec![1, 2, 2],
        seed: 2024,
    };
    let t = random_tree(&config).unwrap();
    println!(
        "generated {} nodes, {} leaves, {} maximal bridges",
        t.len(),
        t.leaves().len(),
        condense::bridge_partition(&t).len()
    );

    // The suite re-checks the library's structural claims on seeded
    // corpora; here, two of them on a small run.
    let report = suite::run_suite(
        &[
            "profiles-match-spines".to_string(),
            "branching-degrees-coincide".to_string(),
        ],
        10,
        config.seed,
    )
    .unwrap();
    for prop in &report.propositions {
        println!(
            "{}: {}/{} passed — {}",
            prop.id, prop.passed, prop.samples, prop.statement
        );
    }
    assert!(report.all_passed());

    // Pipe this into `dot -Tsvg` to look at the tree.
    println!("\n{}", dot::emit_dot(&t, "random_tree"));
}
