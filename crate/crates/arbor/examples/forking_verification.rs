//! Checking a claimed forking: the four conditions that make one, and the
//! embedded-copy condition that upgrades it to an extension.

use std::collections::BTreeMap;

use arbor::forking::{self, Extension, ExtensionVariant, ForkingCandidate, DEFAULT_BUDGET};
use arbor::Tree;

fn report(verdict: &forking::ForkingVerdict) {
    println!("  condensed:          {}", verdict.cond1_condensed);
    println!("  onto and monotone:  {}", verdict.cond2_onto_monotone);
    println!("  paths map to paths: {}", verdict.cond3_path_isomorphism);
    println!("  paths all covered:  {}", verdict.cond4_path_cover);
    println!("  embedded copy:      {}", verdict.cond5_extension);
    println!(
        "  => forking: {}, extension: {}",
        verdict.is_forking(),
        verdict.is_extension()
    );
    for v in &verdict.violations {
        println!("  note: {}", v);
    }
}

fn main() {
    let trident = Tree::from_parts(
        &["t", "u", "x", "y", "z"],
        &[("t", "u"), ("u", "x"), ("u", "y"), ("u", "z")],
    )
    .unwrap();

    // The refined extension is the canonical example: it passes all five.
    let ext = Extension::build(&trident, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
    let canonical = ForkingCandidate {
        candidate: Tree::new(ext.forest().clone()).unwrap(),
        sigma: ext.sigma_by_label(),
    };
    println!("refined extension as a candidate:");
    let verdict =
        forking::verify_forking(&trident, &canonical, forking::DEFAULT_SEARCH_CAP, None).unwrap();
    report(&verdict);

    // A candidate that duplicates the fork point but shows each copy only
    // two of the three leaves: a forking, yet no embedded copy of the
    // trident survives inside it.
    let fork = Tree::from_parts(
        &["t", "u0", "u1", "x0", "y0", "x1", "z1"],
        &[
            ("t", "u0"),
            ("t", "u1"),
            ("u0", "x0"),
            ("u0", "y0"),
            ("u1", "x1"),
            ("u1", "z1"),
        ],
    )
    .unwrap();
    let sigma: BTreeMap<_, _> = [
        ("t", "t"),
        ("u0", "u"),
        ("u1", "u"),
        ("x0", "x"),
        ("y0", "y"),
        ("x1", "x"),
        ("z1", "z"),
    ]
    .into_iter()
    .map(|(c, s)| (fork.require(c).unwrap(), trident.require(s).unwrap()))
    .collect();
    let split = ForkingCandidate {
        candidate: fork,
        sigma,
    };
    println!("\nsplit fork point as a candidate:");
    let verdict =
        forking::verify_forking(&trident, &split, forking::DEFAULT_SEARCH_CAP, None).unwrap();
    report(&verdict);
}
