//! The extension constructions: every node re-created once per marking of
//! its root chain, glued into a condensed tree that projects back down.

use arbor::forking::{self, Extension, ExtensionVariant, DEFAULT_BUDGET};
use arbor::Tree;

fn main() {
    let y = Tree::from_parts(&["t", "u", "v", "w"], &[("t", "u"), ("u", "v"), ("u", "w")])
        .unwrap();

    // The refined variant pins the marking to 1 at the least node of every
    // maximal bridge, which keeps the extension a single tree.
    let refined = Extension::build(&y, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
    println!("refined extension ({} nodes):", refined.forest().len());
    for (p, c) in refined.forest().edges() {
        println!(
            "  {} -> {}",
            refined.forest().label(p),
            refined.forest().label(c)
        );
    }

    // The full variant marks freely and always falls apart into exactly two
    // isomorphic components, one per root marking.
    let full = Extension::build(&y, ExtensionVariant::Full, DEFAULT_BUDGET).unwrap();
    let roots = full.forest().roots();
    println!(
        "full extension: {} nodes in {} components",
        full.forest().len(),
        roots.len()
    );
    let pairs = full.component_isomorphism(roots[0], roots[1]).unwrap();
    println!(
        "  e.g. {} <-> {}",
        full.forest().label(pairs[3].0),
        full.forest().label(pairs[3].1)
    );

    // Paths lift into any component and project back onto their source.
    let path = y.paths().into_iter().next().unwrap();
    let lifted = full.lift_path(roots[1], &path).unwrap();
    println!(
        "lift of the first path into the second component: {:?}",
        lifted
            .iter()
            .map(|&v| full.forest().label(v))
            .collect::<Vec<_>>()
    );
    let back = full.project_path(&lifted).unwrap();
    println!(
        "projects back to: {:?}",
        back.iter().map(|&v| y.label(v)).collect::<Vec<_>>()
    );

    // On a chain the refined extension is the perfect binary tree.
    let chain = Tree::from_parts(&["c0", "c1", "c2"], &[("c0", "c1"), ("c1", "c2")]).unwrap();
    let binary = Extension::build(&chain, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
    println!(
        "refined extension of a 3-chain: {} nodes (predicted {})",
        binary.forest().len(),
        forking::predicted_size(&chain, ExtensionVariant::Refined)
    );
}
