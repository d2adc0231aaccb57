//! Constructing a tree and asking the basic order-theoretic questions.

use arbor::{classify_subset, NodeSet, RegionKind, Tree};

fn main() {
    // A root chain t < u that forks into leaves v and w.
    let t = Tree::from_parts(&["t", "u", "v", "w"], &[("t", "u"), ("u", "v"), ("u", "w")])
        .expect("a well-formed tree");
    let node = |l: &str| t.require(l).unwrap();

    println!("nodes: {:?}", t.labels_of(&t.node_set()));
    println!("root: {:?}, leaves: {:?}", t.label(t.root()), t.labels_of(&t.leaves().iter().copied().collect::<NodeSet>()));

    // The strict partial order is "is a proper ancestor of".
    println!("t < v: {}", t.lt(node("t"), node("v")));
    println!("v and w comparable: {}", t.comparable(node("v"), node("w")));

    // Paths are maximal chains; stems are the downward-closed node chains.
    for path in t.paths() {
        let set: NodeSet = path.iter().copied().collect();
        println!("path: {:?}", t.labels_of(&set));
    }
    println!("stem of u: {:?}", t.labels_of(&t.stem(node("u"))));

    // Everything at or above a subset, and at or below it.
    let above = t
        .order_region(&[node("u")].into_iter().collect(), RegionKind::StrictlyAbove)
        .unwrap();
    println!("strictly above u: {:?}", t.labels_of(&above));

    // Subset roles: the root chain {t, u} is a bridge (all paths pass it),
    // the leaves {v, w} are an antichain.
    let root_chain: NodeSet = [node("t"), node("u")].into_iter().collect();
    println!(
        "roles of {{t, u}}: {:?}",
        classify_subset(&t, &root_chain).unwrap()
    );
    let leaves: NodeSet = [node("v"), node("w")].into_iter().collect();
    println!(
        "roles of {{v, w}}: {:?}",
        classify_subset(&t, &leaves).unwrap()
    );
}
