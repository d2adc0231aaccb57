//! Homeomorphy: equality of trees up to stretching bridges.
//!
//! Refining a tree inserts new nodes inside a maximal bridge; two trees are
//! homeomorphic when they have isomorphic condensations, equivalently when
//! they admit a common refinement. This module builds refinements, quotients
//! by arbitrary bridge partitions, canonical forms, and explicit common
//! refinement witnesses.

use std::collections::BTreeMap;

use crate::condense::{self, Bridge, Quotient};
use crate::error::{Error, Result};
use crate::forest::{Forest, NodeId, NodeSet, Tree};
use crate::subset;

/// Canonical form of a tree or forest: equal codes mean isomorphic inputs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub code: String,
}

/// Per-node canonical codes, built bottom-up without recursion so that deep
/// chains cannot blow the stack.
fn node_codes(f: &Forest) -> Vec<String> {
    let mut order: Vec<NodeId> = f.ids().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(f.depth(v)));
    let mut codes = vec![String::new(); f.len()];
    for v in order {
        let mut kids: Vec<&str> = f.children(v).iter().map(|c| codes[c.idx()].as_str()).collect();
        kids.sort_unstable();
        let mut code = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        code.push('(');
        for k in kids {
            code.push_str(k);
        }
        code.push(')');
        codes[v.idx()] = code;
    }
    codes
}

pub fn canonical_form(t: &Tree) -> CanonicalForm {
    CanonicalForm {
        code: node_codes(t)[t.root().idx()].clone(),
    }
}

/// Canonical form of a forest: component codes, sorted and joined.
pub fn canonical_form_forest(f: &Forest) -> CanonicalForm {
    let codes = node_codes(f);
    let mut roots: Vec<&str> = f.roots().iter().map(|r| codes[r.idx()].as_str()).collect();
    roots.sort_unstable();
    CanonicalForm {
        code: roots.join("|"),
    }
}

pub fn isomorphic(a: &Tree, b: &Tree) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// An explicit isomorphism, if one exists: children with equal codes are
/// interchangeable, so pairing them in sorted code order is sound.
pub fn isomorphism(a: &Tree, b: &Tree) -> Option<BTreeMap<NodeId, NodeId>> {
    let (ca, cb) = (node_codes(a), node_codes(b));
    if ca[a.root().idx()] != cb[b.root().idx()] {
        return None;
    }
    let mut map = BTreeMap::new();
    let mut queue = vec![(a.root(), b.root())];
    while let Some((x, y)) = queue.pop() {
        map.insert(x, y);
        let mut xs = a.children(x);
        let mut ys = b.children(y);
        xs.sort_by(|&p, &q| ca[p.idx()].cmp(&ca[q.idx()]));
        ys.sort_by(|&p, &q| cb[p.idx()].cmp(&cb[q.idx()]));
        debug_assert_eq!(xs.len(), ys.len());
        queue.extend(xs.into_iter().zip(ys));
    }
    Some(map)
}

/// One chain insertion: splice `chain` between `lower` and its child
/// `upper`, which must sit in the same maximal bridge.
#[derive(Debug, Clone)]
pub struct Insertion {
    pub lower: NodeId,
    pub upper: NodeId,
    /// Fresh labels for the spliced nodes, bottom to top.
    pub chain: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct RefinementSpec {
    pub insertions: Vec<Insertion>,
}

/// Applies the insertions in order, validating each against the tree built
/// so far. Refinement never changes the condensation shape.
pub fn refine(t: &Tree, spec: &RefinementSpec) -> Result<Tree> {
    let mut nodes: Vec<String> = t.ids().map(|v| t.label(v).to_string()).collect();
    let mut edges: Vec<(String, String)> = t
        .edges()
        .into_iter()
        .map(|(p, c)| (t.label(p).to_string(), t.label(c).to_string()))
        .collect();
    let mut current = t.clone();
    for ins in &spec.insertions {
        for v in [ins.lower, ins.upper] {
            if v.idx() >= t.len() {
                return Err(Error::UnknownNode(format!("#{}", v.0)));
            }
        }
        let lower = t.label(ins.lower).to_string();
        let upper = t.label(ins.upper).to_string();
        if ins.chain.is_empty() {
            return Err(Error::EmptyChain(lower, upper));
        }
        for label in &ins.chain {
            if nodes.contains(label) || ins.chain.iter().filter(|l| *l == label).count() > 1 {
                return Err(Error::LabelCollision(label.clone()));
            }
        }
        let (lo, up) = (current.require(&lower)?, current.require(&upper)?);
        if current.parent(up) != Some(lo) {
            return Err(Error::NotAnEdge(lower, upper));
        }
        // Adjacent nodes share a maximal bridge exactly when the upper one
        // is an only child.
        if current.child_count(lo) != 1 {
            return Err(Error::NotWithinBridge(lower, upper));
        }
        edges.retain(|(p, c)| !(*p == lower && *c == upper));
        let mut prev = lower.clone();
        for label in &ins.chain {
            edges.push((prev, label.clone()));
            nodes.push(label.clone());
            prev = label.clone();
        }
        edges.push((prev, upper.clone()));
        current = Tree::new(Forest::build(nodes.clone(), edges.clone())?)?;
    }
    Ok(current)
}

/// A partition of the node set into bridges, as plain node sets.
pub type BridgePartition = Vec<NodeSet>;

/// Quotient by an arbitrary partition into bridges. With the maximal-bridge
/// partition this is exactly the condensation.
pub fn homeomorphic_abstraction(t: &Tree, cells: &BridgePartition) -> Result<Quotient> {
    let mut seen = vec![false; t.len()];
    let mut covered = 0usize;
    for cell in cells {
        if cell.is_empty() {
            return Err(Error::NotAPartition("a cell is empty".into()));
        }
        for &v in cell {
            if v.idx() >= t.len() {
                return Err(Error::UnknownNode(format!("#{}", v.0)));
            }
            if seen[v.idx()] {
                return Err(Error::NotAPartition(format!(
                    "{:?} is covered twice",
                    t.label(v)
                )));
            }
            seen[v.idx()] = true;
            covered += 1;
        }
    }
    if covered != t.len() {
        return Err(Error::NotAPartition(format!(
            "{} of {} nodes covered",
            covered,
            t.len()
        )));
    }
    let mut bridges = Vec::with_capacity(cells.len());
    for cell in cells {
        if !subset::is_bridge(t, cell) {
            return Err(Error::CellNotABridge(
                t.labels_of(cell).iter().map(|s| s.to_string()).collect(),
            ));
        }
        bridges.push(Bridge {
            nodes: cell.clone(),
            anchor: t.min_of(cell).unwrap(),
        });
    }
    Ok(condense::quotient_by_cells(t, bridges))
}

pub fn homeomorphic(a: &Tree, b: &Tree) -> bool {
    isomorphic(
        condense::condensation(a).quotient_tree(),
        condense::condensation(b).quotient_tree(),
    )
}

/// Whether `w` is, up to isomorphism, a refinement of `x`: their
/// condensations are isomorphic under some matching in which every bridge of
/// `w` is at least as long as the corresponding bridge of `x`.
pub fn is_refinement_of(w: &Tree, x: &Tree) -> bool {
    let qw = condense::condensation(w);
    let qx = condense::condensation(x);
    let (tw, tx) = (qw.quotient_tree(), qx.quotient_tree());
    let (cw, cx) = (node_codes(tw), node_codes(tx));

    // Backtracking embedding: shape must agree and lengths must dominate,
    // under some pairing of equal-coded children.
    fn embed(
        qw: &Quotient,
        qx: &Quotient,
        cw: &[String],
        cx: &[String],
        w_node: NodeId,
        x_node: NodeId,
    ) -> bool {
        if cw[w_node.idx()] != cx[x_node.idx()] {
            return false;
        }
        if qw.members_of(w_node).nodes.len() < qx.members_of(x_node).nodes.len() {
            return false;
        }
        let ws = qw.quotient_tree().children(w_node);
        let xs = qx.quotient_tree().children(x_node);
        if ws.len() != xs.len() {
            return false;
        }
        fn matching(
            qw: &Quotient,
            qx: &Quotient,
            cw: &[String],
            cx: &[String],
            ws: &[NodeId],
            xs: &[NodeId],
            used: &mut Vec<bool>,
            i: usize,
        ) -> bool {
            if i == ws.len() {
                return true;
            }
            for j in 0..xs.len() {
                if !used[j] && embed(qw, qx, cw, cx, ws[i], xs[j]) {
                    used[j] = true;
                    if matching(qw, qx, cw, cx, ws, xs, used, i + 1) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        matching(qw, qx, cw, cx, &ws, &xs, &mut vec![false; xs.len()], 0)
    }
    embed(&qw, &qx, &cw, &cx, tw.root(), tx.root())
}

/// Builds a tree that refines both inputs, or errors when they are not
/// homeomorphic. Matched bridges of equal length are kept once; unequal
/// lengths are concatenated. The result is verified to refine both inputs
/// before it is returned.
pub fn common_refinement_witness(a: &Tree, b: &Tree) -> Result<Tree> {
    if !homeomorphic(a, b) {
        return Err(Error::NotHomeomorphic);
    }
    let qa = condense::condensation(a);
    let qb = condense::condensation(b);
    let phi = isomorphism(qa.quotient_tree(), qb.quotient_tree())
        .expect("homeomorphic trees have isomorphic condensations");

    let qt = qa.quotient_tree();
    let mut nodes = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    // One fresh chain per condensation class, anchored on the class name.
    let chain_labels = |q: NodeId, len: usize| -> Vec<String> {
        (0..len).map(|i| format!("{}.{}", qt.label(q), i)).collect()
    };
    let mut chains: BTreeMap<NodeId, Vec<String>> = BTreeMap::new();
    for q in qt.ids() {
        let la = qa.members_of(q).nodes.len();
        let lb = qb.members_of(phi[&q]).nodes.len();
        let len = if la == lb { la } else { la + lb };
        let chain = chain_labels(q, len);
        for pair in chain.windows(2) {
            edges.push((pair[0].clone(), pair[1].clone()));
        }
        nodes.extend(chain.iter().cloned());
        chains.insert(q, chain);
    }
    for q in qt.ids() {
        if let Some(p) = qt.parent(q) {
            edges.push((
                chains[&p].last().unwrap().clone(),
                chains[&q].first().unwrap().clone(),
            ));
        }
    }
    let witness = Tree::new(Forest::build(nodes, edges)?)?;
    assert!(
        is_refinement_of(&witness, a) && is_refinement_of(&witness, b),
        "constructed witness must refine both inputs"
    );
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y_tree() -> Tree {
        Tree::from_parts(&["t", "u", "v", "w"], &[("t", "u"), ("u", "v"), ("u", "w")]).unwrap()
    }

    fn trident() -> Tree {
        Tree::from_parts(
            &["t", "u", "x", "y", "z"],
            &[("t", "u"), ("u", "x"), ("u", "y"), ("u", "z")],
        )
        .unwrap()
    }

    fn cherry() -> Tree {
        Tree::from_parts(&["r", "a", "b"], &[("r", "a"), ("r", "b")]).unwrap()
    }

    fn chain(n: usize) -> Tree {
        let labels: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let edges: Vec<(&str, &str)> = (1..n).map(|i| (refs[i - 1], refs[i])).collect();
        Tree::from_parts(&refs, &edges).unwrap()
    }

    fn set(t: &Forest, labels: &[&str]) -> NodeSet {
        labels.iter().map(|l| t.require(l).unwrap()).collect()
    }

    fn n(t: &Forest, label: &str) -> NodeId {
        t.require(label).unwrap()
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = y_tree();
        let b = Tree::from_parts(
            &["p", "q", "r", "s"],
            &[("s", "q"), ("q", "p"), ("q", "r")],
        )
        .unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(isomorphic(&a, &b));
        assert_ne!(canonical_form(&a), canonical_form(&trident()));
        assert_eq!(canonical_form(&chain(1)).code, "()");
        assert_eq!(canonical_form(&cherry()).code, "(()())");
    }

    #[test]
    fn isomorphism_is_an_explicit_bijection() {
        let a = y_tree();
        let b = Tree::from_parts(
            &["p", "q", "r", "s"],
            &[("s", "q"), ("q", "p"), ("q", "r")],
        )
        .unwrap();
        let map = isomorphism(&a, &b).unwrap();
        assert_eq!(map.len(), a.len());
        for x in a.ids() {
            for y in a.ids() {
                assert_eq!(a.lt(x, y), b.lt(map[&x], map[&y]));
            }
        }
        assert!(isomorphism(&a, &trident()).is_none());
    }

    #[test]
    fn refine_splices_into_a_bridge() {
        let t = y_tree();
        let spec = RefinementSpec {
            insertions: vec![Insertion {
                lower: n(&t, "t"),
                upper: n(&t, "u"),
                chain: vec!["m".into()],
            }],
        };
        let r = refine(&t, &spec).unwrap();
        assert_eq!(r.len(), 5);
        let b = condense::maximal_bridge(&r, n(&r, "m"));
        assert_eq!(b.nodes, set(&r, &["t", "m", "u"]));
        assert!(homeomorphic(&t, &r));
    }

    #[test]
    fn refine_rejects_bad_insertions() {
        let t = y_tree();
        let ins = |lower: &str, upper: &str, chain: Vec<&str>| RefinementSpec {
            insertions: vec![Insertion {
                lower: n(&t, lower),
                upper: n(&t, upper),
                chain: chain.into_iter().map(String::from).collect(),
            }],
        };
        // u has two children, so the edge (u, v) crosses bridges.
        assert_eq!(
            refine(&t, &ins("u", "v", vec!["m"])),
            Err(Error::NotWithinBridge("u".into(), "v".into()))
        );
        assert_eq!(
            refine(&t, &ins("t", "v", vec!["m"])),
            Err(Error::NotAnEdge("t".into(), "v".into()))
        );
        assert_eq!(
            refine(&t, &ins("t", "u", vec!["v"])),
            Err(Error::LabelCollision("v".into()))
        );
        assert_eq!(
            refine(&t, &ins("t", "u", vec!["m", "m"])),
            Err(Error::LabelCollision("m".into()))
        );
        assert_eq!(
            refine(&t, &ins("t", "u", vec![])),
            Err(Error::EmptyChain("t".into(), "u".into()))
        );
        // A second insertion on the same edge no longer finds it.
        let spec = RefinementSpec {
            insertions: vec![
                Insertion {
                    lower: n(&t, "t"),
                    upper: n(&t, "u"),
                    chain: vec!["m1".into()],
                },
                Insertion {
                    lower: n(&t, "t"),
                    upper: n(&t, "u"),
                    chain: vec!["m2".into()],
                },
            ],
        };
        assert_eq!(
            refine(&t, &spec),
            Err(Error::NotAnEdge("t".into(), "u".into()))
        );
    }

    #[test]
    fn abstraction_generalizes_condensation() {
        let t = y_tree();
        // Singleton cells: an isomorphic copy.
        let singletons: BridgePartition =
            t.ids().map(|v| [v].into_iter().collect()).collect();
        let q = homeomorphic_abstraction(&t, &singletons).unwrap();
        assert!(isomorphic(q.quotient_tree(), &t));
        // Maximal cells: exactly the condensation, node for node.
        let maximal: BridgePartition = condense::bridge_partition(&t)
            .into_iter()
            .map(|b| b.nodes)
            .collect();
        let q = homeomorphic_abstraction(&t, &maximal).unwrap();
        assert_eq!(
            q.quotient_tree().forest(),
            condense::condensation(&t).quotient_tree().forest()
        );
    }

    #[test]
    fn abstraction_validates_cells() {
        let tri = trident();
        let cut: BridgePartition = vec![
            set(&tri, &["t"]),
            set(&tri, &["u", "x"]),
            set(&tri, &["y"]),
            set(&tri, &["z"]),
        ];
        assert_eq!(
            homeomorphic_abstraction(&tri, &cut).unwrap_err(),
            Error::CellNotABridge(vec!["u".into(), "x".into()])
        );
        let missing: BridgePartition = vec![set(&tri, &["t", "u"])];
        assert!(matches!(
            homeomorphic_abstraction(&tri, &missing),
            Err(Error::NotAPartition(_))
        ));
        let doubled: BridgePartition = vec![
            set(&tri, &["t", "u"]),
            set(&tri, &["u", "x"]),
            set(&tri, &["y"]),
            set(&tri, &["z"]),
        ];
        assert!(matches!(
            homeomorphic_abstraction(&tri, &doubled),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn homeomorphy_collapses_bridges() {
        assert!(homeomorphic(&y_tree(), &cherry()));
        assert!(!homeomorphic(&y_tree(), &trident()));
        assert!(homeomorphic(&chain(2), &chain(5)));
        assert!(homeomorphic(&y_tree(), &y_tree()));
    }

    #[test]
    fn witness_for_equal_shapes_keeps_lengths() {
        let t = y_tree();
        let w = common_refinement_witness(&t, &t).unwrap();
        assert!(isomorphic(&w, &t));
    }

    #[test]
    fn witness_concatenates_unequal_bridges() {
        // Root bridges of length 2 and 1 concatenate to 3; leaves stay.
        let w = common_refinement_witness(&y_tree(), &cherry()).unwrap();
        assert_eq!(w.len(), 5);
        assert!(is_refinement_of(&w, &y_tree()));
        assert!(is_refinement_of(&w, &cherry()));

        let w = common_refinement_witness(&chain(2), &chain(5)).unwrap();
        assert_eq!(w.len(), 7);
        assert!(isomorphic(&w, &chain(7)));

        assert_eq!(
            common_refinement_witness(&y_tree(), &trident()),
            Err(Error::NotHomeomorphic)
        );
    }

    #[test]
    fn refinement_shape_check_dominates_lengths() {
        let t = y_tree();
        let r = refine(
            &t,
            &RefinementSpec {
                insertions: vec![Insertion {
                    lower: n(&t, "t"),
                    upper: n(&t, "u"),
                    chain: vec!["m".into()],
                }],
            },
        )
        .unwrap();
        assert!(is_refinement_of(&r, &t));
        assert!(!is_refinement_of(&t, &r));
        assert!(!is_refinement_of(&t, &trident()));
    }
}
