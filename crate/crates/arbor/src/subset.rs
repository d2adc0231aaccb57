//! Order-theoretic roles a set of nodes can play inside a forest.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::forest::{Forest, NodeSet};

/// Roles reported by [`classify_subset`]. A subset can hold several at once;
/// `Bridge` and `Furcation` are mutually exclusive and between them cover
/// every segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubsetRole {
    /// A maximal chain.
    Path,
    /// A downward-closed chain (bounded above; automatic when finite).
    Stem,
    /// A convex chain.
    Segment,
    /// A segment that every path either contains or avoids.
    Bridge,
    /// A segment some path properly cuts: meets it without containing it.
    Furcation,
    /// Pairwise incomparable nodes.
    Antichain,
    /// The upward-closed tail of some path, from a member down-bounding it.
    Branch,
    DownwardClosed,
    UpwardClosed,
}

pub fn is_chain(f: &Forest, set: &NodeSet) -> bool {
    let v: Vec<_> = set.iter().copied().collect();
    v.iter()
        .enumerate()
        .all(|(i, &a)| v[i + 1..].iter().all(|&b| f.comparable(a, b)))
}

pub fn is_antichain(f: &Forest, set: &NodeSet) -> bool {
    let v: Vec<_> = set.iter().copied().collect();
    v.iter()
        .enumerate()
        .all(|(i, &a)| v[i + 1..].iter().all(|&b| !f.comparable(a, b)))
}

/// Convexity: whatever sits strictly between two members is a member.
pub fn is_convex(f: &Forest, set: &NodeSet) -> bool {
    for &upper in set {
        // Only nodes on the chain below `upper` can be between a member
        // and `upper`, so walking parents until we leave the set suffices.
        let mut cur = f.parent(upper);
        let mut gap = Vec::new();
        while let Some(p) = cur {
            if set.contains(&p) {
                if !gap.is_empty() {
                    return false;
                }
            } else {
                gap.push(p);
            }
            cur = f.parent(p);
        }
    }
    true
}

pub fn is_downward_closed(f: &Forest, set: &NodeSet) -> bool {
    set.iter()
        .all(|&t| f.parent(t).map_or(true, |p| set.contains(&p)))
}

pub fn is_upward_closed(f: &Forest, set: &NodeSet) -> bool {
    set.iter()
        .all(|&t| f.children(t).iter().all(|c| set.contains(c)))
}

pub fn is_segment(f: &Forest, set: &NodeSet) -> bool {
    !set.is_empty() && is_chain(f, set) && is_convex(f, set)
}

/// A stem is a downward-closed chain; finitely these are exactly the sets
/// of nodes at or below a single node.
pub fn is_stem_set(f: &Forest, set: &NodeSet) -> bool {
    !set.is_empty() && is_chain(f, set) && is_downward_closed(f, set)
}

/// Bridge test via the spine rule: a segment is a bridge exactly when each
/// consecutive step goes to an only child, so no path can enter sideways.
pub fn is_bridge(f: &Forest, set: &NodeSet) -> bool {
    if !is_segment(f, set) {
        return false;
    }
    let chain = f.sort_chain(set);
    chain.windows(2).all(|pair| {
        f.parent(pair[1]) == Some(pair[0]) && f.child_count(pair[0]) == 1
    })
}

/// Branch test, straight from the definition: some path contains the set as
/// its upward-closed tail above the set's minimum.
pub fn is_branch(f: &Forest, set: &NodeSet) -> bool {
    if set.is_empty() || !is_chain(f, set) {
        return false;
    }
    let m = f.min_of(set).unwrap();
    f.paths().iter().any(|p| {
        let p_set: NodeSet = p.iter().copied().collect();
        set.is_subset(&p_set)
            && p.iter().filter(|&&y| f.le(m, y)).count() == set.len()
    })
}

/// Every role the subset satisfies. Empty subsets are rejected.
pub fn classify_subset(f: &Forest, set: &NodeSet) -> Result<BTreeSet<SubsetRole>> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    for &t in set {
        if t.idx() >= f.len() {
            return Err(Error::UnknownNode(format!("#{}", t.0)));
        }
    }
    let mut roles = BTreeSet::new();
    if f.is_path(set) {
        roles.insert(SubsetRole::Path);
    }
    if is_stem_set(f, set) {
        roles.insert(SubsetRole::Stem);
    }
    if is_segment(f, set) {
        roles.insert(SubsetRole::Segment);
        if is_bridge(f, set) {
            roles.insert(SubsetRole::Bridge);
        } else {
            roles.insert(SubsetRole::Furcation);
        }
    }
    if is_antichain(f, set) {
        roles.insert(SubsetRole::Antichain);
    }
    if is_branch(f, set) {
        roles.insert(SubsetRole::Branch);
    }
    if is_downward_closed(f, set) {
        roles.insert(SubsetRole::DownwardClosed);
    }
    if is_upward_closed(f, set) {
        roles.insert(SubsetRole::UpwardClosed);
    }
    Ok(roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::Tree;

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

    fn set(t: &Forest, labels: &[&str]) -> NodeSet {
        labels.iter().map(|l| t.require(l).unwrap()).collect()
    }

    fn roles(t: &Forest, labels: &[&str]) -> BTreeSet<SubsetRole> {
        classify_subset(t, &set(t, labels)).unwrap()
    }

    #[test]
    fn root_chain_is_a_bridge_and_stem() {
        let t = y_tree();
        let r = roles(&t, &["t", "u"]);
        assert!(r.contains(&SubsetRole::Segment));
        assert!(r.contains(&SubsetRole::Stem));
        assert!(r.contains(&SubsetRole::Bridge));
        assert!(r.contains(&SubsetRole::DownwardClosed));
        assert!(!r.contains(&SubsetRole::Furcation));
        assert!(!r.contains(&SubsetRole::Path));
        assert!(!r.contains(&SubsetRole::Branch));
    }

    #[test]
    fn cut_segment_is_a_furcation() {
        let t = trident();
        let r = roles(&t, &["u", "x"]);
        assert!(r.contains(&SubsetRole::Segment));
        assert!(r.contains(&SubsetRole::Furcation));
        assert!(r.contains(&SubsetRole::Branch));
        assert!(!r.contains(&SubsetRole::Bridge));
        assert!(!r.contains(&SubsetRole::Stem));
    }

    #[test]
    fn leaves_form_an_antichain() {
        let t = y_tree();
        let r = roles(&t, &["v", "w"]);
        assert!(r.contains(&SubsetRole::Antichain));
        assert!(r.contains(&SubsetRole::UpwardClosed));
        assert!(!r.contains(&SubsetRole::Segment));
        assert!(!r.contains(&SubsetRole::Branch));
    }

    #[test]
    fn singletons_are_always_bridges() {
        let t = trident();
        for id in t.ids() {
            let single: NodeSet = [id].into_iter().collect();
            let r = classify_subset(&t, &single).unwrap();
            assert!(r.contains(&SubsetRole::Bridge), "{}", t.label(id));
            assert!(r.contains(&SubsetRole::Segment));
            assert!(r.contains(&SubsetRole::Antichain));
        }
    }

    #[test]
    fn full_path_roles() {
        let t = trident();
        let r = roles(&t, &["t", "u", "x"]);
        assert!(r.contains(&SubsetRole::Path));
        assert!(r.contains(&SubsetRole::Stem));
        assert!(r.contains(&SubsetRole::Branch));
        assert!(r.contains(&SubsetRole::Furcation));
        assert!(!r.contains(&SubsetRole::Bridge));
    }

    #[test]
    fn non_convex_chain_is_no_segment() {
        let t = Tree::from_parts(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let r = roles(&t, &["a", "c"]);
        assert!(!r.contains(&SubsetRole::Segment));
        assert!(!r.contains(&SubsetRole::Bridge));
        assert!(!r.contains(&SubsetRole::Furcation));
        // The whole chain is one bridge.
        let whole = roles(&t, &["a", "b", "c"]);
        assert!(whole.contains(&SubsetRole::Bridge));
        assert!(whole.contains(&SubsetRole::Path));
    }

    #[test]
    fn empty_subset_is_an_error() {
        let t = y_tree();
        assert_eq!(
            classify_subset(&t, &NodeSet::new()),
            Err(Error::EmptySubset)
        );
    }

    #[test]
    fn bridge_agrees_with_path_quantification_on_small_tree() {
        // Exhaustive cross-check of the spine rule against the definition.
        let t = trident();
        let ids: Vec<_> = t.ids().collect();
        let paths: Vec<NodeSet> = t
            .paths()
            .into_iter()
            .map(|p| p.into_iter().collect())
            .collect();
        for mask in 1u32..(1 << ids.len()) {
            let sub: NodeSet = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &t)| t)
                .collect();
            let by_rule = is_bridge(&t, &sub);
            let by_def = is_segment(&t, &sub)
                && paths
                    .iter()
                    .all(|p| sub.is_subset(p) || sub.is_disjoint(p));
            assert_eq!(by_rule, by_def, "{:?}", t.labels_of(&sub));
        }
    }
}
