//! Branching behaviour of stems.
//!
//! A stem splits the tree into the chain at or below a node and the region
//! strictly above it. Two inequivalent notions of branching live here:
//! branching-1 asks whether the paths through the stem fall into more than
//! one undividedness class, branching-2 asks whether every node above the
//! stem can be avoided sideways. The numeric refinements count classes
//! (`n_branching1`) and the forced size of underlying antichains
//! (`n_branching2_bruteforce`, an intentionally exhaustive oracle).

use serde::Serialize;

use crate::condense;
use crate::error::{Error, Result};
use crate::forest::{Component, NodeId, NodeSet, Tree};

/// A stem named by its maximum, or the empty stem.
///
/// Finitely every non-empty stem is the full chain at or below one node, so
/// a node reference covers them all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StemRef {
    Node(NodeId),
    Empty,
}

/// Nodes of the stem itself.
pub fn stem_set(t: &Tree, s: StemRef) -> NodeSet {
    match s {
        StemRef::Node(v) => t.stem(v),
        StemRef::Empty => NodeSet::new(),
    }
}

/// The extension region: nodes strictly above every node of the stem.
pub fn region_above(t: &Tree, s: StemRef) -> NodeSet {
    match s {
        StemRef::Node(v) => {
            let mut sub = t.subtree(v);
            sub.remove(&v);
            sub
        }
        StemRef::Empty => t.node_set(),
    }
}

/// The paths through the stem; every path, for the empty stem.
pub fn paths_through_stem(t: &Tree, s: StemRef) -> Vec<Vec<NodeId>> {
    match s {
        StemRef::Node(v) => t.paths_through(v).expect("stem node belongs to the tree"),
        StemRef::Empty => t.paths(),
    }
}

fn require_node(s: StemRef) -> Result<NodeId> {
    match s {
        StemRef::Node(v) => Ok(v),
        StemRef::Empty => Err(Error::EmptyStemForBranching1),
    }
}

fn require_path_through(t: &Tree, s: NodeId, path: &[NodeId]) -> Result<NodeSet> {
    let set: NodeSet = path.iter().copied().collect();
    if !t.is_path(&set) {
        return Err(Error::NotAPath(format!("{:?}", t.labels_of(&set))));
    }
    if !set.contains(&s) {
        return Err(Error::PathNotThroughStem(t.label(s).to_string()));
    }
    Ok(set)
}

/// Whether two paths through the stem are undivided: they still share a node
/// strictly above it.
pub fn undivided(t: &Tree, s: StemRef, a: &[NodeId], b: &[NodeId]) -> Result<bool> {
    let v = require_node(s)?;
    let a = require_path_through(t, v, a)?;
    let b = require_path_through(t, v, b)?;
    let region = region_above(t, s);
    Ok(a.intersection(&b).any(|x| region.contains(x)))
}

/// The components of the region above the stem, in the ids of `t`.
pub fn region_components(t: &Tree, s: StemRef) -> Vec<Component> {
    let region = region_above(t, s);
    let induced = t.induced(&region).expect("region nodes belong to the tree");
    induced
        .components()
        .into_iter()
        .map(|c| {
            let nodes = t.adopt(&induced, &c.nodes).expect("labels carry over");
            let representative = *nodes.iter().next().unwrap();
            Component {
                nodes,
                representative,
            }
        })
        .collect()
}

/// One undividedness class: the paths in it, plus the region component they
/// all run into.
#[derive(Debug, Clone)]
pub struct UndividednessClass {
    pub paths: Vec<Vec<NodeId>>,
    pub component: Component,
}

#[derive(Debug, Clone)]
pub struct UndividednessClasses {
    pub stem: StemRef,
    pub classes: Vec<UndividednessClass>,
}

/// Partitions the paths through a non-empty stem by undividedness.
///
/// Classes correspond one-to-one to components of the region above the stem,
/// and the result carries that pairing. Errors when nothing lies above the
/// stem, i.e. when its maximum is a leaf.
pub fn undividedness_classes(t: &Tree, s: StemRef) -> Result<UndividednessClasses> {
    let v = require_node(s)?;
    let region = region_above(t, s);
    if region.is_empty() {
        return Err(Error::StemHasNoExtension(t.label(v).to_string()));
    }
    let components = region_components(t, s);
    let mut classes: Vec<UndividednessClass> = components
        .into_iter()
        .map(|component| UndividednessClass {
            paths: Vec::new(),
            component,
        })
        .collect();
    for path in paths_through_stem(t, s) {
        // The part of the path above the stem is a chain, so it sits inside
        // a single component; the stem's maximum has children, so no path
        // through the stem stops at it.
        let above = path
            .iter()
            .find(|x| region.contains(x))
            .expect("every path through the stem enters the region");
        let class = classes
            .iter_mut()
            .find(|c| c.component.nodes.contains(above))
            .expect("components cover the region");
        class.paths.push(path);
    }
    debug_assert!(classes.iter().all(|c| !c.paths.is_empty()));
    Ok(UndividednessClasses { stem: s, classes })
}

/// Branching-1: more than one undividedness class, equivalently more than
/// one component above the stem. Undefined at the empty stem.
pub fn is_branching1(t: &Tree, s: StemRef) -> Result<bool> {
    require_node(s)?;
    Ok(region_components(t, s).len() > 1)
}

/// Branching-2: the region above the stem is non-empty and none of its nodes
/// is comparable to everything else in it.
pub fn is_branching2(t: &Tree, s: StemRef) -> bool {
    let region = region_above(t, s);
    !region.is_empty()
        && region
            .iter()
            .all(|&x| region.iter().any(|&y| !t.comparable(x, y)))
}

/// Whether `x` is a bar over the stem: it sits entirely above the stem and
/// meets every path through it.
pub fn is_bar(t: &Tree, s: StemRef, x: &NodeSet) -> Result<bool> {
    for &v in x {
        if v.idx() >= t.len() {
            return Err(Error::UnknownNode(format!("#{}", v.0)));
        }
    }
    let region = region_above(t, s);
    if !x.iter().all(|v| region.contains(v)) {
        return Ok(false);
    }
    Ok(paths_through_stem(t, s)
        .iter()
        .all(|p| p.iter().any(|v| x.contains(v))))
}

/// All bars over the stem. Exhaustive over subsets of the region; meant for
/// small inputs and cross-checks.
pub fn enumerate_bars(t: &Tree, s: StemRef) -> Result<Vec<NodeSet>> {
    let region: Vec<NodeId> = region_above(t, s).into_iter().collect();
    assert!(region.len() <= 20, "bar enumeration is exponential");
    let paths = paths_through_stem(t, s);
    let mut bars = Vec::new();
    for mask in 0u64..(1 << region.len()) {
        let x: NodeSet = region
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        if paths.iter().all(|p| p.iter().any(|v| x.contains(v))) {
            bars.push(x);
        }
    }
    Ok(bars)
}

/// Whether `x` underlies `y`: every node of `y` has a node of `x` at or
/// below it. The notion is aimed at antichains but defined for any sets.
pub fn underlies(t: &Tree, x: &NodeSet, y: &NodeSet) -> bool {
    y.iter().all(|&u| x.iter().any(|&v| t.le(v, u)))
}

/// Count of undividedness classes over a non-empty stem.
pub fn n_branching1(t: &Tree, s: StemRef) -> Result<usize> {
    Ok(undividedness_classes(t, s)?.classes.len())
}

/// Default cap on the region size for the exhaustive branching-2 count.
pub const BRUTE_FORCE_CAP: usize = 16;

/// The unique `n` such that every antichain of the region above the stem has
/// an underlying antichain of size exactly `n`, found by exhausting all
/// antichains; `None` if no single `n` serves them all.
///
/// This is a deliberately brute-force oracle: it never counts components or
/// children, so it can sit on the other side of a cross-check.
pub fn n_branching2_bruteforce(t: &Tree, s: StemRef, cap: usize) -> Result<Option<usize>> {
    // 2^24 subset masks is already generous; beyond that the enumeration
    // stops being an oracle and starts being a heater.
    let cap = cap.min(24);
    let region: Vec<NodeId> = region_above(t, s).into_iter().collect();
    let k = region.len();
    if k > cap {
        return Err(Error::TooLargeForBruteForce(k, cap));
    }

    // Region-local bitmask tables.
    let mut below = vec![0u64; k];
    let mut comp = vec![0u64; k];
    for i in 0..k {
        for j in 0..k {
            if t.le(region[j], region[i]) {
                below[i] |= 1 << j;
            }
            if t.comparable(region[i], region[j]) {
                comp[i] |= 1 << j;
            }
        }
    }
    let is_antichain = |mask: u64| -> bool {
        (0..k).all(|i| mask & (1 << i) == 0 || comp[i] & mask == 1 << i)
    };
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); k + 1];
    for mask in 0..(1u64 << k) {
        if is_antichain(mask) {
            by_size[mask.count_ones() as usize].push(mask);
        }
    }
    // Large antichains constrain hardest; trying them first makes wrong
    // candidates fail immediately.
    let antichains_desc: Vec<u64> = by_size.iter().rev().flatten().copied().collect();

    let underlain = |x: u64, l: u64| -> bool {
        (0..k).all(|i| x & (1 << i) == 0 || below[i] & l != 0)
    };
    let mut hits = Vec::new();
    for n in 0..=k {
        let works = antichains_desc
            .iter()
            .all(|&x| by_size[n].iter().any(|&l| underlain(x, l)));
        if works {
            hits.push(n);
        }
    }
    Ok(if hits.len() == 1 { Some(hits[0]) } else { None })
}

/// The longest initial segment of a region path that is a bridge of the
/// region, i.e. the maximal bridge of the region through the path's lowest
/// node.
pub fn bridge_initial_segment(t: &Tree, s: StemRef, path: &[NodeId]) -> Result<NodeSet> {
    let region = region_above(t, s);
    let induced = t.induced(&region)?;
    let set: NodeSet = path.iter().copied().collect();
    let local: NodeSet = set
        .iter()
        .map(|&v| {
            if region.contains(&v) {
                induced.require(t.label(v))
            } else {
                Err(Error::NotAPathOfRegion(format!("{:?}", t.labels_of(&set))))
            }
        })
        .collect::<Result<_>>()?;
    if !induced.is_path(&local) {
        return Err(Error::NotAPathOfRegion(format!("{:?}", t.labels_of(&set))));
    }
    let bottom = induced.min_of(&local).unwrap();
    let bridge = condense::maximal_bridge(&induced, bottom);
    t.adopt(&induced, &bridge.nodes)
}

/// Branching data for one stem.
#[derive(Debug, Clone, Serialize)]
pub struct StemBranching {
    pub node: String,
    pub children_count: usize,
    pub branching1: bool,
    pub branching2: bool,
    pub n_branching1: usize,
    /// Exhaustive count; `None` when the region exceeds the brute-force cap.
    pub n_branching2: Option<usize>,
}

/// Per-node branching report, one entry per stem in label order.
#[derive(Debug, Clone, Serialize)]
pub struct BranchingReport {
    pub stems: Vec<StemBranching>,
}

pub fn branching_report(t: &Tree) -> BranchingReport {
    let stems = t
        .ids()
        .map(|v| {
            let s = StemRef::Node(v);
            let n2 = if region_above(t, s).len() <= BRUTE_FORCE_CAP {
                n_branching2_bruteforce(t, s, BRUTE_FORCE_CAP).expect("within cap")
            } else {
                None
            };
            let classes = region_components(t, s).len();
            StemBranching {
                node: t.label(v).to_string(),
                children_count: t.child_count(v),
                branching1: classes > 1,
                branching2: is_branching2(t, s),
                n_branching1: classes,
                n_branching2: n2,
            }
        })
        .collect();
    BranchingReport { stems }
}
