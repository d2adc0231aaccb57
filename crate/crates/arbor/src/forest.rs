//! Finite forests and trees presented as strict partial orders.
//!
//! A forest here is a finite strict partial order in which the strict lower
//! bounds of every node form a chain; a tree is a forest with a single root.
//! Both are stored as a parent map over lexicographically sorted labels, so
//! `NodeId` order coincides with label order and every set-valued result
//! iterates in label order for free.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a node inside one particular [`Forest`].
///
/// Ids are dense and sorted by label. They are only meaningful against the
/// forest that produced them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub(crate) fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// A set of nodes of one forest, iterated in label order.
pub type NodeSet = BTreeSet<NodeId>;

/// Which order region to take around a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    /// Nodes strictly below every member.
    StrictlyBelow,
    /// Nodes at or below every member.
    BelowOrEqual,
    /// Nodes strictly above every member; empty unless the subset is a chain.
    StrictlyAbove,
    /// Nodes at or above every member; empty unless the subset is a chain.
    AboveOrEqual,
}

/// A connected component of a forest together with its representative,
/// the node with the lexicographically least label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub nodes: NodeSet,
    pub representative: NodeId,
}

#[derive(Clone)]
pub struct Forest {
    labels: Vec<String>,
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    depth: Vec<u32>,
    roots: Vec<u32>,
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({} nodes)", self.labels.len())
    }
}

// Labels and the parent map determine everything else.
impl PartialEq for Forest {
    fn eq(&self, other: &Forest) -> bool {
        self.labels == other.labels && self.parent == other.parent
    }
}

impl Eq for Forest {}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.chars().any(|c| c.is_whitespace())
}

impl Forest {
    /// Builds a forest from node labels and parent-to-child edges.
    ///
    /// Labels must be non-empty and free of whitespace. The edge list is
    /// validated: endpoints must be declared, no node may have two parents,
    /// and the parent relation must be acyclic.
    pub fn new(nodes: &[&str], edges: &[(&str, &str)]) -> Result<Forest> {
        Forest::build(
            nodes.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    pub fn build(mut nodes: Vec<String>, edges: Vec<(String, String)>) -> Result<Forest> {
        for label in &nodes {
            if !valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
        }
        nodes.sort();
        for pair in nodes.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateNode(pair[0].clone()));
            }
        }
        let index = |label: &str| -> Result<u32> {
            nodes
                .binary_search_by(|probe| probe.as_str().cmp(label))
                .map(|i| i as u32)
                .map_err(|_| Error::UnknownEndpoint(label.to_string()))
        };

        let n = nodes.len();
        let mut parent: Vec<Option<u32>> = vec![None; n];
        let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (from, to) in &edges {
            let (p, c) = (index(from)?, index(to)?);
            if parent[c as usize].is_some() {
                return Err(Error::MultipleParents(to.clone()));
            }
            parent[c as usize] = Some(p);
            children[p as usize].push(c);
        }
        for list in &mut children {
            list.sort_unstable();
        }

        // Depth by traversal from the roots; since every node has at most
        // one parent, any node never reached sits on or under a cycle.
        let mut depth = vec![u32::MAX; n];
        let mut queue: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        for &r in &queue {
            depth[r] = 0;
        }
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &c in &children[v] {
                depth[c as usize] = depth[v] + 1;
                queue.push(c as usize);
            }
        }
        if seen < n {
            let offender = (0..n).find(|&i| depth[i] == u32::MAX).unwrap();
            return Err(Error::CycleDetected(nodes[offender].clone()));
        }

        let roots = (0..n as u32).filter(|&i| parent[i as usize].is_none()).collect();
        Ok(Forest {
            labels: nodes,
            parent,
            children,
            depth,
            roots,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len() as u32).map(NodeId)
    }

    pub fn node_set(&self) -> NodeSet {
        self.ids().collect()
    }

    pub fn label(&self, t: NodeId) -> &str {
        &self.labels[t.idx()]
    }

    pub fn labels_of<'a>(&'a self, set: impl IntoIterator<Item = &'a NodeId>) -> Vec<&'a str> {
        set.into_iter().map(|&t| self.label(t)).collect()
    }

    /// Looks a node up by label.
    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.labels
            .binary_search_by(|probe| probe.as_str().cmp(label))
            .ok()
            .map(|i| NodeId(i as u32))
    }

    pub fn require(&self, label: &str) -> Result<NodeId> {
        self.node(label)
            .ok_or_else(|| Error::UnknownNode(label.to_string()))
    }

    pub fn parent(&self, t: NodeId) -> Option<NodeId> {
        self.parent[t.idx()].map(NodeId)
    }

    pub fn children(&self, t: NodeId) -> Vec<NodeId> {
        self.children[t.idx()].iter().map(|&c| NodeId(c)).collect()
    }

    pub fn child_count(&self, t: NodeId) -> usize {
        self.children[t.idx()].len()
    }

    pub fn depth(&self, t: NodeId) -> usize {
        self.depth[t.idx()] as usize
    }

    pub fn roots(&self) -> Vec<NodeId> {
        self.roots.iter().map(|&r| NodeId(r)).collect()
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.ids().filter(|&t| self.child_count(t) == 0).collect()
    }

    pub fn is_leaf(&self, t: NodeId) -> bool {
        self.child_count(t) == 0
    }

    /// Strict order: `a < b` iff `a` is a proper ancestor of `b`.
    pub fn lt(&self, a: NodeId, b: NodeId) -> bool {
        a != b && self.le(a, b)
    }

    pub fn le(&self, a: NodeId, b: NodeId) -> bool {
        let (da, db) = (self.depth[a.idx()], self.depth[b.idx()]);
        if da > db {
            return false;
        }
        let mut cur = b.0;
        for _ in 0..(db - da) {
            cur = self.parent[cur as usize].expect("depth accounting is exact");
        }
        cur == a.0
    }

    pub fn comparable(&self, a: NodeId, b: NodeId) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// The stem of `t`: every node at or below `t`, always a chain.
    pub fn stem(&self, t: NodeId) -> NodeSet {
        self.chain_to_root(t).into_iter().collect()
    }

    /// Nodes from the root of `t`'s component down to `t`, in order.
    pub fn chain_to_root(&self, t: NodeId) -> Vec<NodeId> {
        let mut chain = Vec::with_capacity(self.depth(t) + 1);
        let mut cur = Some(t);
        while let Some(v) = cur {
            chain.push(v);
            cur = self.parent(v);
        }
        chain.reverse();
        chain
    }

    /// The subtree at `t`: every node at or above `t`.
    pub fn subtree(&self, t: NodeId) -> NodeSet {
        let mut out = NodeSet::new();
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            out.insert(v);
            stack.extend(self.children(v));
        }
        out
    }

    pub fn root_of(&self, t: NodeId) -> NodeId {
        let mut cur = t;
        while let Some(p) = self.parent(cur) {
            cur = p;
        }
        cur
    }

    fn check_member(&self, t: NodeId) -> Result<()> {
        if t.idx() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(format!("#{}", t.0)))
        }
    }

    fn check_subset(&self, set: &NodeSet) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &t in set {
            self.check_member(t)?;
        }
        Ok(())
    }

    /// The region of nodes uniformly below or above a non-empty subset.
    ///
    /// The upward regions are empty when the subset is not a chain: no node
    /// can sit strictly above two incomparable nodes.
    pub fn order_region(&self, set: &NodeSet, kind: RegionKind) -> Result<NodeSet> {
        self.check_subset(set)?;
        if matches!(kind, RegionKind::StrictlyAbove | RegionKind::AboveOrEqual)
            && !crate::subset::is_chain(self, set)
        {
            return Ok(NodeSet::new());
        }
        Ok(self
            .ids()
            .filter(|&x| {
                set.iter().all(|&a| match kind {
                    RegionKind::StrictlyBelow => self.lt(x, a),
                    RegionKind::BelowOrEqual => self.le(x, a),
                    RegionKind::StrictlyAbove => self.lt(a, x),
                    RegionKind::AboveOrEqual => self.le(a, x),
                })
            })
            .collect())
    }

    /// All paths, i.e. maximal chains: one per leaf, listed root first.
    pub fn paths(&self) -> Vec<Vec<NodeId>> {
        self.leaves()
            .into_iter()
            .map(|leaf| self.chain_to_root(leaf))
            .collect()
    }

    /// The paths passing through `t`.
    pub fn paths_through(&self, t: NodeId) -> Result<Vec<Vec<NodeId>>> {
        self.check_member(t)?;
        Ok(self
            .subtree(t)
            .into_iter()
            .filter(|&v| self.is_leaf(v))
            .map(|leaf| self.chain_to_root(leaf))
            .collect())
    }

    /// Whether `set` is a maximal chain.
    pub fn is_path(&self, set: &NodeSet) -> bool {
        if set.is_empty() || !crate::subset::is_chain(self, set) {
            return false;
        }
        let top = self.max_of(set).unwrap();
        self.is_leaf(top) && set.len() == self.depth(top) + 1
    }

    /// Minimum of a subset under the forest order, if the subset has one.
    pub fn min_of(&self, set: &NodeSet) -> Option<NodeId> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&x| self.le(m, x)))
    }

    pub fn max_of(&self, set: &NodeSet) -> Option<NodeId> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&x| self.le(x, m)))
    }

    /// Sorts a chain by depth, bottom first. Panics if `set` is not a chain.
    pub fn sort_chain(&self, set: &NodeSet) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = set.iter().copied().collect();
        v.sort_by_key(|&t| self.depth(t));
        for pair in v.windows(2) {
            assert!(self.lt(pair[0], pair[1]), "sort_chain on a non-chain");
        }
        v
    }

    /// Connected components. Two nodes are connected exactly when they have
    /// a common lower bound, so components are the subtrees of the roots.
    pub fn components(&self) -> Vec<Component> {
        self.roots()
            .into_iter()
            .map(|r| {
                let nodes = self.subtree(r);
                let representative = *nodes.iter().next().unwrap();
                Component {
                    nodes,
                    representative,
                }
            })
            .collect()
    }

    pub fn component_containing(&self, t: NodeId) -> Component {
        let nodes = self.subtree(self.root_of(t));
        let representative = *nodes.iter().next().unwrap();
        Component {
            nodes,
            representative,
        }
    }

    /// The suborder induced on `nodes`, reparented to the nearest ancestor
    /// that survives. Labels carry over, ids do not.
    pub fn induced(&self, nodes: &NodeSet) -> Result<Forest> {
        for &t in nodes {
            self.check_member(t)?;
        }
        let labels: Vec<String> = nodes.iter().map(|&t| self.label(t).to_string()).collect();
        let mut edges = Vec::new();
        for &t in nodes {
            let mut cur = self.parent(t);
            while let Some(p) = cur {
                if nodes.contains(&p) {
                    edges.push((self.label(p).to_string(), self.label(t).to_string()));
                    break;
                }
                cur = self.parent(p);
            }
        }
        Forest::build(labels, edges)
    }

    /// Translates ids from `other` into this forest by label.
    pub fn adopt(&self, other: &Forest, set: &NodeSet) -> Result<NodeSet> {
        set.iter()
            .map(|&t| self.require(other.label(t)))
            .collect()
    }

    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.ids()
            .filter_map(|t| self.parent(t).map(|p| (p, t)))
            .collect()
    }
}

/// A forest with exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    forest: Forest,
}

impl Tree {
    pub fn new(forest: Forest) -> Result<Tree> {
        if forest.roots.len() == 1 {
            Ok(Tree { forest })
        } else {
            Err(Error::NotATree(
                forest.roots().iter().map(|&r| forest.label(r).to_string()).collect(),
            ))
        }
    }

    pub fn from_parts(nodes: &[&str], edges: &[(&str, &str)]) -> Result<Tree> {
        Tree::new(Forest::new(nodes, edges)?)
    }

    pub fn root(&self) -> NodeId {
        NodeId(self.forest.roots[0])
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn into_forest(self) -> Forest {
        self.forest
    }
}

impl std::ops::Deref for Tree {
    type Target = Forest;

    fn deref(&self) -> &Forest {
        &self.forest
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn construction_validates() {
        assert_eq!(
            Forest::new(&["a", "a"], &[]),
            Err(Error::DuplicateNode("a".into()))
        );
        assert_eq!(
            Forest::new(&["a"], &[("a", "b")]),
            Err(Error::UnknownEndpoint("b".into()))
        );
        assert_eq!(
            Forest::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]),
            Err(Error::MultipleParents("c".into()))
        );
        assert_eq!(
            Forest::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::CycleDetected("a".into()))
        );
        assert_eq!(
            Forest::new(&["a"], &[("a", "a")]),
            Err(Error::CycleDetected("a".into()))
        );
        assert_eq!(
            Forest::new(&["a b"], &[]),
            Err(Error::InvalidLabel("a b".into()))
        );
        assert_eq!(Forest::new(&[""], &[]), Err(Error::InvalidLabel("".into())));
        // A 3-cycle plus honest nodes still errors.
        assert!(matches!(
            Forest::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a")]),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn tree_requires_single_root() {
        let f = Forest::new(&["a", "b"], &[]).unwrap();
        assert_eq!(Tree::new(f), Err(Error::NotATree(vec!["a".into(), "b".into()])));
        assert!(Tree::from_parts(&["a", "b"], &[("a", "b")]).is_ok());
    }

    #[test]
    fn order_is_ancestry() {
        let t = trident();
        let (a, u, x, y) = (
            t.require("t").unwrap(),
            t.require("u").unwrap(),
            t.require("x").unwrap(),
            t.require("y").unwrap(),
        );
        assert!(t.lt(a, u) && t.lt(a, x) && t.lt(u, x));
        assert!(!t.lt(x, u) && !t.le(x, y) && !t.le(y, x));
        assert!(t.le(x, x) && !t.lt(x, x));
        assert!(t.comparable(a, y) && !t.comparable(x, y));
        assert_eq!(t.depth(a), 0);
        assert_eq!(t.depth(x), 2);
    }

    #[test]
    fn stems_and_subtrees() {
        let t = trident();
        let x = t.require("x").unwrap();
        let u = t.require("u").unwrap();
        assert_eq!(t.stem(x), set(&t, &["t", "u", "x"]));
        assert_eq!(t.subtree(u), set(&t, &["u", "x", "y", "z"]));
        assert_eq!(t.root_of(x), t.root());
        assert_eq!(
            t.chain_to_root(x),
            vec![t.require("t").unwrap(), u, x]
        );
    }

    #[test]
    fn paths_are_root_to_leaf() {
        let t = trident();
        let paths = t.paths();
        assert_eq!(paths.len(), 3);
        for p in &paths {
            assert_eq!(p.len(), 3);
            assert_eq!(p[0], t.root());
            assert!(t.is_path(&p.iter().copied().collect()));
        }
        let through_u = t.paths_through(t.require("u").unwrap()).unwrap();
        assert_eq!(through_u.len(), 3);
        let through_x = t.paths_through(t.require("x").unwrap()).unwrap();
        assert_eq!(through_x.len(), 1);
        // A stem that is not maximal is not a path.
        assert!(!t.is_path(&set(&t, &["t", "u"])));
        assert!(!t.is_path(&set(&t, &["x", "y"])));
        assert!(!t.is_path(&set(&t, &["u", "x"])));
    }

    #[test]
    fn order_regions() {
        let t = trident();
        let above_u = t
            .order_region(&set(&t, &["u"]), RegionKind::StrictlyAbove)
            .unwrap();
        assert_eq!(above_u, set(&t, &["x", "y", "z"]));
        // Upward region of an antichain is empty by fiat.
        let above_xy = t
            .order_region(&set(&t, &["x", "y"]), RegionKind::StrictlyAbove)
            .unwrap();
        assert!(above_xy.is_empty());
        let below_x = t
            .order_region(&set(&t, &["x"]), RegionKind::BelowOrEqual)
            .unwrap();
        assert_eq!(below_x, set(&t, &["t", "u", "x"]));
        // Strictly below two incomparable nodes: common proper ancestors.
        let below_both = t
            .order_region(&set(&t, &["x", "y"]), RegionKind::StrictlyBelow)
            .unwrap();
        assert_eq!(below_both, set(&t, &["t", "u"]));
        assert_eq!(
            t.order_region(&NodeSet::new(), RegionKind::StrictlyBelow),
            Err(Error::EmptySubset)
        );
    }

    #[test]
    fn components_partition_by_root() {
        let f = Forest::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("c", "d")],
        )
        .unwrap();
        let comps = f.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].nodes, set(&f, &["a", "b"]));
        assert_eq!(f.label(comps[0].representative), "a");
        assert_eq!(comps[2].nodes, set(&f, &["e"]));
        let mut union = NodeSet::new();
        for c in &comps {
            assert!(union.is_disjoint(&c.nodes));
            union.extend(&c.nodes);
        }
        assert_eq!(union, f.node_set());
    }

    #[test]
    fn induced_reparents_to_nearest_survivor() {
        let t = Tree::from_parts(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d")],
        )
        .unwrap();
        let sub = t.induced(&set(&t, &["a", "c", "d"])).unwrap();
        let (a, c, d) = (
            sub.require("a").unwrap(),
            sub.require("c").unwrap(),
            sub.require("d").unwrap(),
        );
        assert_eq!(sub.parent(c), Some(a));
        assert_eq!(sub.parent(d), Some(c));
        // Dropping the root splits the children apart.
        let t2 = trident();
        let sub2 = t2.induced(&set(&t2, &["x", "y", "z"])).unwrap();
        assert_eq!(sub2.roots().len(), 3);
    }

    #[test]
    fn min_max_and_chain_sorting() {
        let t = trident();
        let stem = set(&t, &["t", "u", "x"]);
        assert_eq!(t.min_of(&stem), t.node("t"));
        assert_eq!(t.max_of(&stem), t.node("x"));
        assert_eq!(t.min_of(&set(&t, &["x", "y"])), None);
        let sorted = t.sort_chain(&stem);
        assert_eq!(t.labels_of(&sorted.iter().copied().collect::<NodeSet>()), vec!["t", "u", "x"]);
        assert_eq!(sorted[0], t.root());
    }

    #[test]
    fn labels_sort_ids() {
        // Ids follow label order regardless of declaration order.
        let f = Forest::new(&["zz", "aa", "mm"], &[("zz", "aa")]).unwrap();
        let labels: Vec<&str> = f.ids().map(|t| f.label(t)).collect();
        assert_eq!(labels, vec!["aa", "mm", "zz"]);
        assert_eq!(f.parent(f.require("aa").unwrap()), f.node("zz"));
    }
}
