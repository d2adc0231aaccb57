//! Maximal bridges and the condensation quotient.
//!
//! A bridge is a segment no path can cut: every path either contains it or
//! misses it. Maximal bridges partition the nodes, two nodes sharing one
//! exactly when they have the same comparability profile, and collapsing
//! each bridge to a point yields the condensation, a condensed tree.

use crate::branching::{self, StemRef};
use crate::error::{Error, Result};
use crate::forest::{Forest, NodeId, NodeSet, Tree};
use crate::subset;

/// Whether `x` and `y` are comparable to exactly the same nodes. This is
/// the definitional route to maximal bridges and deliberately knows nothing
/// about parent maps; [`maximal_bridge`] is the fast rule checked against it.
pub fn comparability_equivalent(f: &Forest, x: NodeId, y: NodeId) -> bool {
    f.ids()
        .all(|z| f.comparable(z, x) == f.comparable(z, y))
}

/// The class of nodes sharing `x`'s comparability profile.
pub fn profile_class(f: &Forest, x: NodeId) -> NodeSet {
    f.ids()
        .filter(|&y| comparability_equivalent(f, x, y))
        .collect()
}

/// A maximal bridge; `anchor` is its least node, which also names its class
/// in the condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub nodes: NodeSet,
    pub anchor: NodeId,
}

/// The maximal bridge through `x`, by the spine rule: run downward while the
/// node below has no other child, upward while there is exactly one child.
pub fn maximal_bridge(f: &Forest, x: NodeId) -> Bridge {
    let mut bottom = x;
    while let Some(p) = f.parent(bottom) {
        if f.child_count(p) == 1 {
            bottom = p;
        } else {
            break;
        }
    }
    let mut top = x;
    while f.child_count(top) == 1 {
        top = f.children(top)[0];
    }
    let mut nodes = NodeSet::new();
    let mut cur = top;
    loop {
        nodes.insert(cur);
        if cur == bottom {
            break;
        }
        cur = f.parent(cur).expect("bottom lies below top");
    }
    Bridge {
        nodes,
        anchor: bottom,
    }
}

/// All maximal bridges, ordered by anchor label.
pub fn bridge_partition(f: &Forest) -> Vec<Bridge> {
    let mut seen = vec![false; f.len()];
    let mut out = Vec::new();
    for x in f.ids() {
        if seen[x.idx()] {
            continue;
        }
        let bridge = maximal_bridge(f, x);
        for &v in &bridge.nodes {
            seen[v.idx()] = true;
        }
        out.push(bridge);
    }
    out.sort_by_key(|b| b.anchor);
    out
}

/// A forest is condensed when every maximal bridge is a singleton.
pub fn is_condensed(f: &Forest) -> bool {
    bridge_partition(f).iter().all(|b| b.nodes.len() == 1)
}

/// A quotient of a tree by a partition into bridges. Quotient nodes are
/// named by the anchors of their cells.
#[derive(Debug, Clone)]
pub struct Quotient {
    quotient_tree: Tree,
    class_of: Vec<NodeId>,
    members_of: Vec<Bridge>,
}

impl Quotient {
    pub fn quotient_tree(&self) -> &Tree {
        &self.quotient_tree
    }

    /// The quotient node whose cell contains `t` (a source node).
    pub fn class_of(&self, t: NodeId) -> NodeId {
        self.class_of[t.idx()]
    }

    /// The source cell behind a quotient node.
    pub fn members_of(&self, q: NodeId) -> &Bridge {
        &self.members_of[q.idx()]
    }

    pub fn cells(&self) -> &[Bridge] {
        &self.members_of
    }

    /// Image of a set of source nodes.
    pub fn image(&self, x: &NodeSet) -> Result<NodeSet> {
        x.iter()
            .map(|&t| {
                if t.idx() < self.class_of.len() {
                    Ok(self.class_of[t.idx()])
                } else {
                    Err(Error::UnknownNode(format!("#{}", t.0)))
                }
            })
            .collect()
    }

    /// Union of the cells behind a set of quotient nodes.
    pub fn preimage(&self, y: &NodeSet) -> Result<NodeSet> {
        let mut out = NodeSet::new();
        for &q in y {
            if q.idx() >= self.members_of.len() {
                return Err(Error::UnknownNode(format!("#{}", q.0)));
            }
            out.extend(&self.members_of[q.idx()].nodes);
        }
        Ok(out)
    }
}

/// Quotient of `t` by an already-validated partition into bridges.
pub(crate) fn quotient_by_cells(t: &Tree, mut cells: Vec<Bridge>) -> Quotient {
    cells.sort_by_key(|c| c.anchor);
    let labels: Vec<&str> = cells.iter().map(|c| t.label(c.anchor)).collect();
    let mut cell_index = vec![usize::MAX; t.len()];
    for (i, cell) in cells.iter().enumerate() {
        for &v in &cell.nodes {
            cell_index[v.idx()] = i;
        }
    }
    // A cell hangs under the cell of its anchor's parent; anchors are cell
    // minima, so that parent is always outside the cell.
    let mut edges = Vec::new();
    for cell in &cells {
        if let Some(p) = t.parent(cell.anchor) {
            edges.push((t.label(cells[cell_index[p.idx()]].anchor), t.label(cell.anchor)));
        }
    }
    let forest = Forest::new(&labels, &edges).expect("cells quotient to a valid forest");
    let quotient_tree = Tree::new(forest).expect("a tree quotients to a tree");
    // Anchor labels are sorted the same way in both id spaces, but map
    // explicitly rather than rely on that.
    let qid: Vec<NodeId> = cells
        .iter()
        .map(|c| quotient_tree.require(t.label(c.anchor)).unwrap())
        .collect();
    let mut class_of = vec![NodeId(u32::MAX); t.len()];
    for (i, cell) in cells.iter().enumerate() {
        for &v in &cell.nodes {
            class_of[v.idx()] = qid[i];
        }
    }
    let mut members_of = vec![None; cells.len()];
    for (i, cell) in cells.into_iter().enumerate() {
        members_of[qid[i].idx()] = Some(cell);
    }
    Quotient {
        quotient_tree,
        class_of,
        members_of: members_of.into_iter().map(Option::unwrap).collect(),
    }
}

/// The condensation of `t`: its quotient by the maximal-bridge partition.
pub fn condensation(t: &Tree) -> Quotient {
    quotient_by_cells(t, bridge_partition(t))
}

/// How a path relates to the trunk of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    /// Some node on the path sees only a chain above itself; the first such
    /// node witnesses it.
    Singular { witness: NodeId },
    /// Every node on the path has branching above it.
    Emergent,
}

/// Classifies a path as singular or emergent. Finite trees only ever produce
/// `Singular` (the leaf always witnesses), but the check is honest.
pub fn classify_path(t: &Tree, path: &[NodeId]) -> Result<PathClass> {
    let set: NodeSet = path.iter().copied().collect();
    if !t.is_path(&set) {
        return Err(Error::NotAPath(format!("{:?}", t.labels_of(&set))));
    }
    for &v in &t.sort_chain(&set) {
        if subset::is_chain(t, &t.subtree(v)) {
            return Ok(PathClass::Singular { witness: v });
        }
    }
    Ok(PathClass::Emergent)
}

/// Checks that behind every non-leaf of the condensation sits a final
/// segment of a branching-2 stem: the cell is the upward-closed tail of the
/// stem of its own maximum, and that stem is branching-2.
pub fn nonleaf_preimage_check(t: &Tree) -> bool {
    let q = condensation(t);
    q.quotient_tree().ids().all(|y| {
        if q.quotient_tree().is_leaf(y) {
            return true;
        }
        let cell = &q.members_of(y).nodes;
        let top = t.max_of(cell).expect("cells are non-empty chains");
        let anchor = t.min_of(cell).unwrap();
        let stem = t.stem(top);
        let tail: NodeSet = stem.iter().copied().filter(|&v| t.le(anchor, v)).collect();
        tail == *cell && branching::is_branching2(t, StemRef::Node(top))
    })
}

/// Well-foundedness of the node order: every descending walk terminates.
/// Construction already guarantees it, but the walk is performed anyway so
/// the property is checked rather than assumed.
pub fn is_well_founded(f: &Forest) -> bool {
    f.ids().all(|t| {
        let mut cur = t;
        let mut steps = 0;
        while let Some(p) = f.parent(cur) {
            cur = p;
            steps += 1;
            if steps > f.len() {
                return false;
            }
        }
        true
    })
}
