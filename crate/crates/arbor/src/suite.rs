//! The invariant suite: every structural fact the library relies on,
//! checked against seeded random trees and reported one by one.
//!
//! Each proposition is deliberately re-stated from first principles — where
//! the library computes through components or spine walks, the checks here
//! quantify over paths and subsets — so the suite doubles as an oracle for
//! the fast implementations.

use serde::Serialize;

use crate::branching::{self, StemRef};
use crate::condense;
use crate::doc::TreeDocument;
use crate::error::{Error, Result};
use crate::forest::{NodeId, NodeSet, RegionKind, Tree};
use crate::forking::{self, Extension, ExtensionVariant, ForkingCandidate};
use crate::generate::{self, GeneratorConfig};
use crate::homeo;
use crate::subset;

type PropResult = std::result::Result<(), String>;

pub enum Check {
    PerTree(fn(&Tree) -> PropResult),
    Global(fn() -> PropResult),
}

pub struct Proposition {
    pub id: &'static str,
    pub statement: &'static str,
    /// Corpus trees are capped at this size; the heavier the check, the
    /// smaller the cap.
    pub max_nodes: usize,
    pub check: Check,
}

// ---------------------------------------------------------------------------
// Shared helpers.

fn node_stems(t: &Tree) -> Vec<StemRef> {
    t.ids().map(StemRef::Node).collect()
}

fn all_nonempty_subsets(t: &Tree) -> Vec<NodeSet> {
    let n = t.len();
    assert!(n <= 10, "exhaustive subset props need small trees");
    (1u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| NodeId(i as u32))
                .collect()
        })
        .collect()
}

fn fresh_label(t: &Tree, base: &str) -> String {
    let mut label = base.to_string();
    while t.node(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Edges interior to a bridge, i.e. the ones a refinement may split.
fn refinable_edges(t: &Tree) -> Vec<(NodeId, NodeId)> {
    t.edges()
        .into_iter()
        .filter(|&(p, _)| t.child_count(p) == 1)
        .collect()
}

/// Extensions are exponential; props about them skip trees whose extension
/// would not stay small.
fn small_extension(
    t: &Tree,
    variant: ExtensionVariant,
    cap: u64,
) -> std::result::Result<Option<Extension>, String> {
    match Extension::build(t, variant, cap) {
        Ok(ext) => Ok(Some(ext)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(format!("extension failed to build: {e}")),
    }
}

fn chain(n: usize) -> Tree {
    let labels: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let edges: Vec<(&str, &str)> = (1..n).map(|i| (refs[i - 1], refs[i])).collect();
    Tree::from_parts(&refs, &edges).unwrap()
}

// ---------------------------------------------------------------------------
// Order and path structure.

fn p_components_partition(t: &Tree) -> PropResult {
    if t.len() == 1 {
        return Ok(());
    }
    let mut rest = t.node_set();
    rest.remove(&t.root());
    let f = t.induced(&rest).map_err(|e| e.to_string())?;
    let comps = f.components();
    let total: usize = comps.iter().map(|c| c.nodes.len()).sum();
    let union: NodeSet = comps.iter().flat_map(|c| c.nodes.iter().copied()).collect();
    if total != f.len() || union != f.node_set() {
        return Err("components do not partition the forest".into());
    }
    for c in comps {
        if f.parent(c.representative).is_some() || c.nodes != f.subtree(c.representative) {
            return Err(format!(
                "component of {:?} is not the subtree of its root",
                f.label(c.representative)
            ));
        }
    }
    Ok(())
}

fn p_paths_are_maximal_chains(t: &Tree) -> PropResult {
    let paths = t.paths();
    if paths.len() != t.leaves().len() {
        return Err("paths do not correspond to leaves".into());
    }
    for path in paths {
        let set: NodeSet = path.iter().copied().collect();
        if !t.is_path(&set) {
            return Err(format!("{:?} is not a path", t.labels_of(&set)));
        }
        for v in t.ids().filter(|v| !set.contains(v)) {
            let mut bigger = set.clone();
            bigger.insert(v);
            if subset::is_chain(t, &bigger) {
                return Err(format!(
                    "path {:?} is not maximal: {:?} extends it",
                    t.labels_of(&set),
                    t.label(v)
                ));
            }
        }
    }
    Ok(())
}

fn p_path_stem_intersection(t: &Tree) -> PropResult {
    for path in t.paths() {
        let set: NodeSet = path.iter().copied().collect();
        for v in t.ids() {
            let meet: NodeSet = set.intersection(&t.stem(v)).copied().collect();
            if meet.is_empty() || !subset::is_stem_set(t, &meet) {
                return Err(format!(
                    "path {:?} meets the stem of {:?} in a non-stem",
                    t.labels_of(&set),
                    t.label(v)
                ));
            }
            if set.contains(&v) && meet != t.stem(v) {
                return Err(format!(
                    "path through {:?} does not contain its whole stem",
                    t.label(v)
                ));
            }
        }
    }
    Ok(())
}

fn p_stems_are_downward_chains(t: &Tree) -> PropResult {
    for v in t.ids() {
        let stem = t.stem(v);
        if !subset::is_stem_set(t, &stem) {
            return Err(format!("stem of {:?} malformed", t.label(v)));
        }
        let chain: NodeSet = t.chain_to_root(v).into_iter().collect();
        if stem != chain {
            return Err(format!("stem of {:?} is not its root chain", t.label(v)));
        }
    }
    Ok(())
}

fn p_leaves_meet_every_path_once(t: &Tree) -> PropResult {
    let leaves: NodeSet = t.leaves().into_iter().collect();
    if !subset::is_antichain(t, &leaves) {
        return Err("leaves are not an antichain".into());
    }
    for path in t.paths() {
        let hits = path.iter().filter(|v| leaves.contains(v)).count();
        if hits != 1 {
            return Err(format!(
                "path {:?} meets the leaves {} times",
                t.labels_of(&path.iter().copied().collect::<NodeSet>()),
                hits
            ));
        }
    }
    Ok(())
}

fn p_order_regions_match_definitions(t: &Tree) -> PropResult {
    for set in all_nonempty_subsets(t) {
        for kind in [
            RegionKind::StrictlyBelow,
            RegionKind::BelowOrEqual,
            RegionKind::StrictlyAbove,
            RegionKind::AboveOrEqual,
        ] {
            let got = t.order_region(&set, kind).map_err(|e| e.to_string())?;
            let want: NodeSet = t
                .ids()
                .filter(|&x| {
                    set.iter().all(|&a| match kind {
                        RegionKind::StrictlyBelow => t.lt(x, a),
                        RegionKind::BelowOrEqual => t.le(x, a),
                        RegionKind::StrictlyAbove => t.lt(a, x),
                        RegionKind::AboveOrEqual => t.le(a, x),
                    })
                })
                .collect();
            if got != want {
                return Err(format!(
                    "region {:?} of {:?} computed as {:?}",
                    kind,
                    t.labels_of(&set),
                    t.labels_of(&got)
                ));
            }
        }
    }
    Ok(())
}

fn p_bridge_rule_matches_path_quantification(t: &Tree) -> PropResult {
    let paths: Vec<NodeSet> = t
        .paths()
        .into_iter()
        .map(|p| p.into_iter().collect())
        .collect();
    for set in all_nonempty_subsets(t) {
        let by_rule = subset::is_bridge(t, &set);
        let by_paths = subset::is_segment(t, &set)
            && paths.iter().all(|p| {
                let meet = p.intersection(&set).count();
                meet == 0 || meet == set.len()
            });
        if by_rule != by_paths {
            return Err(format!(
                "{:?}: step rule says {}, path quantification says {}",
                t.labels_of(&set),
                by_rule,
                by_paths
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Branching.

fn p_undividedness_is_an_equivalence(t: &Tree) -> PropResult {
    for s in node_stems(t) {
        if branching::region_above(t, s).is_empty() {
            continue;
        }
        let paths = branching::paths_through_stem(t, s);
        let u = |a: &Vec<NodeId>, b: &Vec<NodeId>| {
            branching::undivided(t, s, a, b).expect("paths run through the stem")
        };
        for a in &paths {
            if !u(a, a) {
                return Err("undividedness is not reflexive".into());
            }
            for b in &paths {
                if u(a, b) != u(b, a) {
                    return Err("undividedness is not symmetric".into());
                }
                for c in &paths {
                    if u(a, b) && u(b, c) && !u(a, c) {
                        return Err("undividedness is not transitive".into());
                    }
                }
            }
        }
    }
    Ok(())
}

fn p_classes_match_region_components(t: &Tree) -> PropResult {
    for s in node_stems(t) {
        if branching::region_above(t, s).is_empty() {
            continue;
        }
        let classes = branching::undividedness_classes(t, s).map_err(|e| e.to_string())?;
        let components = branching::region_components(t, s);
        if classes.classes.len() != components.len() {
            return Err("classes and components disagree in number".into());
        }
        let all = branching::paths_through_stem(t, s);
        let grouped: usize = classes.classes.iter().map(|c| c.paths.len()).sum();
        if grouped != all.len() {
            return Err("classes do not partition the paths".into());
        }
        for (i, ca) in classes.classes.iter().enumerate() {
            for (j, cb) in classes.classes.iter().enumerate() {
                for a in &ca.paths {
                    for b in &cb.paths {
                        let und = branching::undivided(t, s, a, b).map_err(|e| e.to_string())?;
                        if und != (i == j) {
                            return Err(
                                "undividedness disagrees with the class partition".into()
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn p_branching1_iff_divided_paths(t: &Tree) -> PropResult {
    for s in node_stems(t) {
        if branching::region_above(t, s).is_empty() {
            continue;
        }
        let b1 = branching::is_branching1(t, s).map_err(|e| e.to_string())?;
        let paths = branching::paths_through_stem(t, s);
        let divided = paths.iter().enumerate().any(|(i, a)| {
            paths[..i].iter().any(|b| {
                !branching::undivided(t, s, a, b).expect("paths run through the stem")
            })
        });
        if b1 != divided {
            return Err(format!(
                "branching-1 at {:?} is {}, paths say {}",
                s, b1, divided
            ));
        }
    }
    Ok(())
}

fn p_branching1_implies_branching2(t: &Tree) -> PropResult {
    for s in node_stems(t).into_iter().chain([StemRef::Empty]) {
        let b1 = match s {
            StemRef::Empty => branching::region_components(t, s).len() > 1,
            _ => branching::is_branching1(t, s).map_err(|e| e.to_string())?,
        };
        if b1 && !branching::is_branching2(t, s) {
            return Err(format!("{:?} is branching-1 but not branching-2", s));
        }
    }
    Ok(())
}

fn p_bar_criterion(t: &Tree) -> PropResult {
    for s in node_stems(t).into_iter().chain([StemRef::Empty]) {
        let region = branching::region_above(t, s);
        if region.len() > 12 {
            continue;
        }
        let bars = branching::enumerate_bars(t, s).map_err(|e| e.to_string())?;
        if bars.is_empty() != region.is_empty() {
            return Err(format!("bars over {:?} exist iff the region does", s));
        }
        let by_bars = !bars.is_empty() && bars.iter().all(|b| b.len() >= 2);
        if branching::is_branching2(t, s) != by_bars {
            return Err(format!("bar criterion fails at {:?}", s));
        }
    }
    Ok(())
}

fn p_branching_degrees_coincide(t: &Tree) -> PropResult {
    for s in node_stems(t).into_iter().chain([StemRef::Empty]) {
        let region = branching::region_above(t, s);
        if region.is_empty() || region.len() > 12 {
            continue;
        }
        let n2 = branching::n_branching2_bruteforce(t, s, 12).map_err(|e| e.to_string())?;
        let n1 = match s {
            StemRef::Empty => branching::region_components(t, s).len(),
            _ => branching::n_branching1(t, s).map_err(|e| e.to_string())?,
        };
        if n2 != Some(n1) {
            return Err(format!(
                "degrees disagree at {:?}: n1 = {}, n2 = {:?}",
                s, n1, n2
            ));
        }
    }
    Ok(())
}

fn p_branching_degree_counts_children(t: &Tree) -> PropResult {
    for v in t.ids() {
        if t.is_leaf(v) {
            if branching::n_branching1(t, StemRef::Node(v)).is_ok() {
                return Err(format!("leaf {:?} claims a branching degree", t.label(v)));
            }
            continue;
        }
        let n1 = branching::n_branching1(t, StemRef::Node(v)).map_err(|e| e.to_string())?;
        if n1 != t.child_count(v) {
            return Err(format!(
                "degree at {:?} is {}, children say {}",
                t.label(v),
                n1,
                t.child_count(v)
            ));
        }
    }
    Ok(())
}

fn p_bridge_initial_segments(t: &Tree) -> PropResult {
    for s in node_stems(t) {
        let region = branching::region_above(t, s);
        if region.is_empty() {
            continue;
        }
        let induced = t.induced(&region).map_err(|e| e.to_string())?;
        for path in induced.paths() {
            let on_t: Vec<NodeId> = path
                .iter()
                .map(|&v| t.require(induced.label(v)).unwrap())
                .collect();
            let b = branching::bridge_initial_segment(t, s, &on_t).map_err(|e| e.to_string())?;
            let path_set: NodeSet = on_t.iter().copied().collect();
            if !b.is_subset(&path_set) || !b.contains(&on_t[0]) {
                return Err("initial bridge is not an initial part of its path".into());
            }
            let top = t.max_of(&b).unwrap();
            if on_t.iter().any(|&v| t.le(v, top) && !b.contains(&v)) {
                return Err("initial bridge has a gap".into());
            }
            let inside: NodeSet = induced.adopt(t, &b).map_err(|e| e.to_string())?;
            if !subset::is_bridge(&induced, &inside) {
                return Err("initial segment is not a bridge of the region".into());
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Condensation.

fn p_profiles_match_spines(t: &Tree) -> PropResult {
    for v in t.ids() {
        let spine = condense::maximal_bridge(t, v).nodes;
        let profile = condense::profile_class(t, v);
        if spine != profile {
            return Err(format!(
                "at {:?}: spine {:?}, profile {:?}",
                t.label(v),
                t.labels_of(&spine),
                t.labels_of(&profile)
            ));
        }
    }
    Ok(())
}

fn p_bridges_partition_the_tree(t: &Tree) -> PropResult {
    let cells = condense::bridge_partition(t);
    let total: usize = cells.iter().map(|b| b.nodes.len()).sum();
    let union: NodeSet = cells.iter().flat_map(|b| b.nodes.iter().copied()).collect();
    if total != t.len() || union != t.node_set() {
        return Err("maximal bridges do not partition the tree".into());
    }
    for b in &cells {
        if !subset::is_bridge(t, &b.nodes) || Some(b.anchor) != t.min_of(&b.nodes) {
            return Err(format!("cell {:?} malformed", t.labels_of(&b.nodes)));
        }
    }
    Ok(())
}

fn p_condensation_is_a_condensed_tree(t: &Tree) -> PropResult {
    let q = condense::condensation(t);
    let qt = q.quotient_tree();
    if !condense::is_condensed(qt) {
        return Err("condensation is not condensed".into());
    }
    if !condense::is_well_founded(qt) {
        return Err("condensation is not well-founded".into());
    }
    if qt.len() != q.cells().len() {
        return Err("one quotient node per cell, no more".into());
    }
    Ok(())
}

fn p_condensation_idempotent(t: &Tree) -> PropResult {
    let once = condense::condensation(t);
    let twice = condense::condensation(once.quotient_tree());
    if twice.quotient_tree().forest() != once.quotient_tree().forest() {
        return Err("condensing twice moved something".into());
    }
    Ok(())
}

fn p_order_transfers_to_quotient(t: &Tree) -> PropResult {
    let q = condense::condensation(t);
    let qt = q.quotient_tree();
    for x in t.ids() {
        for y in t.ids() {
            let (cx, cy) = (q.class_of(x), q.class_of(y));
            if t.le(x, y) && !qt.le(cx, cy) {
                return Err("order does not transfer downward".into());
            }
            if t.comparable(x, y) != qt.comparable(cx, cy) {
                return Err("comparability does not transfer".into());
            }
            // Strictly separated classes are strictly separated pointwise.
            if qt.lt(cx, cy) {
                for &a in &q.members_of(cx).nodes {
                    for &b in &q.members_of(cy).nodes {
                        if !t.lt(a, b) {
                            return Err("class order is not pointwise".into());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn p_image_preserves_structure(t: &Tree) -> PropResult {
    let q = condense::condensation(t);
    let qt = q.quotient_tree();
    for set in all_nonempty_subsets(t) {
        let image = q.image(&set).map_err(|e| e.to_string())?;
        let clauses: [(&str, bool, bool); 6] = [
            ("chain", subset::is_chain(t, &set), subset::is_chain(qt, &image)),
            (
                "antichain",
                subset::is_antichain(t, &set),
                subset::is_antichain(qt, &image) && image.len() == set.len(),
            ),
            ("convex", subset::is_convex(t, &set), subset::is_convex(qt, &image)),
            (
                "downward closed",
                subset::is_downward_closed(t, &set),
                subset::is_downward_closed(qt, &image),
            ),
            (
                "upward closed",
                subset::is_upward_closed(t, &set),
                subset::is_upward_closed(qt, &image),
            ),
            ("path", t.is_path(&set), qt.is_path(&image)),
        ];
        for (role, before, after) in clauses {
            if before && !after {
                return Err(format!(
                    "image of the {} {:?} is not a {}",
                    role,
                    t.labels_of(&set),
                    role
                ));
            }
        }
    }
    Ok(())
}

fn p_preimage_preserves_structure(t: &Tree) -> PropResult {
    let q = condense::condensation(t);
    let qt = q.quotient_tree();
    for set in all_nonempty_subsets(qt) {
        let pre = q.preimage(&set).map_err(|e| e.to_string())?;
        let clauses: [(&str, bool, bool); 5] = [
            ("chain", subset::is_chain(qt, &set), subset::is_chain(t, &pre)),
            ("convex", subset::is_convex(qt, &set), subset::is_convex(t, &pre)),
            (
                "downward closed",
                subset::is_downward_closed(qt, &set),
                subset::is_downward_closed(t, &pre),
            ),
            (
                "upward closed",
                subset::is_upward_closed(qt, &set),
                subset::is_upward_closed(t, &pre),
            ),
            ("path", qt.is_path(&set), t.is_path(&pre)),
        ];
        for (role, before, after) in clauses {
            if before && !after {
                return Err(format!(
                    "preimage of the {} {:?} is not a {}",
                    role,
                    qt.labels_of(&set),
                    role
                ));
            }
        }
    }
    Ok(())
}

fn p_paths_biject_with_quotient_paths(t: &Tree) -> PropResult {
    let q = condense::condensation(t);
    let qt = q.quotient_tree();
    let mut images: Vec<NodeSet> = Vec::new();
    for path in t.paths() {
        let image = q
            .image(&path.into_iter().collect())
            .map_err(|e| e.to_string())?;
        if !qt.is_path(&image) {
            return Err("a path maps to a non-path".into());
        }
        if images.contains(&image) {
            return Err("two paths collapse onto one quotient path".into());
        }
        images.push(image);
    }
    if images.len() != qt.paths().len() {
        return Err("missing quotient paths".into());
    }
    Ok(())
}

fn p_path_families_reverse_order_when_condensed(t: &Tree) -> PropResult {
    let binding = condense::condensation(t);
    let qt = binding.quotient_tree();
    let family = |v: NodeId| -> Vec<NodeSet> {
        qt.paths_through(v)
            .expect("quotient node exists")
            .into_iter()
            .map(|p| p.into_iter().collect())
            .collect()
    };
    for a in qt.ids() {
        for b in qt.ids() {
            let reversed = family(b).iter().all(|p| family(a).contains(p));
            if qt.le(a, b) != reversed {
                return Err(format!(
                    "path families at {:?}, {:?} do not mirror the order",
                    qt.label(a),
                    qt.label(b)
                ));
            }
        }
    }
    Ok(())
}

fn p_condensed_iff_nonleaves_fork(t: &Tree) -> PropResult {
    let forks = t.ids().all(|v| t.is_leaf(v) || t.child_count(v) >= 2);
    if condense::is_condensed(t) != forks {
        return Err("condensedness disagrees with the forking of non-leaves".into());
    }
    Ok(())
}

fn p_every_finite_path_is_singular(t: &Tree) -> PropResult {
    for path in t.paths() {
        match condense::classify_path(t, &path).map_err(|e| e.to_string())? {
            condense::PathClass::Singular { witness } => {
                let tail: NodeSet = path.iter().copied().filter(|&v| t.le(witness, v)).collect();
                if t.subtree(witness) != tail {
                    return Err("singular witness does not own its tail".into());
                }
                // The witness is the first such node on the path.
                for &v in &path {
                    if t.lt(v, witness) && subset::is_chain(t, &t.subtree(v)) {
                        return Err("an earlier node already has a chain above it".into());
                    }
                }
            }
            condense::PathClass::Emergent => {
                return Err("a finite path classified as emergent".into())
            }
        }
    }
    Ok(())
}

fn p_nonleaf_cells_end_branching(t: &Tree) -> PropResult {
    if condense::nonleaf_preimage_check(t) {
        Ok(())
    } else {
        Err("a non-leaf cell is not a final branching segment".into())
    }
}

// ---------------------------------------------------------------------------
// Homeomorphy.

fn p_refinement_preserves_condensation(t: &Tree) -> PropResult {
    for (i, (p, c)) in refinable_edges(t).into_iter().take(2).enumerate() {
        let chain = match i {
            0 => vec![fresh_label(t, "r0")],
            _ => vec![fresh_label(t, "r1a"), fresh_label(t, "r1b")],
        };
        let r = homeo::refine(
            t,
            &homeo::RefinementSpec {
                insertions: vec![homeo::Insertion {
                    lower: p,
                    upper: c,
                    chain,
                }],
            },
        )
        .map_err(|e| e.to_string())?;
        if !homeo::homeomorphic(t, &r) || !homeo::is_refinement_of(&r, t) {
            return Err("refinement changed the homeomorphy class".into());
        }
        if !homeo::isomorphic(
            condense::condensation(&r).quotient_tree(),
            condense::condensation(t).quotient_tree(),
        ) {
            return Err("refinement changed the condensation".into());
        }
    }
    Ok(())
}

fn p_homeomorphy_is_decided_by_condensation(t: &Tree) -> PropResult {
    let qt = condense::condensation(t).quotient_tree().clone();
    if !homeo::homeomorphic(t, &qt) {
        return Err("a tree is not homeomorphic to its condensation".into());
    }
    if !homeo::is_refinement_of(t, &qt) {
        return Err("a tree does not refine its condensation".into());
    }
    Ok(())
}

fn p_witness_refines_both(t: &Tree) -> PropResult {
    let qt = condense::condensation(t).quotient_tree().clone();
    let w = homeo::common_refinement_witness(t, &qt).map_err(|e| e.to_string())?;
    if !homeo::is_refinement_of(&w, t) || !homeo::is_refinement_of(&w, &qt) {
        return Err("the witness does not refine both inputs".into());
    }
    let same = homeo::common_refinement_witness(t, t).map_err(|e| e.to_string())?;
    if !homeo::isomorphic(&same, t) {
        return Err("the witness for equal inputs is not the input".into());
    }
    Ok(())
}

fn p_singleton_abstraction_is_isomorphic(t: &Tree) -> PropResult {
    let cells: homeo::BridgePartition = t.ids().map(|v| [v].into_iter().collect()).collect();
    let q = homeo::homeomorphic_abstraction(t, &cells).map_err(|e| e.to_string())?;
    if !homeo::isomorphic(q.quotient_tree(), t) {
        return Err("singleton cells changed the tree".into());
    }
    Ok(())
}

fn p_maximal_abstraction_is_condensation(t: &Tree) -> PropResult {
    let cells: homeo::BridgePartition = condense::bridge_partition(t)
        .into_iter()
        .map(|b| b.nodes)
        .collect();
    let q = homeo::homeomorphic_abstraction(t, &cells).map_err(|e| e.to_string())?;
    if q.quotient_tree().forest() != condense::condensation(t).quotient_tree().forest() {
        return Err("maximal cells do not reproduce the condensation".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Extensions and forkings.

const EXTENSION_PROP_BUDGET: u64 = 2048;

fn p_extensions_are_condensed(t: &Tree) -> PropResult {
    for variant in [ExtensionVariant::Refined, ExtensionVariant::Full] {
        if let Some(ext) = small_extension(t, variant, EXTENSION_PROP_BUDGET)? {
            if !condense::is_condensed(ext.forest()) {
                return Err(format!("{:?} extension is not condensed", variant));
            }
        }
    }
    Ok(())
}

fn p_sigma_is_monotone_onto(t: &Tree) -> PropResult {
    for variant in [ExtensionVariant::Refined, ExtensionVariant::Full] {
        let Some(ext) = small_extension(t, variant, EXTENSION_PROP_BUDGET)? else {
            continue;
        };
        let f = ext.forest();
        let image: NodeSet = f.ids().map(|v| ext.source_of(v)).collect();
        if image != t.node_set() {
            return Err("the projection misses source nodes".into());
        }
        for x in f.ids() {
            if f.depth(x) != t.depth(ext.source_of(x)) {
                return Err("the projection does not preserve depth".into());
            }
            for y in f.ids() {
                if f.le(x, y) && !t.le(ext.source_of(x), ext.source_of(y)) {
                    return Err("the projection breaks the order".into());
                }
            }
        }
    }
    Ok(())
}

fn p_extension_paths_project(t: &Tree) -> PropResult {
    for variant in [ExtensionVariant::Refined, ExtensionVariant::Full] {
        let Some(ext) = small_extension(t, variant, EXTENSION_PROP_BUDGET)? else {
            continue;
        };
        for path in ext.forest().paths() {
            let image = ext.project_path(&path).map_err(|e| e.to_string())?;
            if !t.is_path(&image.iter().copied().collect()) {
                return Err("an extension path projects to a non-path".into());
            }
        }
    }
    Ok(())
}

fn p_source_paths_lift_everywhere(t: &Tree) -> PropResult {
    for variant in [ExtensionVariant::Refined, ExtensionVariant::Full] {
        let Some(ext) = small_extension(t, variant, EXTENSION_PROP_BUDGET)? else {
            continue;
        };
        for root in ext.forest().roots() {
            for path in t.paths() {
                let lifted = ext.lift_path(root, &path).map_err(|e| e.to_string())?;
                if ext.forest().root_of(lifted[0]) != root {
                    return Err("a lift escaped its component".into());
                }
                if ext.project_path(&lifted).map_err(|e| e.to_string())? != path {
                    return Err("a lift does not project back".into());
                }
            }
        }
    }
    Ok(())
}

fn p_full_components_are_isomorphic(t: &Tree) -> PropResult {
    let Some(ext) = small_extension(t, ExtensionVariant::Full, EXTENSION_PROP_BUDGET)? else {
        return Ok(());
    };
    let roots = ext.forest().roots();
    if roots.len() != 2 {
        return Err(format!("full extension has {} components", roots.len()));
    }
    let pairs = ext
        .component_isomorphism(roots[0], roots[1])
        .map_err(|e| e.to_string())?;
    if pairs.len() != ext.forest().subtree(roots[0]).len() {
        return Err("component pairing is partial".into());
    }
    let a = ext
        .forest()
        .induced(&ext.forest().subtree(roots[0]))
        .map_err(|e| e.to_string())?;
    let b = ext
        .forest()
        .induced(&ext.forest().subtree(roots[1]))
        .map_err(|e| e.to_string())?;
    if homeo::canonical_form_forest(&a) != homeo::canonical_form_forest(&b) {
        return Err("components are not isomorphic".into());
    }
    Ok(())
}

fn p_refined_fixes_condensed_trees(t: &Tree) -> PropResult {
    let qt = condense::condensation(t).quotient_tree().clone();
    let Some(ext) = small_extension(&qt, ExtensionVariant::Refined, EXTENSION_PROP_BUDGET)?
    else {
        return Ok(());
    };
    if ext.forest().len() != qt.len() {
        return Err("refined extension of a condensed tree grew".into());
    }
    let tree = Tree::new(ext.forest().clone()).map_err(|e| e.to_string())?;
    if !homeo::isomorphic(&tree, &qt) {
        return Err("refined extension of a condensed tree is a different tree".into());
    }
    Ok(())
}

fn g_chain_extensions_are_perfect_binary() -> PropResult {
    for n in 1..=8usize {
        let ext = Extension::build(&chain(n), ExtensionVariant::Refined, 1 << 12)
            .map_err(|e| e.to_string())?;
        if ext.forest().len() != (1 << n) - 1 {
            return Err(format!("refined chain of {} has the wrong size", n));
        }
        if ext.forest().ids().any(|v| ext.forest().child_count(v) == 1) {
            return Err(format!("refined chain of {} is not perfect", n));
        }
    }
    Ok(())
}

fn p_full_extension_has_two_components(t: &Tree) -> PropResult {
    match forking::full_component_count(t, EXTENSION_PROP_BUDGET) {
        Ok(2) => Ok(()),
        Ok(n) => Err(format!("full extension has {} components", n)),
        Err(Error::BudgetExceeded { .. }) => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

fn p_embedded_copies_verify(t: &Tree) -> PropResult {
    let Some(ext) = small_extension(t, ExtensionVariant::Refined, 1024)? else {
        return Ok(());
    };
    let cand = ForkingCandidate {
        candidate: Tree::new(ext.forest().clone()).map_err(|e| e.to_string())?,
        sigma: ext.sigma_by_label(),
    };
    // The section picking the pinned marking of every source node is a
    // downward-connected embedded copy.
    let section: NodeSet = {
        let mut out = NodeSet::new();
        for v in ext.forest().ids() {
            let node = ext.ext_node(v);
            let chain = t.chain_to_root(node.target);
            let canonical = chain.iter().enumerate().all(|(i, s)| {
                node.bits[i]
                    == (i == 0 || condense::maximal_bridge(t, *s).anchor == *s)
            });
            if canonical {
                out.insert(v);
            }
        }
        out
    };
    let verdict =
        forking::verify_forking(t, &cand, 0, Some(&section)).map_err(|e| e.to_string())?;
    if !verdict.is_extension() {
        return Err(format!(
            "the refined extension fails its own verification: {:?}",
            verdict.violations
        ));
    }
    Ok(())
}

fn p_verifier_rejects_broken_sigma(t: &Tree) -> PropResult {
    if t.ids().all(|v| t.depth(v) < 2) {
        return Ok(());
    }
    let Some(ext) = small_extension(t, ExtensionVariant::Refined, 1024)? else {
        return Ok(());
    };
    let mut cand = ForkingCandidate {
        candidate: Tree::new(ext.forest().clone()).map_err(|e| e.to_string())?,
        sigma: ext.sigma_by_label(),
    };
    let deep = ext
        .forest()
        .ids()
        .find(|&v| ext.forest().depth(v) >= 2)
        .expect("the source has depth 2 somewhere");
    cand.sigma.insert(deep, t.root());
    let verdict = match forking::verify_forking(t, &cand, usize::MAX, None) {
        Ok(v) => v,
        Err(e) => return Err(e.to_string()),
    };
    if verdict.is_forking() {
        return Err("rerouting the projection went unnoticed".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Registry, corpus, engine.

pub fn propositions() -> &'static [Proposition] {
    use Check::{Global, PerTree};
    const PROPS: &[Proposition] = &[
        Proposition {
            id: "components-partition",
            statement: "deleting the root splits a tree into component subtrees",
            max_nodes: 12,
            check: PerTree(p_components_partition),
        },
        Proposition {
            id: "paths-are-maximal-chains",
            statement: "paths are exactly the maximal chains, one per leaf",
            max_nodes: 10,
            check: PerTree(p_paths_are_maximal_chains),
        },
        Proposition {
            id: "path-stem-intersection",
            statement: "a path meets every stem in a stem",
            max_nodes: 10,
            check: PerTree(p_path_stem_intersection),
        },
        Proposition {
            id: "stems-are-downward-chains",
            statement: "the stem of a node is its downward-closed root chain",
            max_nodes: 12,
            check: PerTree(p_stems_are_downward_chains),
        },
        Proposition {
            id: "leaves-meet-every-path-once",
            statement: "the leaves are an antichain meeting every path exactly once",
            max_nodes: 12,
            check: PerTree(p_leaves_meet_every_path_once),
        },
        Proposition {
            id: "order-regions-match-definitions",
            statement: "order regions agree with their pointwise definitions",
            max_nodes: 8,
            check: PerTree(p_order_regions_match_definitions),
        },
        Proposition {
            id: "bridge-rule-matches-path-quantification",
            statement: "the only-child step rule decides bridgehood",
            max_nodes: 8,
            check: PerTree(p_bridge_rule_matches_path_quantification),
        },
        Proposition {
            id: "undividedness-is-an-equivalence",
            statement: "undividedness is an equivalence on the paths through a stem",
            max_nodes: 9,
            check: PerTree(p_undividedness_is_an_equivalence),
        },
        Proposition {
            id: "classes-match-region-components",
            statement: "undividedness classes pair off with region components",
            max_nodes: 10,
            check: PerTree(p_classes_match_region_components),
        },
        Proposition {
            id: "branching1-iff-divided-paths",
            statement: "branching-1 means two paths part ways above the stem",
            max_nodes: 10,
            check: PerTree(p_branching1_iff_divided_paths),
        },
        Proposition {
            id: "branching1-implies-branching2",
            statement: "branching-1 stems are branching-2",
            max_nodes: 12,
            check: PerTree(p_branching1_implies_branching2),
        },
        Proposition {
            id: "bar-criterion",
            statement: "branching-2 holds iff bars exist and none is a singleton",
            max_nodes: 12,
            check: PerTree(p_bar_criterion),
        },
        Proposition {
            id: "branching-degrees-coincide",
            statement: "both branching degrees equal the child count",
            max_nodes: 12,
            check: PerTree(p_branching_degrees_coincide),
        },
        Proposition {
            id: "branching-degree-counts-children",
            statement: "the first branching degree counts children",
            max_nodes: 12,
            check: PerTree(p_branching_degree_counts_children),
        },
        Proposition {
            id: "bridge-initial-segments",
            statement: "every region path starts with a bridge of the region",
            max_nodes: 10,
            check: PerTree(p_bridge_initial_segments),
        },
        Proposition {
            id: "profiles-match-spines",
            statement: "comparability profiles and spine walks find the same bridges",
            max_nodes: 12,
            check: PerTree(p_profiles_match_spines),
        },
        Proposition {
            id: "bridges-partition-the-tree",
            statement: "maximal bridges partition the tree",
            max_nodes: 12,
            check: PerTree(p_bridges_partition_the_tree),
        },
        Proposition {
            id: "condensation-is-a-condensed-tree",
            statement: "the condensation is a condensed, well-founded tree",
            max_nodes: 12,
            check: PerTree(p_condensation_is_a_condensed_tree),
        },
        Proposition {
            id: "condensation-idempotent",
            statement: "condensing twice changes nothing",
            max_nodes: 12,
            check: PerTree(p_condensation_idempotent),
        },
        Proposition {
            id: "order-transfers-to-quotient",
            statement: "the order passes to the quotient, pointwise on cells",
            max_nodes: 10,
            check: PerTree(p_order_transfers_to_quotient),
        },
        Proposition {
            id: "image-preserves-structure",
            statement: "images of chains, antichains, convex and closed sets keep their role",
            max_nodes: 8,
            check: PerTree(p_image_preserves_structure),
        },
        Proposition {
            id: "preimage-preserves-structure",
            statement: "preimages of chains, convex and closed sets keep their role",
            max_nodes: 8,
            check: PerTree(p_preimage_preserves_structure),
        },
        Proposition {
            id: "paths-biject-with-quotient-paths",
            statement: "paths correspond one-to-one to quotient paths",
            max_nodes: 12,
            check: PerTree(p_paths_biject_with_quotient_paths),
        },
        Proposition {
            id: "path-families-reverse-order-when-condensed",
            statement: "in a condensed tree, path families mirror the order upside down",
            max_nodes: 12,
            check: PerTree(p_path_families_reverse_order_when_condensed),
        },
        Proposition {
            id: "condensed-iff-nonleaves-fork",
            statement: "condensed means every non-leaf has at least two children",
            max_nodes: 12,
            check: PerTree(p_condensed_iff_nonleaves_fork),
        },
        Proposition {
            id: "every-finite-path-is-singular",
            statement: "every path of a finite tree is singular with a least witness",
            max_nodes: 12,
            check: PerTree(p_every_finite_path_is_singular),
        },
        Proposition {
            id: "nonleaf-cells-end-branching",
            statement: "non-leaf cells are final stem segments that stop branching",
            max_nodes: 12,
            check: PerTree(p_nonleaf_cells_end_branching),
        },
        Proposition {
            id: "refinement-preserves-condensation",
            statement: "splitting a bridge edge keeps the condensation",
            max_nodes: 10,
            check: PerTree(p_refinement_preserves_condensation),
        },
        Proposition {
            id: "homeomorphy-is-decided-by-condensation",
            statement: "every tree refines, and is homeomorphic to, its condensation",
            max_nodes: 12,
            check: PerTree(p_homeomorphy_is_decided_by_condensation),
        },
        Proposition {
            id: "witness-refines-both",
            statement: "the common refinement witness refines both inputs",
            max_nodes: 10,
            check: PerTree(p_witness_refines_both),
        },
        Proposition {
            id: "singleton-abstraction-is-isomorphic",
            statement: "quotienting by singleton cells copies the tree",
            max_nodes: 12,
            check: PerTree(p_singleton_abstraction_is_isomorphic),
        },
        Proposition {
            id: "maximal-abstraction-is-condensation",
            statement: "quotienting by maximal bridges is the condensation",
            max_nodes: 12,
            check: PerTree(p_maximal_abstraction_is_condensation),
        },
        Proposition {
            id: "extensions-are-condensed",
            statement: "both extension variants are condensed",
            max_nodes: 10,
            check: PerTree(p_extensions_are_condensed),
        },
        Proposition {
            id: "sigma-is-monotone-onto",
            statement: "the projection is onto, monotone and depth-preserving",
            max_nodes: 9,
            check: PerTree(p_sigma_is_monotone_onto),
        },
        Proposition {
            id: "extension-paths-project",
            statement: "extension paths project onto source paths",
            max_nodes: 9,
            check: PerTree(p_extension_paths_project),
        },
        Proposition {
            id: "source-paths-lift-everywhere",
            statement: "source paths lift into every component and project back",
            max_nodes: 9,
            check: PerTree(p_source_paths_lift_everywhere),
        },
        Proposition {
            id: "full-components-are-isomorphic",
            statement: "the two full components are isomorphic, explicitly",
            max_nodes: 9,
            check: PerTree(p_full_components_are_isomorphic),
        },
        Proposition {
            id: "refined-fixes-condensed-trees",
            statement: "the refined extension of a condensed tree is that tree",
            max_nodes: 10,
            check: PerTree(p_refined_fixes_condensed_trees),
        },
        Proposition {
            id: "chain-extensions-are-perfect-binary",
            statement: "the refined extension of an n-chain is the perfect binary tree",
            max_nodes: 12,
            check: Global(g_chain_extensions_are_perfect_binary),
        },
        Proposition {
            id: "full-extension-has-two-components",
            statement: "the full extension always has exactly two components",
            max_nodes: 9,
            check: PerTree(p_full_extension_has_two_components),
        },
        Proposition {
            id: "embedded-copies-verify",
            statement: "the refined extension passes all five forking conditions",
            max_nodes: 8,
            check: PerTree(p_embedded_copies_verify),
        },
        Proposition {
            id: "verifier-rejects-broken-sigma",
            statement: "rerouting one projection value breaks a forking condition",
            max_nodes: 8,
            check: PerTree(p_verifier_rejects_broken_sigma),
        },
    ];
    PROPS
}

/// Small fixed shapes plus seeded random trees, capped at `max_nodes`.
pub fn corpus(samples: usize, seed: u64, max_nodes: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    let fixed: Vec<Tree> = vec![
        chain(1),
        chain(3),
        Tree::from_parts(&["t", "u", "v", "w"], &[("t", "u"), ("u", "v"), ("u", "w")]).unwrap(),
        Tree::from_parts(
            &["t", "u", "x", "y", "z"],
            &[("t", "u"), ("u", "x"), ("u", "y"), ("u", "z")],
        )
        .unwrap(),
        Tree::from_parts(&["r", "a", "b"], &[("r", "a"), ("r", "b")]).unwrap(),
    ];
    out.extend(fixed.into_iter().filter(|t| t.len() <= max_nodes));
    let profiles: [&[u32]; 5] = [
        &[1, 2, 2],
        &[0, 1, 1, 1],
        &[1, 1, 0, 2],
        &[0, 3, 1],
        &[2, 1, 3, 0, 1],
    ];
    for i in 0..samples {
        let config = GeneratorConfig {
            min_nodes: 1,
            max_nodes,
            child_weights: profiles[i % profiles.len()].to_vec(),
            seed: seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        };
        out.push(generate::random_tree(&config).expect("corpus profiles always grow"));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub tree: TreeDocument,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropositionReport {
    pub id: String,
    pub statement: String,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub requested_samples: usize,
    pub propositions: Vec<PropositionReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.propositions.iter().all(|p| p.failed == 0)
    }
}

fn run_one(prop: &Proposition, samples: usize, seed: u64) -> PropositionReport {
    let mut report = PropositionReport {
        id: prop.id.to_string(),
        statement: prop.statement.to_string(),
        samples: 0,
        passed: 0,
        failed: 0,
        counterexample: None,
    };
    match prop.check {
        Check::Global(check) => {
            report.samples = 1;
            match check() {
                Ok(()) => report.passed = 1,
                Err(reason) => {
                    report.failed = 1;
                    report.counterexample = Some(Counterexample {
                        tree: TreeDocument {
                            name: None,
                            nodes: Vec::new(),
                            edges: Vec::new(),
                            metadata: Default::default(),
                        },
                        reason,
                    });
                }
            }
        }
        Check::PerTree(check) => {
            for tree in corpus(samples, seed, prop.max_nodes) {
                report.samples += 1;
                match check(&tree) {
                    Ok(()) => report.passed += 1,
                    Err(reason) => {
                        report.failed += 1;
                        if report.counterexample.is_none() {
                            report.counterexample = Some(Counterexample {
                                tree: TreeDocument::from_forest(&tree, Some(prop.id)),
                                reason,
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// Runs the selected propositions (all of them when `ids` is empty) over a
/// seeded corpus of `samples` random trees plus the fixed shapes.
pub fn run_suite(ids: &[String], samples: usize, seed: u64) -> Result<SuiteReport> {
    let registry = propositions();
    let selected: Vec<&Proposition> = if ids.is_empty() {
        registry.iter().collect()
    } else {
        let mut picked = Vec::with_capacity(ids.len());
        for id in ids {
            match registry.iter().find(|p| p.id == id) {
                Some(p) => picked.push(p),
                None => return Err(Error::UnknownPropositionId(id.clone())),
            }
        }
        picked
    };
    Ok(SuiteReport {
        seed,
        requested_samples: samples,
        propositions: selected
            .into_iter()
            .map(|p| run_one(p, samples, seed))
            .collect(),
    })
}
