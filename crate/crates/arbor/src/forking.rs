//! Condensed forkings and the canonical extension constructions.
//!
//! An extension of a tree `T` re-creates every node as a family of copies
//! indexed by 0/1 markings of its root chain. Copies are glued so that the
//! projection back to `T` maps every path of the extension isomorphically
//! onto a path of `T`, while the extension itself is condensed. The `Full`
//! variant marks every position freely; the `Refined` variant pins the
//! marking to 1 at the least node of each maximal bridge, which keeps the
//! result a tree and makes it the smallest member of the family.

use std::collections::BTreeMap;

use crate::condense;
use crate::error::{Error, Result};
use crate::forest::{Forest, NodeId, NodeSet, Tree};

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionVariant {
    Full,
    Refined,
}

/// A node of an extension: a source node plus the marking of its root chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtNode {
    pub target: NodeId,
    /// One bit per node on the root chain of `target`, root first,
    /// `target` included.
    pub bits: Vec<bool>,
}

fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn ext_label(source: &Tree, target: NodeId, bits: &[bool]) -> String {
    format!("{}:{}", source.label(target), bitstring(bits))
}

/// Markings pinned to 1 in the refined variant: the least node of every
/// maximal bridge. The root is always among them, so the refined extension
/// has a single component.
fn forced_nodes(source: &Tree, variant: ExtensionVariant) -> Vec<bool> {
    let mut forced = vec![false; source.len()];
    if variant == ExtensionVariant::Refined {
        for bridge in condense::bridge_partition(source) {
            forced[bridge.anchor.idx()] = true;
        }
    }
    forced
}

/// Node count of the extension before building it: one copy of `t` per
/// assignment of the unpinned positions on its root chain.
pub fn predicted_size(source: &Tree, variant: ExtensionVariant) -> u128 {
    let forced = forced_nodes(source, variant);
    let mut total: u128 = 0;
    for t in source.ids() {
        let free = source
            .chain_to_root(t)
            .iter()
            .filter(|v| !forced[v.idx()])
            .count();
        let copies = if free >= 127 {
            u128::MAX
        } else {
            1u128 << free
        };
        total = total.saturating_add(copies);
    }
    total
}

#[derive(Debug, Clone)]
pub struct Extension {
    forest: Forest,
    // Both indexed by the ids of `forest`.
    nodes: Vec<ExtNode>,
    sigma: Vec<NodeId>,
    variant: ExtensionVariant,
    source: Tree,
    forced: Vec<bool>,
}

impl Extension {
    /// Builds the extension, refusing when the predicted node count
    /// exceeds `budget`.
    pub fn build(source: &Tree, variant: ExtensionVariant, budget: u64) -> Result<Extension> {
        let predicted = predicted_size(source, variant);
        if predicted > budget as u128 {
            return Err(Error::BudgetExceeded { predicted, budget });
        }
        let forced = forced_nodes(source, variant);
        let mut made: Vec<(String, NodeId, Vec<bool>)> = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for t in source.ids() {
            let chain = source.chain_to_root(t);
            let free: Vec<usize> = (0..chain.len())
                .filter(|&i| !forced[chain[i].idx()])
                .collect();
            for counter in 0u64..(1u64 << free.len()) {
                let mut bits: Vec<bool> = chain.iter().map(|v| forced[v.idx()]).collect();
                for (k, &pos) in free.iter().enumerate() {
                    bits[pos] = counter >> k & 1 == 1;
                }
                let label = ext_label(source, t, &bits);
                if source.parent(t).is_some() {
                    // The parent copy carries the marking prefix; it exists
                    // because pinned positions agree along the chain.
                    let parent = ext_label(source, chain[chain.len() - 2], &bits[..bits.len() - 1]);
                    edges.push((parent, label.clone()));
                }
                made.push((label, t, bits));
            }
        }
        let forest = Forest::build(
            made.iter().map(|(l, _, _)| l.clone()).collect(),
            edges,
        )?;
        let mut nodes = vec![
            ExtNode {
                target: NodeId(0),
                bits: Vec::new()
            };
            forest.len()
        ];
        let mut sigma = vec![NodeId(0); forest.len()];
        for (label, target, bits) in made {
            let id = forest.node(&label).expect("every generated label is kept");
            sigma[id.idx()] = target;
            nodes[id.idx()] = ExtNode { target, bits };
        }
        Ok(Extension {
            forest,
            nodes,
            sigma,
            variant,
            source: source.clone(),
            forced,
        })
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn source(&self) -> &Tree {
        &self.source
    }

    pub fn variant(&self) -> ExtensionVariant {
        self.variant
    }

    /// The projection σ.
    pub fn source_of(&self, v: NodeId) -> NodeId {
        self.sigma[v.idx()]
    }

    pub fn ext_node(&self, v: NodeId) -> &ExtNode {
        &self.nodes[v.idx()]
    }

    pub fn sigma_by_label(&self) -> BTreeMap<NodeId, NodeId> {
        self.forest.ids().map(|v| (v, self.sigma[v.idx()])).collect()
    }

    /// Projects a path of the extension onto the source; the image is
    /// always a source path.
    pub fn project_path(&self, path: &[NodeId]) -> Result<Vec<NodeId>> {
        let set: NodeSet = path.iter().copied().collect();
        if !self.forest.is_path(&set) {
            return Err(Error::NotAPath(format!(
                "{:?}",
                self.forest.labels_of(&set)
            )));
        }
        let image: Vec<NodeId> = self
            .forest
            .sort_chain(&set)
            .into_iter()
            .map(|v| self.sigma[v.idx()])
            .collect();
        let image_set: NodeSet = image.iter().copied().collect();
        assert!(
            self.source.is_path(&image_set),
            "projection carries paths onto paths"
        );
        Ok(image)
    }

    /// Lifts a source path into the component rooted at `component`:
    /// markings default to 0, pinned positions to 1, and the root position
    /// copies the component root.
    pub fn lift_path(&self, component: NodeId, path: &[NodeId]) -> Result<Vec<NodeId>> {
        if component.idx() >= self.forest.len() || self.forest.parent(component).is_some() {
            return Err(Error::UnknownComponent(format!("#{}", component.0)));
        }
        let set: NodeSet = path.iter().copied().collect();
        for &v in &set {
            if v.idx() >= self.source.len() {
                return Err(Error::UnknownNode(format!("#{}", v.0)));
            }
        }
        if !self.source.is_path(&set) {
            return Err(Error::NotAPath(format!(
                "{:?}",
                self.source.labels_of(&set)
            )));
        }
        let root_bit = self.nodes[component.idx()].bits[0];
        let mut lifted = Vec::with_capacity(set.len());
        for t in self.source.sort_chain(&set) {
            let chain = self.source.chain_to_root(t);
            let bits: Vec<bool> = chain
                .iter()
                .enumerate()
                .map(|(i, v)| if i == 0 { root_bit } else { self.forced[v.idx()] })
                .collect();
            let label = ext_label(&self.source, t, &bits);
            lifted.push(self.forest.node(&label).expect("lift stays inside the extension"));
        }
        debug_assert!(lifted
            .iter()
            .all(|&v| self.forest.root_of(v) == component));
        Ok(lifted)
    }

    /// An explicit isomorphism between two components: flip the root
    /// marking, keep everything else.
    pub fn component_isomorphism(
        &self,
        c1: NodeId,
        c2: NodeId,
    ) -> Result<Vec<(NodeId, NodeId)>> {
        for c in [c1, c2] {
            if c.idx() >= self.forest.len() || self.forest.parent(c).is_some() {
                return Err(Error::UnknownComponent(format!("#{}", c.0)));
            }
        }
        let members = self.forest.subtree(c1);
        if c1 == c2 {
            return Ok(members.into_iter().map(|v| (v, v)).collect());
        }
        let target_bit = self.nodes[c2.idx()].bits[0];
        let mut pairs = Vec::with_capacity(members.len());
        for x in members {
            let node = &self.nodes[x.idx()];
            let mut bits = node.bits.clone();
            bits[0] = target_bit;
            let label = ext_label(&self.source, node.target, &bits);
            let y = self
                .forest
                .node(&label)
                .expect("components carry the same markings apart from the root");
            pairs.push((x, y));
        }
        // The flip must commute with parents in both directions.
        let map: BTreeMap<NodeId, NodeId> = pairs.iter().copied().collect();
        let distinct: NodeSet = map.values().copied().collect();
        assert_eq!(distinct.len(), pairs.len(), "flip is injective");
        for &(x, y) in &pairs {
            assert_eq!(
                self.forest.parent(x).map(|p| map[&p]),
                self.forest.parent(y),
                "flip commutes with parents"
            );
        }
        Ok(pairs)
    }
}

/// Builds the full extension and counts its components; the count is
/// always two, one per root marking.
pub fn full_component_count(source: &Tree, budget: u64) -> Result<usize> {
    let ext = Extension::build(source, ExtensionVariant::Full, budget)?;
    let roots = ext.forest().roots();
    let bits: Vec<bool> = roots.iter().map(|r| ext.ext_node(*r).bits[0]).collect();
    assert_eq!(roots.len(), 2, "one component per root marking");
    assert_ne!(bits[0], bits[1]);
    Ok(roots.len())
}

/// A condensed tree offered as a forking of some source, together with the
/// claimed projection.
#[derive(Debug, Clone)]
pub struct ForkingCandidate {
    pub candidate: Tree,
    /// Candidate node to source node.
    pub sigma: BTreeMap<NodeId, NodeId>,
}

/// Outcome of checking the forking conditions one by one. Conditions 1-4
/// make a forking; condition 5 upgrades it to an extension.
#[derive(Debug, Clone)]
pub struct ForkingVerdict {
    pub cond1_condensed: bool,
    pub cond2_onto_monotone: bool,
    pub cond3_path_isomorphism: bool,
    pub cond4_path_cover: bool,
    pub cond5_extension: bool,
    /// A downward-connected copy of the source inside the candidate, when
    /// condition 5 holds.
    pub witness: Option<NodeSet>,
    pub violations: Vec<String>,
}

impl ForkingVerdict {
    pub fn is_forking(&self) -> bool {
        self.cond1_condensed
            && self.cond2_onto_monotone
            && self.cond3_path_isomorphism
            && self.cond4_path_cover
    }

    pub fn is_extension(&self) -> bool {
        self.is_forking() && self.cond5_extension
    }
}

pub const DEFAULT_SEARCH_CAP: usize = 20;

/// Checks whether `cand` is a forking of `source`, and whether it is an
/// extension. Condition 5 is decided by searching for an embedded copy of
/// the source; candidates larger than `cap` need a supplied `witness`.
pub fn verify_forking(
    source: &Tree,
    cand: &ForkingCandidate,
    cap: usize,
    witness: Option<&NodeSet>,
) -> Result<ForkingVerdict> {
    let c = cand.candidate.forest();
    for v in c.ids() {
        match cand.sigma.get(&v) {
            None => return Err(Error::IncompleteSigma(c.label(v).to_string())),
            Some(s) if s.idx() >= source.len() => {
                return Err(Error::IncompleteSigma(c.label(v).to_string()))
            }
            _ => {}
        }
    }
    let sig = |v: NodeId| cand.sigma[&v];
    let mut violations = Vec::new();

    let cond1 = condense::is_condensed(c);
    if !cond1 {
        violations.push("candidate is not condensed".to_string());
    }

    let image: NodeSet = c.ids().map(sig).collect();
    let onto = image == source.node_set();
    let mut monotone = true;
    'outer: for x in c.ids() {
        for y in c.ids() {
            if c.le(x, y) && !source.le(sig(x), sig(y)) {
                monotone = false;
                violations.push(format!(
                    "sigma breaks order on {:?} <= {:?}",
                    c.label(x),
                    c.label(y)
                ));
                break 'outer;
            }
        }
    }
    if !onto {
        violations.push("sigma is not onto the source".to_string());
    }
    let cond2 = onto && monotone;

    let mut cond3 = true;
    let mut covered: Vec<NodeSet> = Vec::new();
    for path in c.paths() {
        let image: Vec<NodeId> = path.iter().map(|&v| sig(v)).collect();
        let ok = image.windows(2).all(|w| source.lt(w[0], w[1]))
            && source.is_path(&image.iter().copied().collect());
        if ok {
            covered.push(image.into_iter().collect());
        } else {
            cond3 = false;
            violations.push(format!(
                "path {:?} does not map isomorphically onto a source path",
                c.labels_of(&path.iter().copied().collect::<NodeSet>())
            ));
        }
    }

    let mut cond4 = true;
    for path in source.paths() {
        let set: NodeSet = path.into_iter().collect();
        if !covered.contains(&set) {
            cond4 = false;
            violations.push(format!(
                "source path {:?} is not covered",
                source.labels_of(&set)
            ));
        }
    }

    // Condition 5 presupposes the first four; a candidate that already
    // failed them is not worth an exponential search.
    let forking_so_far = cond1 && cond2 && cond3 && cond4;
    let (cond5, found) = match witness {
        Some(w) => {
            let ok = check_embedded_copy(source, cand, w, &mut violations)?;
            (ok, ok.then(|| w.clone()))
        }
        None if !forking_so_far => {
            violations.push("not a forking, so not an extension".to_string());
            (false, None)
        }
        None => {
            if c.len() > cap {
                return Err(Error::SearchCapExceededWithoutWitness(c.len(), cap));
            }
            match search_embedded_copy(source, cand) {
                Some(s) => (true, Some(s)),
                None => {
                    violations.push(
                        "no downward-connected embedded copy of the source".to_string(),
                    );
                    (false, None)
                }
            }
        }
    };

    Ok(ForkingVerdict {
        cond1_condensed: cond1,
        cond2_onto_monotone: cond2,
        cond3_path_isomorphism: cond3,
        cond4_path_cover: cond4,
        cond5_extension: cond5,
        witness: found,
        violations,
    })
}

/// Any two members must share a lower bound inside the set.
fn downward_connected(f: &Forest, set: &NodeSet) -> bool {
    set.iter().all(|&x| {
        set.iter().all(|&y| {
            set.iter()
                .any(|&z| f.le(z, x) && f.le(z, y))
        })
    })
}

fn check_embedded_copy(
    source: &Tree,
    cand: &ForkingCandidate,
    w: &NodeSet,
    violations: &mut Vec<String>,
) -> Result<bool> {
    let c = cand.candidate.forest();
    for &v in w {
        if v.idx() >= c.len() {
            return Err(Error::UnknownNode(format!("#{}", v.0)));
        }
    }
    if w.len() != source.len() {
        violations.push(format!(
            "witness has {} nodes, source has {}",
            w.len(),
            source.len()
        ));
        return Ok(false);
    }
    let image: NodeSet = w.iter().map(|&v| cand.sigma[&v]).collect();
    if image != source.node_set() {
        violations.push("witness does not map onto the source".to_string());
        return Ok(false);
    }
    for &x in w {
        for &y in w {
            if c.le(x, y) != source.le(cand.sigma[&x], cand.sigma[&y]) {
                violations.push(format!(
                    "witness is not order-isomorphic at {:?}, {:?}",
                    c.label(x),
                    c.label(y)
                ));
                return Ok(false);
            }
        }
    }
    if !downward_connected(c, w) {
        violations.push("witness is not downward-connected".to_string());
        return Ok(false);
    }
    Ok(true)
}

/// Backtracking over one representative per source node, parents first.
fn search_embedded_copy(source: &Tree, cand: &ForkingCandidate) -> Option<NodeSet> {
    let c = cand.candidate.forest();
    let mut preimages: Vec<Vec<NodeId>> = vec![Vec::new(); source.len()];
    for v in c.ids() {
        preimages[cand.sigma[&v].idx()].push(v);
    }
    let mut order: Vec<NodeId> = source.ids().collect();
    order.sort_by_key(|&v| (source.depth(v), v));

    fn go(
        source: &Tree,
        c: &Forest,
        order: &[NodeId],
        preimages: &[Vec<NodeId>],
        chosen: &mut Vec<(NodeId, NodeId)>,
    ) -> bool {
        let Some(&s) = order.get(chosen.len()) else {
            return true;
        };
        'cands: for &r in &preimages[s.idx()] {
            for &(s2, r2) in chosen.iter() {
                if r == r2
                    || c.le(r, r2) != source.le(s, s2)
                    || c.le(r2, r) != source.le(s2, s)
                {
                    continue 'cands;
                }
            }
            chosen.push((s, r));
            if go(source, c, order, preimages, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(source.len());
    if go(source, c, &order, &preimages, &mut chosen) {
        let set: NodeSet = chosen.iter().map(|&(_, r)| r).collect();
        debug_assert!(downward_connected(c, &set));
        Some(set)
    } else {
        None
    }
}
