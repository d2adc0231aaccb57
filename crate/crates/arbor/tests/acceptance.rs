//! The acceptance gate: eight end-to-end criteria, one test each, with the
//! time budgets they must meet. Run with `--nocapture` to see the lines.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use arbor::branching::{self, StemRef};
use arbor::condense;
use arbor::doc::{parse_document, TreeDocument};
use arbor::forking::{self, Extension, ExtensionVariant, ForkingCandidate, DEFAULT_BUDGET};
use arbor::generate::{random_tree, GeneratorConfig};
use arbor::homeo;
use arbor::suite;
use arbor::{Forest, NodeId, NodeSet, Tree};

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

fn chain(n: usize) -> Tree {
    let labels: Vec<String> = (0..n).map(|i| format!("c{}", i)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let edges: Vec<(&str, &str)> = (1..n).map(|i| (refs[i - 1], refs[i])).collect();
    Tree::from_parts(&refs, &edges).unwrap()
}

fn fixture(name: &str) -> Tree {
    let path = format!("{}/fixtures/{}.json", env!("CARGO_MANIFEST_DIR"), name);
    parse_document(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .to_tree()
        .unwrap()
}

#[test]
fn criterion_1_extensions_of_the_y_tree() {
    let start = Instant::now();
    let y = y_tree();

    let refined = Extension::build(&y, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
    let f = refined.forest();
    let labels: Vec<&str> = f.ids().map(|v| f.label(v)).collect();
    assert_eq!(labels, ["t:1", "u:10", "u:11", "v:101", "v:111", "w:101", "w:111"]);
    let parent_of = |l: &str| f.parent(f.node(l).unwrap()).map(|p| f.label(p).to_string());
    for (child, parent) in [
        ("t:1", None),
        ("u:10", Some("t:1")),
        ("u:11", Some("t:1")),
        ("v:101", Some("u:10")),
        ("v:111", Some("u:11")),
        ("w:101", Some("u:10")),
        ("w:111", Some("u:11")),
    ] {
        assert_eq!(parent_of(child), parent.map(String::from), "parent of {child}");
    }

    let full = Extension::build(&y, ExtensionVariant::Full, DEFAULT_BUDGET).unwrap();
    assert_eq!(full.forest().len(), 22);
    let roots = full.forest().roots();
    assert_eq!(roots.len(), 2);
    let mut forms = Vec::new();
    for r in &roots {
        let comp = full.forest().subtree(*r);
        assert_eq!(comp.len(), 11);
        forms.push(homeo::canonical_form_forest(
            &full.forest().induced(&comp).unwrap(),
        ));
    }
    assert_eq!(forms[0], forms[1], "components are isomorphic");
    full.component_isomorphism(roots[0], roots[1]).unwrap();

    assert!(start.elapsed() < Duration::from_secs(1));
    println!("acceptance 1 (extensions of the y tree): PASS");
}

#[test]
fn criterion_2_trident_forkings() {
    let start = Instant::now();
    let t = trident();

    let ext = Extension::build(&t, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
    assert_eq!(ext.forest().len(), 9);
    let canonical = ForkingCandidate {
        candidate: Tree::new(ext.forest().clone()).unwrap(),
        sigma: ext.sigma_by_label(),
    };
    let verdict =
        forking::verify_forking(&t, &canonical, forking::DEFAULT_SEARCH_CAP, None).unwrap();
    assert!(verdict.is_extension(), "the refined extension is an extension");

    // Both ways of splitting the fork point make forkings, not extensions.
    for (la, lb) in [("x", "z"), ("y", "z")] {
        let cand_tree = Tree::from_parts(
            &["t", "u0", "u1", "p0", "q0", "p1", "q1"],
            &[
                ("t", "u0"),
                ("t", "u1"),
                ("u0", "p0"),
                ("u0", "q0"),
                ("u1", "p1"),
                ("u1", "q1"),
            ],
        )
        .unwrap();
        let sigma: BTreeMap<NodeId, NodeId> = [
            ("t", "t"),
            ("u0", "u"),
            ("u1", "u"),
            ("p0", "x"),
            ("q0", "y"),
            ("p1", la),
            ("q1", lb),
        ]
        .into_iter()
        .map(|(c, s)| (cand_tree.require(c).unwrap(), t.require(s).unwrap()))
        .collect();
        let cand = ForkingCandidate {
            candidate: cand_tree,
            sigma,
        };
        let verdict =
            forking::verify_forking(&t, &cand, forking::DEFAULT_SEARCH_CAP, None).unwrap();
        assert!(verdict.is_forking(), "({la}, {lb}) is a forking");
        assert!(!verdict.is_extension(), "({la}, {lb}) is not an extension");
    }

    assert!(start.elapsed() < Duration::from_secs(1));
    println!("acceptance 2 (trident forkings): PASS");
}

#[test]
fn criterion_3_six_bridge_condensation() {
    let t = fixture("six_bridge");
    assert_eq!(t.len(), 13);
    let q = condense::condensation(&t);
    let qt = q.quotient_tree();
    assert_eq!(qt.len(), 6);
    let children_of = |l: &str| -> Vec<&str> {
        qt.children(qt.node(l).unwrap())
            .into_iter()
            .map(|c| qt.label(c))
            .collect()
    };
    assert_eq!(qt.label(qt.root()), "a1");
    assert_eq!(children_of("a1"), ["b1", "c1"]);
    assert_eq!(children_of("b1"), ["d1", "e1", "f1"]);
    assert_eq!(children_of("c1"), Vec::<&str>::new());
    for leaf in ["d1", "e1", "f1"] {
        assert_eq!(children_of(leaf), Vec::<&str>::new());
    }
    println!("acceptance 3 (six-bridge condensation): PASS");
}

#[test]
fn criterion_4_bridge_oracles_on_random_trees() {
    let start = Instant::now();
    let profiles: [&[u32]; 4] = [&[1, 2, 2], &[0, 1, 1, 1], &[1, 1, 0, 2], &[2, 1, 3, 0, 1]];
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    for seed in 0..500u64 {
        let t = random_tree(&GeneratorConfig {
            min_nodes: 1,
            max_nodes: 12,
            child_weights: profiles[seed as usize % profiles.len()].to_vec(),
            seed: 0xC4 ^ seed.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        })
        .unwrap();
        checked += 1;
        for v in t.ids() {
            if condense::maximal_bridge(&t, v).nodes != condense::profile_class(&t, v) {
                mismatches += 1;
            }
        }
        if t.len() <= 8 {
            let ids: Vec<NodeId> = t.ids().collect();
            let paths: Vec<NodeSet> = t
                .paths()
                .into_iter()
                .map(|p| p.into_iter().collect())
                .collect();
            for mask in 1u32..1 << t.len() {
                let set: NodeSet = (0..t.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| ids[i])
                    .collect();
                let by_rule = arbor::subset::is_bridge(&t, &set);
                let by_paths = arbor::subset::is_segment(&t, &set)
                    && paths.iter().all(|p| {
                        let meet = p.intersection(&set).count();
                        meet == 0 || meet == set.len()
                    });
                if by_rule != by_paths {
                    mismatches += 1;
                }
            }
        }
    }
    assert_eq!(checked, 500);
    assert_eq!(mismatches, 0);
    assert!(start.elapsed() < Duration::from_secs(60));
    println!("acceptance 4 (bridge oracles on 500 random trees): PASS");
}

#[test]
fn criterion_5_full_suite() {
    let start = Instant::now();
    let report = suite::run_suite(&[], 25, 0xACCE97).unwrap();
    for prop in &report.propositions {
        assert_eq!(
            prop.failed, 0,
            "{} failed: {:?}",
            prop.id, prop.counterexample
        );
    }
    assert!(report.all_passed());
    assert!(start.elapsed() < Duration::from_secs(300));
    println!(
        "acceptance 5 (invariant suite, {} propositions): PASS",
        report.propositions.len()
    );
}

#[test]
fn criterion_6_chain_law_and_two_components() {
    let start = Instant::now();
    for n in 1..=10usize {
        let c = chain(n);
        let ext = Extension::build(&c, ExtensionVariant::Refined, DEFAULT_BUDGET).unwrap();
        assert_eq!(ext.forest().len(), (1 << n) - 1, "refined chain of {n}");
        assert!(ext.forest().ids().all(|v| ext.forest().child_count(v) != 1));
        assert_eq!(forking::full_component_count(&c, DEFAULT_BUDGET).unwrap(), 2);
    }
    for t in [y_tree(), trident(), fixture("six_bridge")] {
        assert_eq!(forking::full_component_count(&t, 1 << 40).unwrap(), 2);
    }
    assert!(start.elapsed() < Duration::from_secs(10));
    println!("acceptance 6 (chain law and full components): PASS");
}

#[test]
fn criterion_7_branching_degrees_coincide() {
    let mut stems = 0usize;
    for t in suite::corpus(60, 0xC01, 10) {
        for v in t.ids() {
            let s = StemRef::Node(v);
            let region = branching::region_above(&t, s);
            if region.is_empty() || region.len() > 12 {
                continue;
            }
            let n1 = branching::n_branching1(&t, s).unwrap();
            let n2 = branching::n_branching2_bruteforce(&t, s, 12).unwrap();
            assert_eq!(Some(n1), n2, "degrees at {:?}", t.label(v));
            assert_eq!(n1, t.child_count(v));
            stems += 1;
        }
    }
    assert!(stems >= 100, "checked {stems} stems");
    println!("acceptance 7 (branching degrees coincide on {stems} stems): PASS");
}

/// An off-by-one spine walk: it judges the downward step by the node's own
/// child count instead of the parent's. The comparability oracle has to
/// catch it on some random tree.
fn broken_maximal_bridge(f: &Forest, x: NodeId) -> NodeSet {
    let mut bottom = x;
    while let Some(p) = f.parent(bottom) {
        if f.child_count(bottom) != 1 {
            break;
        }
        bottom = p;
    }
    let mut out: NodeSet = [bottom].into_iter().collect();
    let mut top = bottom;
    while f.child_count(top) == 1 {
        top = f.children(top)[0];
        out.insert(top);
    }
    out
}

#[test]
fn criterion_8_mutation_is_caught() {
    let mut caught = false;
    for seed in 0..200u64 {
        let t = random_tree(&GeneratorConfig {
            min_nodes: 2,
            max_nodes: 10,
            child_weights: vec![1, 2, 2],
            seed: 0x8AD ^ seed,
        })
        .unwrap();
        for v in t.ids() {
            let broken = broken_maximal_bridge(&t, v);
            let oracle = condense::profile_class(&t, v);
            if broken != oracle {
                let doc = TreeDocument::from_forest(&t, Some("counterexample"));
                println!(
                    "mutant disagrees with the oracle at {:?} on:\n{}",
                    t.label(v),
                    serde_json::to_string_pretty(&doc).unwrap()
                );
                caught = true;
                break;
            }
        }
        if caught {
            break;
        }
    }
    assert!(caught, "the broken spine walk was never caught");
    println!("acceptance 8 (mutated bridge rule is caught): PASS");
}
