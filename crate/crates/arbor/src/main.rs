//! Thin command-line front end over the library.
//!
//! Every subcommand reads and writes the JSON tree documents from
//! `arbor::doc`. Exit codes: 0 for success (and true verdicts), 1 for a
//! false verdict, 2 for unusable input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use arbor::branching;
use arbor::condense;
use arbor::doc::{self, TreeDocument};
use arbor::dot;
use arbor::forking::{self, Extension, ExtensionVariant, ForkingCandidate, DEFAULT_BUDGET};
use arbor::generate::{self, GeneratorConfig};
use arbor::homeo;
use arbor::suite;
use arbor::{NodeSet, Tree};

#[derive(Parser)]
#[command(name = "arbor", version, about = "Structural toolkit for finite order-theoretic trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Refined,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document describes a tree; report its shape.
    Validate { file: PathBuf },
    /// Branching degrees at every stem, or at one node's stem.
    Branching {
        file: PathBuf,
        /// Only report the stem of this node.
        #[arg(long)]
        stem: Option<String>,
    },
    /// Quotient a tree by its maximal bridges.
    Condense {
        file: PathBuf,
        /// Emit Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Decide homeomorphy of two trees.
    Homeo {
        a: PathBuf,
        b: PathBuf,
        /// Also construct a common refinement witness.
        #[arg(long)]
        witness: bool,
    },
    /// Build the refined or full extension of a tree.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "refined")]
        variant: VariantArg,
        /// Node budget; defaults to ARBOR_BUDGET or 100000.
        #[arg(long)]
        budget: Option<u64>,
        /// Emit Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Check the forking conditions of a candidate against a source tree.
    VerifyForking {
        source: PathBuf,
        candidate: PathBuf,
        /// JSON object mapping candidate labels to source labels.
        sigma: PathBuf,
        /// JSON array of candidate labels naming an embedded copy.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Largest candidate the embedded-copy search will take on.
        #[arg(long, default_value_t = forking::DEFAULT_SEARCH_CAP)]
        cap: usize,
    },
    /// Generate a seeded random tree document.
    Generate {
        #[arg(long, default_value_t = 1)]
        min: usize,
        #[arg(long, default_value_t = 12)]
        max: usize,
        /// Comma-separated weights for 0, 1, 2, ... children.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 2])]
        weights: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        name: Option<String>,
    },
    /// Run the invariant suite over seeded random trees.
    Suite {
        /// Comma-separated proposition ids; empty means all.
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0xA5A5)]
        seed: u64,
        /// List the registered propositions and exit.
        #[arg(long)]
        list: bool,
    },
    /// Emit Graphviz for a document.
    Dot {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_doc(path: &Path) -> Result<TreeDocument, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    doc::parse_document(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tree(path: &Path) -> Result<Tree, String> {
    load_doc(path)?
        .to_tree()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn budget_or_env(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("ARBOR_BUDGET") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| format!("ARBOR_BUDGET is not a number: {raw:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn write_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(2);
    }
}

fn emit(value: &impl serde::Serialize) {
    let mut text = serde_json::to_string_pretty(value).expect("reports are plain data");
    text.push('\n');
    write_out(&text);
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Validate { file } => {
            let document = load_doc(&file)?;
            match document.to_tree() {
                Ok(t) => {
                    emit(&json!({
                        "valid": true,
                        "nodes": t.len(),
                        "root": t.label(t.root()),
                        "leaves": t.leaves().len(),
                        "height": t.ids().map(|v| t.depth(v)).max().unwrap_or(0),
                        "paths": t.paths().len(),
                        "condensed": condense::is_condensed(&t),
                    }));
                    Ok(0)
                }
                Err(e) => {
                    emit(&json!({ "valid": false, "reason": e.to_string() }));
                    Ok(1)
                }
            }
        }
        Command::Branching { file, stem } => {
            let t = load_tree(&file)?;
            let report = branching::branching_report(&t);
            match stem {
                None => emit(&report),
                Some(label) => {
                    let row = report
                        .stems
                        .iter()
                        .find(|s| s.node == label)
                        .ok_or_else(|| format!("unknown node {label:?}"))?;
                    emit(row);
                }
            }
            Ok(0)
        }
        Command::Condense { file, dot: as_dot } => {
            let t = load_tree(&file)?;
            let q = condense::condensation(&t);
            if as_dot {
                write_out(&dot::emit_dot(q.quotient_tree(), "condensation"));
            } else {
                let cells: BTreeMap<&str, Vec<&str>> = q
                    .cells()
                    .iter()
                    .map(|b| (t.label(b.anchor), t.labels_of(&b.nodes)))
                    .collect();
                emit(&json!({
                    "tree": TreeDocument::from_forest(q.quotient_tree(), Some("condensation")),
                    "cells": cells,
                }));
            }
            Ok(0)
        }
        Command::Homeo { a, b, witness } => {
            let (ta, tb) = (load_tree(&a)?, load_tree(&b)?);
            let verdict = homeo::homeomorphic(&ta, &tb);
            let witness_doc = if verdict && witness {
                let w = homeo::common_refinement_witness(&ta, &tb).map_err(|e| e.to_string())?;
                Some(TreeDocument::from_forest(&w, Some("common_refinement")))
            } else {
                None
            };
            emit(&json!({ "homeomorphic": verdict, "witness": witness_doc }));
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Extend {
            file,
            variant,
            budget,
            dot: as_dot,
        } => {
            let t = load_tree(&file)?;
            let variant = match variant {
                VariantArg::Refined => ExtensionVariant::Refined,
                VariantArg::Full => ExtensionVariant::Full,
            };
            let budget = budget_or_env(budget)?;
            let ext = Extension::build(&t, variant, budget).map_err(|e| e.to_string())?;
            if as_dot {
                write_out(&dot::emit_dot(ext.forest(), "extension"));
                return Ok(0);
            }
            let sigma: BTreeMap<String, String> = ext
                .forest()
                .ids()
                .map(|v| {
                    (
                        ext.forest().label(v).to_string(),
                        t.label(ext.source_of(v)).to_string(),
                    )
                })
                .collect();
            emit(&json!({
                "variant": match variant {
                    ExtensionVariant::Refined => "refined",
                    ExtensionVariant::Full => "full",
                },
                "predicted": forking::predicted_size(&t, variant),
                "nodes": ext.forest().len(),
                "components": ext.forest().roots().len(),
                "tree": TreeDocument::from_forest(ext.forest(), Some("extension")),
                "sigma": sigma,
            }));
            Ok(0)
        }
        Command::VerifyForking {
            source,
            candidate,
            sigma,
            witness,
            cap,
        } => {
            let source = load_tree(&source)?;
            let cand_tree = load_tree(&candidate)?;
            let raw = std::fs::read_to_string(&sigma)
                .map_err(|e| format!("{}: {e}", sigma.display()))?;
            let by_label: BTreeMap<String, String> =
                serde_json::from_str(&raw).map_err(|e| format!("{}: {e}", sigma.display()))?;
            let mut map = BTreeMap::new();
            for (c, s) in by_label {
                map.insert(
                    cand_tree.require(&c).map_err(|e| e.to_string())?,
                    source.require(&s).map_err(|e| e.to_string())?,
                );
            }
            let witness_set: Option<NodeSet> = match witness {
                None => None,
                Some(path) => {
                    let raw = std::fs::read_to_string(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let labels: Vec<String> = serde_json::from_str(&raw)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let mut set = NodeSet::new();
                    for l in labels {
                        set.insert(cand_tree.require(&l).map_err(|e| e.to_string())?);
                    }
                    Some(set)
                }
            };
            let cand = ForkingCandidate {
                candidate: cand_tree,
                sigma: map,
            };
            let verdict = forking::verify_forking(&source, &cand, cap, witness_set.as_ref())
                .map_err(|e| e.to_string())?;
            let witness_labels: Option<Vec<&str>> = verdict
                .witness
                .as_ref()
                .map(|w| cand.candidate.labels_of(w));
            emit(&json!({
                "conditions": {
                    "condensed": verdict.cond1_condensed,
                    "onto_monotone": verdict.cond2_onto_monotone,
                    "path_isomorphism": verdict.cond3_path_isomorphism,
                    "path_cover": verdict.cond4_path_cover,
                    "embedded_copy": verdict.cond5_extension,
                },
                "forking": verdict.is_forking(),
                "extension": verdict.is_extension(),
                "witness": witness_labels,
                "violations": verdict.violations,
            }));
            Ok(if verdict.is_forking() { 0 } else { 1 })
        }
        Command::Generate {
            min,
            max,
            weights,
            seed,
            name,
        } => {
            let config = GeneratorConfig {
                min_nodes: min,
                max_nodes: max,
                child_weights: weights,
                seed,
            };
            let t = generate::random_tree(&config).map_err(|e| e.to_string())?;
            emit(&TreeDocument::from_forest(&t, name.as_deref()));
            Ok(0)
        }
        Command::Suite {
            props,
            samples,
            seed,
            list,
        } => {
            if list {
                let rows: Vec<_> = suite::propositions()
                    .iter()
                    .map(|p| {
                        json!({
                            "id": p.id,
                            "statement": p.statement,
                            "max_nodes": p.max_nodes,
                        })
                    })
                    .collect();
                emit(&rows);
                return Ok(0);
            }
            let report = suite::run_suite(&props, samples, seed).map_err(|e| e.to_string())?;
            emit(&report);
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Dot { file, name } => {
            let document = load_doc(&file)?;
            let f = document.to_forest().map_err(|e| e.to_string())?;
            let graph_name = name
                .or(document.name)
                .unwrap_or_else(|| "tree".to_string());
            write_out(&dot::emit_dot(&f, &graph_name));
            Ok(0)
        }
    }
}
