//! `arbor` studies finite order-theoretic trees: forests and trees presented
//! as strict partial orders, the two branching degrees of their stems, the
//! bridge/condensation quotient, homeomorphy between trees, and the condensed
//! extensions a tree locally resembles.
//!
//! The library is example-driven. Each major capability has a runnable
//! walkthrough under `examples/`:
//!
//! ```text
//! cargo run --example build_and_query      # construction, regions, paths, roles
//! cargo run --example branching_degrees    # undividedness, branching-1/-2, bars
//! cargo run --example condensation         # bridges, quotients, DOT output
//! cargo run --example homeomorphy          # refinements, abstractions, witnesses
//! cargo run --example condensed_extension  # full/refined extensions, lifting
//! cargo run --example forking_verification # the five forking conditions
//! cargo run --example random_exploration   # generator plus property suite
//! ```
//!
//! A thin `arbor` binary exposes the same operations over JSON documents; see
//! the README for the schema and subcommands.

pub mod branching;
pub mod condense;
pub mod doc;
pub mod dot;
mod error;
pub mod forest;
pub mod forking;
pub mod generate;
pub mod homeo;
pub mod subset;
pub mod suite;

pub use error::{Error, Result};
pub use forest::{Component, Forest, NodeId, NodeSet, RegionKind, Tree};
pub use subset::{classify_subset, SubsetRole};
