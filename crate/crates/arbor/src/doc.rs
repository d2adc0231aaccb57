//! The on-disk tree format: a small JSON document listing nodes and
//! parent-child edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};

/// ```json
/// {
///   "name": "y_tree",
///   "nodes": ["t", "u", "v", "w"],
///   "edges": [["t", "u"], ["u", "v"], ["u", "w"]]
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl TreeDocument {
    /// Snapshot of a forest, with nodes and edges in label order.
    pub fn from_forest(f: &Forest, name: Option<&str>) -> TreeDocument {
        let mut edges: Vec<(String, String)> = f
            .edges()
            .into_iter()
            .map(|(p, c)| (f.label(p).to_string(), f.label(c).to_string()))
            .collect();
        edges.sort();
        TreeDocument {
            name: name.map(String::from),
            nodes: f.ids().map(|v| f.label(v).to_string()).collect(),
            edges,
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_forest(&self) -> Result<Forest> {
        Forest::build(self.nodes.clone(), self.edges.clone())
    }

    pub fn to_tree(&self) -> Result<Tree> {
        Tree::new(self.to_forest()?)
    }
}

pub fn parse_document(json: &str) -> Result<TreeDocument> {
    serde_json::from_str(json).map_err(|e| Error::SchemaError(e.to_string()))
}

pub fn serialize_document(doc: &TreeDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents are plain data");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_round_trip() {
        let doc = TreeDocument {
            name: Some("y_tree".into()),
            nodes: ["t", "u", "v", "w"].map(String::from).to_vec(),
            edges: vec![
                ("t".into(), "u".into()),
                ("u".into(), "v".into()),
                ("u".into(), "w".into()),
            ],
            metadata: BTreeMap::new(),
        };
        assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc);
        let tree = doc.to_tree().unwrap();
        assert_eq!(TreeDocument::from_forest(&tree, doc.name.as_deref()), doc);
    }

    #[test]
    fn unknown_fields_are_schema_errors() {
        let err = parse_document(r#"{"nodes": [], "edges": [], "color": "red"}"#).unwrap_err();
        assert!(matches!(err, Error::SchemaError(_)));
        assert!(parse_document("{").is_err());
    }

    #[test]
    fn bad_structure_surfaces_as_build_errors() {
        let doc = parse_document(r#"{"nodes": ["a"], "edges": [["a", "b"]]}"#).unwrap();
        assert_eq!(doc.to_forest().unwrap_err(), Error::UnknownEndpoint("b".into()));
    }
}
