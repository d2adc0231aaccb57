//! Graphviz output, for eyeballing trees.

use crate::forest::Forest;

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Emits a `digraph` with one line per node and one per edge, both in
/// label order.
pub fn emit_dot(f: &Forest, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    out.push_str("  rankdir=TB;\n  node [shape=circle];\n");
    for v in f.ids() {
        out.push_str(&format!("  {};\n", quote(f.label(v))));
    }
    for (p, c) in f.edges() {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote(f.label(p)),
            quote(f.label(c))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_output_is_stable() {
        let f = Forest::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert_eq!(
            emit_dot(&f, "demo"),
            "digraph \"demo\" {\n  rankdir=TB;\n  node [shape=circle];\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -> \"b\";\n  \"a\" -> \"c\";\n}\n"
        );
    }

    #[test]
    fn quotes_are_escaped() {
        let f = Forest::new(&["a\"b"], &[]).unwrap();
        assert!(emit_dot(&f, "q").contains("\"a\\\"b\""));
    }
}
