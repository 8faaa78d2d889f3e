//! DOT export of the skeleton-matrix graph.

use std::fmt::Write as _;

use crate::binmat::{ClassDecomposition, Digraph};
use crate::skeleton::escape;
use crate::skeleton_matrix::SkeletonMatrix;
use crate::word::Alphabet;

const CLASS_COLORS: &[&str] = &["red", "blue", "darkgreen", "orange", "purple", "brown"];

/// Renders the skeleton matrix as a directed graph. Each closed class gets
/// its own color (the first is red); transient states are grey.
pub fn skeleton_matrix_dot(
    alphabet: &Alphabet,
    matrix: &SkeletonMatrix,
    dec: &ClassDecomposition,
) -> String {
    let labels = matrix.labels(alphabet);
    let mut color = vec!["grey"; labels.len()];
    for (i, class) in dec.closed_classes().enumerate() {
        for &v in class {
            color[v] = CLASS_COLORS[i % CLASS_COLORS.len()];
        }
    }
    let mut out = String::from("digraph skeleton_matrix {\n  node [shape=circle, style=filled, fontcolor=white];\n");
    for (v, l) in labels.iter().enumerate() {
        let name = if l.is_empty() { "e" } else { l.as_str() };
        let _ = writeln!(
            out,
            "  s{v} [label=\"{}\", fillcolor={}];",
            escape(name),
            color[v]
        );
    }
    let graph = matrix.graph();
    for u in 0..graph.node_count() {
        for v in graph.successors(u) {
            let edge = if color[u] == "grey" { " [color=grey]" } else { "" };
            let _ = writeln!(out, "  s{u} -> s{v}{edge};");
        }
    }
    out.push_str("}\n");
    out
}
