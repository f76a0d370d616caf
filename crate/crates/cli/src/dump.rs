//! Deterministic text dumps of feature structures and c-structures.

use std::fmt::{Display, Write};

use thfsg_core::cstructure::{CStructure, Label};
use thfsg_core::fs::FeatureStructure;

use crate::scan::quote;

/// `node`, `name`, `edge` and `value` lines of the canonical form of `fs`,
/// grouped by node in canonical order.
pub fn write_fs<N: Ord + Clone + Display>(fs: &FeatureStructure<N>) -> String {
    let fs = fs.canonical_form();
    let mut out = String::new();
    for node in fs.nodes() {
        let _ = writeln!(out, "node {node}");
        for (name, _) in fs.names().filter(|&(_, at)| at == node) {
            let _ = writeln!(out, "name {name} -> {node}");
        }
        for (attr, to) in fs.edges_from(node) {
            let _ = writeln!(out, "edge {node} {attr} {to}");
        }
        if let Some(v) = fs.value(node) {
            let _ = writeln!(out, "value {node} #{v}");
        }
    }
    out
}

/// One line per address in lexicographic order: address, label and, below
/// the root, the annotation set.
pub fn write_cstructure(cs: &CStructure) -> String {
    let mut out = String::new();
    for (address, node) in cs.iter() {
        let label = match &node.label {
            Label::Category(c) => c.to_string(),
            Label::Terminal(t) => quote(t),
            Label::Empty => "\"\"".to_string(),
        };
        let _ = write!(out, "{address} {label}");
        if let Some(set) = &node.annotations {
            let _ = write!(out, " {set}");
        }
        out.push('\n');
    }
    out
}
