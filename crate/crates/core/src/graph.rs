//! Small labeled directed graphs with DOT output.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(labels: Vec<String>, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Digraph { labels, edges }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Edges as label pairs, sorted.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }

    /// Whether `relabel` maps nodes bijectively onto `other`'s nodes and
    /// carries edges exactly onto edges.
    pub fn isomorphic_under(&self, other: &Digraph, relabel: impl Fn(&str) -> String) -> bool {
        if self.node_count() != other.node_count() {
            return false;
        }
        let index: BTreeMap<&str, usize> = other.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut map = Vec::with_capacity(self.labels.len());
        let mut seen = BTreeSet::new();
        for l in &self.labels {
            match index.get(relabel(l).as_str()) {
                Some(&j) if seen.insert(j) => map.push(j),
                _ => return false,
            }
        }
        let mapped: BTreeSet<(usize, usize)> = self.edges.iter().map(|&(a, b)| (map[a], map[b])).collect();
        let theirs: BTreeSet<(usize, usize)> = other.edges.iter().copied().collect();
        mapped == theirs
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n", escape(name));
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(l)));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
