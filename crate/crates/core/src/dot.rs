//! Graphviz output. Host nodes of models are labelled with their id and
//! cover, so `x_i`/`y_i` nodes show which vertices pass through them.

use std::fmt::Write as _;

use crate::cert::WeightedLeafRoot;
use crate::graph::Graph;
use crate::leafroot::LeafRoot;
use crate::model::{RSModel, SubtreeModel};
use crate::tree::Tree;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(u), quote(v));
    }
    out.push_str("}\n");
    out
}

fn tree_body(out: &mut String, t: &Tree, label: impl Fn(&str) -> String) {
    for x in t.nodes() {
        let _ = writeln!(out, "  {} [label={}];", quote(x), quote(&label(x)));
    }
    for (u, v) in t.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(u), quote(v));
    }
}

pub fn tree_to_dot(t: &Tree) -> String {
    let mut out = String::from("graph T {\n");
    tree_body(&mut out, t, str::to_string);
    out.push_str("}\n");
    out
}

pub fn subtree_model_to_dot(m: &SubtreeModel) -> String {
    let mut out = String::from("graph T {\n  node [shape=box];\n");
    tree_body(&mut out, m.host(), |x| {
        let cover = m.cover(x).unwrap_or_default();
        let names: Vec<&str> = cover.iter().map(String::as_str).collect();
        format!("{x}\n{{{}}}", names.join(","))
    });
    out.push_str("}\n");
    out
}

pub fn rs_model_to_dot(m: &RSModel) -> String {
    let expanded = m.expand();
    let mut out = String::from("graph T {\n  node [shape=box];\n");
    tree_body(&mut out, m.host(), |x| {
        let cover = expanded.cover(x).unwrap_or_default();
        let names: Vec<&str> = cover.iter().map(String::as_str).collect();
        let centered: Vec<String> = m
            .balls()
            .filter(|(_, c, _)| *c == x)
            .map(|(v, _, r)| format!("{v}:{r}"))
            .collect();
        if centered.is_empty() {
            format!("{x}\n{{{}}}", names.join(","))
        } else {
            format!("{x}\n{{{}}}\ncenter {}", names.join(","), centered.join(" "))
        }
    });
    out.push_str("}\n");
    out
}

pub fn leafroot_to_dot(r: &LeafRoot) -> String {
    let mut out = format!("graph T {{\n  label={};\n", quote(&format!("k = {}", r.k())));
    let names: std::collections::BTreeMap<&str, &str> = r.placement().map(|(v, x)| (x, v)).collect();
    tree_body(&mut out, r.host(), |x| match names.get(x) {
        Some(v) => format!("{x}\n{v}"),
        None => x.to_string(),
    });
    out.push_str("}\n");
    out
}

pub fn weighted_leafroot_to_dot(w: &WeightedLeafRoot) -> String {
    let mut out = format!("graph T {{\n  label={};\n", quote(&format!("margin = {}", w.margin())));
    let names: std::collections::BTreeMap<&str, &str> = w
        .placement()
        .iter()
        .map(|(v, x)| (x.as_str(), v.as_str()))
        .collect();
    for x in w.host().nodes() {
        let label = match names.get(x) {
            Some(v) => format!("{x}\n{v}"),
            None => x.to_string(),
        };
        let _ = writeln!(out, "  {} [label={}];", quote(x), quote(&label));
    }
    for ((u, v), weight) in w.weights() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(u),
            quote(v),
            quote(&weight.to_string())
        );
    }
    out.push_str("}\n");
    out
}
