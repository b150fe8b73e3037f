//! Graphviz output for mutation and bifurcation graphs.

use std::fmt::Write;
use std::hash::Hasher;

use fnv::FnvHasher;

use crate::chirotope::Chirotope;
use crate::mutations::{BifurcationGraph, MutationGraph};

/// Stable 64-bit key of a chirotope's base-sign string.
pub fn chirotope_key(chi: &Chirotope) -> String {
    let mut h = FnvHasher::default();
    h.write(chi.sign_string().as_bytes());
    format!("c{:016x}", h.finish())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn mutation_dot(mg: &MutationGraph) -> String {
    let n = mg.graph.n();
    let mut out = String::new();
    writeln!(out, "graph mutation {{").unwrap();
    writeln!(out, "  label={};", quote(&format!("mutation graph of {}", mg.graph))).unwrap();
    let keys: Vec<String> = mg.nodes.iter().map(|v| chirotope_key(&v.chirotope)).collect();
    let mut order: Vec<usize> = (0..mg.nodes.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    for &v in &order {
        writeln!(out, "  {} [label={}];", keys[v], quote(&mg.nodes[v].fp.to_string())).unwrap();
    }
    let mut edges: Vec<(&str, &str, String)> = mg
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (keys[e.a].as_str(), keys[e.b].as_str());
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            (a, b, e.basis.name(n))
        })
        .collect();
    edges.sort();
    for (a, b, label) in edges {
        writeln!(out, "  {a} -- {b} [label={}];", quote(&label)).unwrap();
    }
    let mut unknown: Vec<String> = mg
        .unknown
        .iter()
        .map(|u| format!("  // unknown {} from {} via {}", chirotope_key(&u.chirotope), keys[u.from], u.basis.name(n)))
        .collect();
    unknown.sort();
    for line in unknown {
        writeln!(out, "{line}").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn bifurcation_dot(bg: &BifurcationGraph, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph bifurcation {{").unwrap();
    writeln!(out, "  label={};", quote(title)).unwrap();
    // FP sets can repeat across components, so keys are positional after sorting
    let mut order: Vec<usize> = (0..bg.nodes.len()).collect();
    order.sort_by(|&a, &b| bg.nodes[a].fp.cmp(&bg.nodes[b].fp).then(bg.nodes[a].members.cmp(&bg.nodes[b].members)));
    let mut key = vec![0; bg.nodes.len()];
    for (k, &v) in order.iter().enumerate() {
        key[v] = k;
        writeln!(out, "  r{k} [label={}];", quote(&bg.nodes[v].fp.to_string())).unwrap();
    }
    let mut edges: Vec<(usize, usize, String)> = bg
        .edges
        .iter()
        .map(|e| {
            let (a, b, change) =
                if key[e.a] <= key[e.b] { (key[e.a], key[e.b], e.change.clone()) } else { (key[e.b], key[e.a], e.change.reversed()) };
            (a, b, format!("{} ({})", change, change.kind()))
        })
        .collect();
    edges.sort();
    for (a, b, label) in edges {
        writeln!(out, "  r{a} -- r{b} [label={}];", quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}
