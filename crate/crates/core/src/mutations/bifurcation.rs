//! Contraction of a mutation graph to its support bifurcations.

use std::collections::BTreeMap;
use std::fmt;

use super::explore::MutationGraph;
use crate::chirotope::Basis;
use crate::fixed_points::{Support, SupportFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BifurcationKind {
    /// `{σ, σ∪i} → ∅` or its reverse.
    Fold,
    /// `{σ} → {σ∪i}` or its reverse.
    Persistent,
    Other,
}

impl fmt::Display for BifurcationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BifurcationKind::Fold => "fold",
            BifurcationKind::Persistent => "persistent",
            BifurcationKind::Other => "other",
        })
    }
}

/// Supports lost and gained when crossing from one regime to the other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportChange {
    pub removed: SupportFamily,
    pub added: SupportFamily,
}

impl SupportChange {
    pub fn between(from: &SupportFamily, to: &SupportFamily) -> Self {
        Self { removed: from.difference(to), added: to.difference(from) }
    }

    pub fn reversed(&self) -> Self {
        Self { removed: self.added.clone(), added: self.removed.clone() }
    }

    /// All supports that change status.
    pub fn touched(&self) -> SupportFamily {
        self.removed.iter().chain(self.added.iter()).collect()
    }

    pub fn kind(&self) -> BifurcationKind {
        let nested = |a: Support, b: Support| a.len() + 1 == b.len() && a.is_subset(b) && !a.is_empty();
        let pair = |f: &SupportFamily| -> Option<(Support, Support)> {
            let v: Vec<Support> = f.iter().collect();
            match v[..] {
                [a, b] => Some((a, b)),
                _ => None,
            }
        };
        let single = |f: &SupportFamily| f.iter().next().filter(|_| f.len() == 1);
        if self.removed.is_empty() || self.added.is_empty() {
            let side = if self.removed.is_empty() { &self.added } else { &self.removed };
            if let Some((a, b)) = pair(side) {
                if nested(a, b) || nested(b, a) {
                    return BifurcationKind::Fold;
                }
            }
        } else if let (Some(a), Some(b)) = (single(&self.removed), single(&self.added)) {
            if nested(a, b) || nested(b, a) {
                return BifurcationKind::Persistent;
            }
        }
        BifurcationKind::Other
    }
}

impl fmt::Display for SupportChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &SupportFamily| if s.is_empty() { "∅".to_string() } else { s.to_string() };
        write!(f, "{}→{}", side(&self.removed), side(&self.added))
    }
}

#[derive(Clone, Debug)]
pub struct RegimeNode {
    pub fp: SupportFamily,
    /// Mutation-graph nodes merged into this one.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RegimeEdge {
    pub a: usize,
    pub b: usize,
    /// Oriented from `a` to `b`.
    pub change: SupportChange,
    /// Flipped bases of the mutation-graph edges behind this one.
    pub bases: Vec<Basis>,
}

#[derive(Clone, Debug)]
pub struct BifurcationGraph {
    pub nodes: Vec<RegimeNode>,
    pub edges: Vec<RegimeEdge>,
}

impl BifurcationGraph {
    /// Whether some edge realises `change` in either direction.
    pub fn has_change(&self, change: &SupportChange) -> bool {
        let rev = change.reversed();
        self.edges.iter().any(|e| e.change == *change || e.change == rev)
    }

    /// Edges leaving the node with FP set `fp`, oriented away from it.
    pub fn changes_from(&self, fp: &SupportFamily) -> Vec<SupportChange> {
        let mut out = Vec::new();
        for e in &self.edges {
            if self.nodes[e.a].fp == *fp {
                out.push(e.change.clone());
            }
            if self.nodes[e.b].fp == *fp {
                out.push(e.change.reversed());
            }
        }
        out
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Merges the endpoints of every edge whose flip leaves FP unchanged.
pub fn bifurcation_graph(mg: &MutationGraph) -> BifurcationGraph {
    let n = mg.nodes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in &mg.edges {
        if mg.nodes[e.a].fp == mg.nodes[e.b].fp {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut comp = BTreeMap::new();
    let mut nodes: Vec<RegimeNode> = Vec::new();
    let mut of = vec![0; n];
    for (v, slot) in of.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        let id = *comp.entry(r).or_insert_with(|| {
            nodes.push(RegimeNode { fp: mg.nodes[r].fp.clone(), members: Vec::new() });
            nodes.len() - 1
        });
        nodes[id].members.push(v);
        *slot = id;
    }
    let mut edges: BTreeMap<(usize, usize), Vec<Basis>> = BTreeMap::new();
    for e in &mg.edges {
        let (a, b) = (of[e.a], of[e.b]);
        if a != b {
            edges.entry((a.min(b), a.max(b))).or_default().push(e.basis);
        }
    }
    let edges = edges
        .into_iter()
        .map(|((a, b), bases)| RegimeEdge { a, b, change: SupportChange::between(&nodes[a].fp, &nodes[b].fp), bases })
        .collect();
    BifurcationGraph { nodes, edges }
}
