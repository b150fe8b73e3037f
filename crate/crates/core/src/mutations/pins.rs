//! Signs forced by the competitive class and the graph, for three neurons.

use std::collections::BTreeMap;
use std::fmt;

use crate::chirotope::{s_tuple, Basis, Element, SIndex};
use crate::error::{Result, TlnError};
use crate::exact::{permutation_parity, sort_with_parity, Sign};
use crate::fixed_points::Support;
use crate::network::{Digraph, Network};

/// A basis whose sign is fixed for every network of the class with a given graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pin {
    pub basis: Basis,
    pub sign: Sign,
    pub reason: String,
}

fn require_three(g: &Digraph) -> Result<()> {
    if g.n() != 3 {
        return Err(TlnError::Unsupported(format!("sign pins are tabulated for n = 3, got n = {}", g.n())));
    }
    Ok(())
}

/// Ordered triples of distinct nodes in lexicographic order.
pub fn triples() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                if i != j && j != k && i != k {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

fn parity(i: usize, j: usize, k: usize) -> Sign {
    permutation_parity(&[i, j, k]).expect("distinct")
}

fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

/// Base sign implied by a value sign on an ordered tuple.
fn pin(tuple: &[usize], value: Sign, reason: String) -> Pin {
    let mut sorted = tuple.to_vec();
    let p = sort_with_parity(&mut sorted);
    Pin { basis: Basis::from_indices(&sorted), sign: p * value, reason }
}

fn idx(el: Element) -> usize {
    el.index(3)
}

/// Bases whose sign is forced by `W < 0`, `b > 0` and the graph, including the
/// separation pins on `det(e_i,e_j,h_i,h_j)`.
pub fn pinned_bases(g: &Digraph) -> Result<Vec<Pin>> {
    require_three(g)?;
    let mut pins = Vec::new();
    pins.push(pin(&s_tuple(3, Support::EMPTY, SIndex::Inf), Sign::Pos, "s^∅_∞ = 1".into()));
    for i in 0..3 {
        let si = Support::from_indices(&[i]);
        pins.push(pin(&s_tuple(3, si, SIndex::Inf), Sign::Neg, format!("s^{}_∞ = -1", i + 1)));
        pins.push(pin(&s_tuple(3, si, SIndex::Neuron(i)), Sign::Neg, format!("s^{0}_{0} = -b{0}", i + 1)));
    }
    for i in 0..3 {
        for k in (0..3).filter(|&k| k != i) {
            let j = third(i, k);
            let t = [idx(Element::E(i)), idx(Element::H(i)), idx(Element::E(k)), idx(Element::Inf)];
            pins.push(pin(&t, -parity(i, j, k), format!("det(e{},h{},e{},e∞) ∝ W{}{}", i + 1, i + 1, k + 1, i + 1, j + 1)));
        }
    }
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            let sij = Support::from_indices(&[i, j]);
            let s = if g.has_edge(i, j) { Sign::Pos } else { Sign::Neg };
            let arrow = if g.has_edge(i, j) { "→" } else { "↛" };
            pins.push(pin(
                &s_tuple(3, sij, SIndex::Neuron(j)),
                s,
                format!("s^{}{}_{}: {}{arrow}{}", i.min(j) + 1, i.max(j) + 1, j + 1, i + 1, j + 1),
            ));
        }
    }
    for entry in separation_pins(g) {
        let (i, j, k) = (entry.i, entry.j, entry.k);
        let t = [idx(Element::E(i)), idx(Element::E(j)), idx(Element::H(i)), idx(Element::H(j))];
        pins.push(pin(
            &t,
            parity(i, j, k) * entry.sign,
            format!("Δ^{}{}_{}: {} separates {} from {}", i + 1, j + 1, k + 1, entry.sep.0 + 1, entry.sep.1 + 1, entry.sep.2 + 1),
        ));
    }
    Ok(pins)
}

struct SepPin {
    i: usize,
    j: usize,
    k: usize,
    sign: Sign,
    sep: (usize, usize, usize),
}

fn separation_pins(g: &Digraph) -> Vec<SepPin> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let k = third(i, j);
            if g.separates(k, i, j) {
                out.push(SepPin { i, j, k, sign: Sign::Pos, sep: (k, i, j) });
            } else if g.separates(k, j, i) {
                out.push(SepPin { i, j, k, sign: Sign::Neg, sep: (k, j, i) });
            }
        }
    }
    out
}

/// Pinned bases as a lookup table.
pub fn pin_map(g: &Digraph) -> Result<BTreeMap<Basis, Sign>> {
    Ok(pinned_bases(g)?.into_iter().map(|p| (p.basis, p.sign)).collect())
}

/// One row of a separation profile: does `k` separate `i` from `j`, and the sign of `Δ^{ij}_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub separates: bool,
    pub delta: Sign,
}

impl SeparationEntry {
    /// A separation forces `Δ^{ij}_k > 0`.
    pub fn consistent(&self) -> bool {
        !self.separates || self.delta == Sign::Pos
    }
}

impl fmt::Display for SeparationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = (self.i + 1, self.j + 1, self.k + 1);
        let rel = if self.separates { "separates" } else { "does not separate" };
        write!(f, "{k} {rel} {i} from {j}; Δ^{i}{j}_{k} {}", self.delta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationProfile {
    pub graph: Digraph,
    pub entries: Vec<SeparationEntry>,
}

impl SeparationProfile {
    pub fn violations(&self) -> Vec<&SeparationEntry> {
        self.entries.iter().filter(|e| !e.consistent()).collect()
    }
}

/// Every ordered triple `(i, j, k)` of distinct nodes.
pub fn separation_profile(net: &Network) -> Result<SeparationProfile> {
    let graph = net.graph()?;
    let n = net.n();
    let mut entries = Vec::new();
    for k in 0..n {
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..n).filter(|&j| j != k && j != i) {
                entries.push(SeparationEntry {
                    i,
                    j,
                    k,
                    separates: graph.separates(k, i, j),
                    delta: Sign::of(&net.delta(i, j, k)?),
                });
            }
        }
    }
    Ok(SeparationProfile { graph, entries })
}

/// Whether the graph allows `s^{ijk}_i` to change sign: `j` and `k` are bidirected
/// or non-adjacent, and at least one of them separates no pair.
pub fn graph_allows_flip(g: &Digraph, i: usize, j: usize, k: usize) -> bool {
    debug_assert!(i != j && j != k && i != k);
    (g.bidirected(j, k) || g.non_adjacent(j, k)) && (!g.is_separating(j) || !g.is_separating(k))
}
