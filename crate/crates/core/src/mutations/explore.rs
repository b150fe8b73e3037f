//! Breadth-first exploration of the realisable chirotopes of one graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::pins::pin_map;
use super::rank_one::mutations;
use super::realize::{realize, SearchBudget};
use crate::chirotope::{Basis, Chirotope, SignMap};
use crate::error::{Result, TlnError};
use crate::exact::Sign;
use crate::fixed_points::{fp_chirotope, SupportFamily};
use crate::network::{Digraph, Network};
use crate::sampling::random_network_with_graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Realizability {
    Yes,
    /// The flip contradicts a sign forced by the class or the graph.
    No,
    /// The search ran out of budget.
    Unknown,
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realizability::Yes => "yes",
            Realizability::No => "no",
            Realizability::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub basis: Basis,
    pub realizable: Realizability,
    pub witness: Option<Network>,
}

#[derive(Clone, Debug)]
pub struct ChirotopeNode {
    pub chirotope: Chirotope,
    pub witness: Network,
    pub fp: SupportFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlipEdge {
    pub a: usize,
    pub b: usize,
    pub basis: Basis,
}

/// A flip that passed the mutation test but was not realised within budget.
#[derive(Clone, Debug)]
pub struct UnknownNeighbor {
    pub from: usize,
    pub basis: Basis,
    pub chirotope: Chirotope,
}

#[derive(Clone, Debug)]
pub struct MutationGraph {
    pub graph: Digraph,
    pub nodes: Vec<ChirotopeNode>,
    pub edges: Vec<FlipEdge>,
    pub unknown: Vec<UnknownNeighbor>,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct ExploreOptions {
    pub seed: u64,
    pub budget: SearchBudget,
    pub max_nodes: usize,
    pub seed_tries: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        Self { seed: 0, budget: SearchBudget::default(), max_nodes: 5_000, seed_tries: 10_000 }
    }
}

fn node(chirotope: Chirotope, witness: Network) -> Result<ChirotopeNode> {
    let fp = fp_chirotope(&chirotope)?;
    Ok(ChirotopeNode { chirotope, witness, fp })
}

/// Deterministic per-task stream, independent of scheduling.
pub(crate) fn stream(seed: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(a.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ b);
    rng
}

impl MutationGraph {
    fn empty(graph: Digraph) -> Self {
        Self { graph, nodes: Vec::new(), edges: Vec::new(), unknown: Vec::new(), evaluations: 0 }
    }

    /// Graph on given networks, joined wherever two chirotopes differ in one basis.
    /// All networks must share a dimension; they need not share a graph.
    pub fn from_networks(nets: &[Network]) -> Result<Self> {
        let first = nets.first().ok_or_else(|| TlnError::Dimension("no networks".into()))?;
        let mut mg = Self::empty(first.graph()?);
        let mut seen = HashMap::new();
        for net in nets {
            let chi = Chirotope::of(net);
            if seen.contains_key(&chi) {
                continue;
            }
            seen.insert(chi.clone(), mg.nodes.len());
            mg.nodes.push(node(chi, net.clone())?);
        }
        for a in 0..mg.nodes.len() {
            for b in a + 1..mg.nodes.len() {
                if let [basis] = mg.nodes[a].chirotope.diff(&mg.nodes[b].chirotope)[..] {
                    mg.edges.push(FlipEdge { a, b, basis });
                }
            }
        }
        Ok(mg)
    }

    pub fn index_of(&self, chi: &Chirotope) -> Option<usize> {
        self.nodes.iter().position(|n| n.chirotope == *chi)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Distinct FP sets over all nodes.
    pub fn regimes(&self) -> Vec<SupportFamily> {
        let mut out: Vec<SupportFamily> = self.nodes.iter().map(|n| n.fp.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Adds a realised chirotope as a further BFS root (no-op if already present).
    pub fn add_root(&mut self, witness: &Network, opts: &ExploreOptions) -> Result<usize> {
        let chi = Chirotope::of(witness);
        if let Some(i) = self.index_of(&chi) {
            return Ok(i);
        }
        let root = self.nodes.len();
        self.unknown.retain(|u| u.chirotope != chi);
        self.nodes.push(node(chi, witness.clone())?);
        self.expand_from(root, opts)?;
        Ok(root)
    }

    fn expand_from(&mut self, root: usize, opts: &ExploreOptions) -> Result<()> {
        let pins = pin_map(&self.graph)?;
        let mut index: HashMap<Chirotope, usize> =
            self.nodes.iter().enumerate().map(|(i, n)| (n.chirotope.clone(), i)).collect();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let chi = self.nodes[u].chirotope.clone();
            let witness = self.nodes[u].witness.clone();
            let candidates: Vec<Basis> =
                mutations(&chi)?.into_iter().filter(|b| !pins.contains_key(b)).collect();
            let mut todo = Vec::new();
            for b in candidates {
                let next = chi.flipped(b);
                match index.get(&next) {
                    Some(&v) => {
                        if !self.edges.iter().any(|e| (e.a, e.b) == (u.min(v), u.max(v))) {
                            self.edges.push(FlipEdge { a: u.min(v), b: u.max(v), basis: b });
                        }
                    }
                    None => todo.push((b, next)),
                }
            }
            let graph = &self.graph;
            let found: Vec<(Basis, Chirotope, Option<Network>, usize)> = todo
                .into_par_iter()
                .map(|(b, next)| {
                    let mut rng = stream(opts.seed, u as u64, b.0 as u64);
                    let r = realize(&next, graph, &witness, &mut rng, opts.budget);
                    (b, next, r.witness, r.evaluations)
                })
                .collect();
            for (b, next, w, evals) in found {
                self.evaluations += evals;
                // may have been added by an earlier sibling in this batch
                if let Some(&v) = index.get(&next) {
                    self.edges.push(FlipEdge { a: u.min(v), b: u.max(v), basis: b });
                    continue;
                }
                match w {
                    Some(w) if self.nodes.len() < opts.max_nodes => {
                        let v = self.nodes.len();
                        self.unknown.retain(|x| x.chirotope != next);
                        index.insert(next.clone(), v);
                        self.nodes.push(node(next, w)?);
                        self.edges.push(FlipEdge { a: u, b: v, basis: b });
                        queue.push_back(v);
                    }
                    _ => {
                        if !self.unknown.iter().any(|x| x.chirotope == next) {
                            self.unknown.push(UnknownNeighbor { from: u, basis: b, chirotope: next });
                        }
                    }
                }
            }
        }
        self.edges.sort();
        self.edges.dedup();
        Ok(())
    }
}

/// Samples a seed network with graph `g` and explores its realisable mutations.
pub fn mutation_graph(g: &Digraph, opts: &ExploreOptions) -> Result<MutationGraph> {
    if g.n() != 3 {
        return Err(TlnError::Unsupported(format!("exploration is implemented for n = 3, got n = {}", g.n())));
    }
    let mut rng = stream(opts.seed, u64::MAX, 0);
    let mut seed = None;
    for _ in 0..opts.seed_tries {
        let net = random_network_with_graph(&mut rng, g, opts.seed_tries)?;
        if Chirotope::of(&net).is_simplicial() {
            seed = Some(net);
            break;
        }
    }
    let seed = seed.ok_or_else(|| TlnError::SearchExhausted(format!("no simplicial seed for graph {g}")))?;
    mutation_graph_from(&seed, opts)
}

/// Exploration rooted at a given simplicial network.
pub fn mutation_graph_from(seed: &Network, opts: &ExploreOptions) -> Result<MutationGraph> {
    let chi = Chirotope::of(seed);
    if !chi.is_simplicial() {
        return Err(TlnError::NotSimplicial);
    }
    let mut mg = MutationGraph::empty(seed.graph()?);
    mg.nodes.push(node(chi, seed.clone())?);
    mg.expand_from(0, opts)?;
    Ok(mg)
}

#[derive(Clone, Debug)]
pub struct BasisStatus {
    pub basis: Basis,
    pub sign: Sign,
    pub mutation: bool,
    pub pinned: Option<Sign>,
    /// Filled for mutations when a realisation search was requested.
    pub flip: Option<Mutation>,
}

/// Every basis of a network's chirotope with its mutation status and pin. With
/// `search`, each unpinned mutation is also handed to the realisation search.
pub fn classify_mutations(net: &Network, search: Option<&ExploreOptions>) -> Result<Vec<BasisStatus>> {
    let chi = Chirotope::of(net);
    let pins = if net.n() == 3 { pin_map(&net.graph()?)? } else { Default::default() };
    let muts = mutations(&chi)?;
    let g = net.graph()?;
    chi.bases()
        .into_par_iter()
        .map(|basis| {
            let mutation = muts.contains(&basis);
            let pinned = pins.get(&basis).copied();
            let flip = match (mutation, pinned, search) {
                (true, Some(_), _) => Some(Mutation { basis, realizable: Realizability::No, witness: None }),
                (true, None, Some(opts)) => {
                    let mut rng = stream(opts.seed, u64::MAX - 1, basis.0 as u64);
                    let r = realize(&chi.flipped(basis), &g, net, &mut rng, opts.budget);
                    let realizable = if r.witness.is_some() { Realizability::Yes } else { Realizability::Unknown };
                    Some(Mutation { basis, realizable, witness: r.witness })
                }
                _ => None,
            };
            Ok(BasisStatus { basis, sign: chi.base_sign(basis), mutation, pinned, flip })
        })
        .collect()
}
