//! Regimes of every three-node graph class, by exploration plus dense sampling.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::bifurcation::{bifurcation_graph, BifurcationGraph};
use super::explore::{mutation_graph, stream, ExploreOptions, MutationGraph};
use super::pins::pin_map;
use crate::chirotope::{Chirotope, SignMap};
use crate::error::Result;
use crate::fixed_points::{fp_chirotope, SupportFamily};
use crate::network::{isomorphism_classes, Digraph, Network};
use crate::sampling::random_network_with_graph;

const CHUNK: usize = 1_000;

#[derive(Clone, Copy, Debug)]
pub struct AtlasOptions {
    /// Random networks drawn per graph class.
    pub samples: usize,
    pub explore: ExploreOptions,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        Self { samples: 100_000, explore: ExploreOptions::default() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SampleStats {
    pub drawn: usize,
    /// Some `s^σ_i` or base determinant vanished; excluded from the counts.
    pub degenerate: usize,
    /// Draws whose chirotope contradicts a pinned sign; expected to stay 0.
    pub pin_violations: usize,
    pub regimes: BTreeMap<SupportFamily, usize>,
    /// Distinct chirotopes met, with one witness each.
    pub chirotopes: BTreeMap<Chirotope, Network>,
}

impl SampleStats {
    fn merge(mut self, other: SampleStats) -> Self {
        self.drawn += other.drawn;
        self.degenerate += other.degenerate;
        self.pin_violations += other.pin_violations;
        for (k, v) in other.regimes {
            *self.regimes.entry(k).or_default() += v;
        }
        for (k, v) in other.chirotopes {
            self.chirotopes.entry(k).or_insert(v);
        }
        self
    }
}

/// Draws `count` networks with graph `g` and tallies their FP sets.
pub fn sample_regimes(g: &Digraph, count: usize, seed: u64, class: u64) -> Result<SampleStats> {
    let pins = pin_map(g)?;
    let chunks: Vec<usize> = (0..count.div_ceil(CHUNK)).collect();
    let parts = chunks
        .into_par_iter()
        .map(|c| -> Result<SampleStats> {
            let mut rng = stream(seed, class, c as u64);
            let mut st = SampleStats::default();
            for _ in 0..CHUNK.min(count - c * CHUNK) {
                let net = random_network_with_graph(&mut rng, g, 1_000)?;
                st.drawn += 1;
                let chi = Chirotope::of(&net);
                if pins.iter().any(|(&b, &s)| chi.base_sign(b) != s) {
                    st.pin_violations += 1;
                }
                // simplicial covers every s^σ_i and the graph walls
                if !chi.is_simplicial() {
                    st.degenerate += 1;
                    continue;
                }
                *st.regimes.entry(fp_chirotope(&chi)?).or_default() += 1;
                st.chirotopes.entry(chi).or_insert(net);
            }
            Ok(st)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(SampleStats::default(), SampleStats::merge))
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    /// 1-based position in the class listing.
    pub index: usize,
    pub graph: Digraph,
    pub samples: SampleStats,
    pub mutation_graph: MutationGraph,
    /// Sampled chirotopes the first exploration had not reached; each was explored from.
    pub extra_roots: usize,
    pub bifurcation: BifurcationGraph,
    pub regimes: Vec<SupportFamily>,
}

impl AtlasEntry {
    pub fn robust(&self) -> bool {
        self.regimes.len() == 1
    }
}

impl fmt::Display for AtlasEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mg = &self.mutation_graph;
        writeln!(f, "graph {}: {}", self.index, self.graph)?;
        writeln!(f, "robust: {}", if self.robust() { "yes" } else { "no" })?;
        writeln!(f, "regimes: {}", self.regimes.len())?;
        for r in &self.regimes {
            let explored = mg.nodes.iter().filter(|n| n.fp == *r).count();
            let sampled = self.samples.regimes.get(r).copied().unwrap_or(0);
            writeln!(f, "  {r} chirotopes {explored} samples {sampled}")?;
        }
        writeln!(
            f,
            "mutation graph: {} nodes, {} edges, {} unknown, {}",
            mg.nodes.len(),
            mg.edges.len(),
            mg.unknown.len(),
            if mg.is_connected() { "connected" } else { "disconnected" }
        )?;
        writeln!(f, "bifurcation graph: {} nodes, {} edges", self.bifurcation.nodes.len(), self.bifurcation.edges.len())?;
        for e in &self.bifurcation.edges {
            writeln!(f, "  {} {}", e.change, e.change.kind())?;
        }
        writeln!(
            f,
            "samples: {} drawn, {} degenerate, {} pin violations, {} extra roots",
            self.samples.drawn, self.samples.degenerate, self.samples.pin_violations, self.extra_roots
        )
    }
}

pub fn atlas_entry(index: usize, g: &Digraph, opts: &AtlasOptions) -> Result<AtlasEntry> {
    let mut mg = mutation_graph(g, &opts.explore)?;
    let samples = sample_regimes(g, opts.samples, opts.explore.seed, index as u64)?;
    let mut extra_roots = 0;
    for (chi, w) in &samples.chirotopes {
        if mg.index_of(chi).is_none() {
            mg.add_root(w, &opts.explore)?;
            extra_roots += 1;
        }
    }
    let bifurcation = bifurcation_graph(&mg);
    let mut regimes = mg.regimes();
    regimes.extend(samples.regimes.keys().cloned());
    regimes.sort();
    regimes.dedup();
    Ok(AtlasEntry { index, graph: g.clone(), samples, mutation_graph: mg, extra_roots, bifurcation, regimes })
}

/// One entry per isomorphism class of digraphs on three nodes.
pub fn atlas(opts: &AtlasOptions) -> Result<Vec<AtlasEntry>> {
    isomorphism_classes(3)?.iter().enumerate().map(|(t, g)| atlas_entry(t + 1, g, opts)).collect()
}
