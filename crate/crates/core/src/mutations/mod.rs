//! Grassmann-Plücker relations, mutations, and the regime graphs built from them.

mod gp;
mod atlas;
mod bifurcation;
mod explore;
mod pins;
mod rank_one;
mod realize;
mod sweep;
mod unlock;

pub use atlas::{atlas, atlas_entry, sample_regimes, AtlasEntry, AtlasOptions, SampleStats};
pub use bifurcation::{
    bifurcation_graph, BifurcationGraph, BifurcationKind, RegimeEdge, RegimeNode, SupportChange,
};
pub use explore::{
    classify_mutations, mutation_graph, mutation_graph_from, BasisStatus, ChirotopeNode, ExploreOptions, FlipEdge, Mutation,
    MutationGraph, Realizability, UnknownNeighbor,
};
pub use gp::{gp_check, gp_relation, gp_signs_consistent, relation_index, satisfies_gp, DetTable, GPTriple, GpReport};
pub use pins::{
    pin_map, pinned_bases, separation_profile, graph_allows_flip, triples, Pin, SeparationEntry, SeparationProfile,
};
pub use rank_one::{is_mutation, is_mutation_by_flip, mutations, rep_matrix, RepMatrix};
pub use realize::{realize, SearchBudget, SearchResult};
pub use sweep::{sweep, SweepEvent};
pub use unlock::{slice_admits_flip, unlock_path, Move, Phase, PhaseKind, UnlockPlan};

#[cfg(test)]
mod tests;
