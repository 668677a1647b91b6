//! graphsym: finite graph symmetry toolkit.
//!
//! The crate generates structured graph families (subset graphs, trees of
//! cliques, classical families), computes their distance structure, searches
//! their automorphism groups, certifies primitivity through block systems,
//! and cross-checks the structural verdicts over a pinned corpus.

#![forbid(unsafe_code)]

pub mod aut;
pub mod blocks;
pub mod edgelist;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod perm;

pub use aut::{
    automorphism_generators, automorphism_generators_with, is_distance_transitive,
    is_distance_transitive_with, is_vertex_transitive, AutConfig,
};
pub use blocks::{
    components_as_blocks, is_primitive_graph, is_primitive_graph_with, is_primitive_group,
    minimal_block, nontrivial_block_systems, verify_block_system, BlockSystem, GraphPrimitivity,
    GroupPrimitivity,
};
pub use error::{Error, Result};
pub use graph::{Bipartiteness, DistanceMatrix, DistanceSequence, Graph};
pub use harness::{
    analyze_graph, smith_check, smith_check_with, AnalysisOptions, AnalysisReport, CorpusEntry,
    CorpusReport, SmithVerdict,
};
pub use perm::{is_automorphism, PermGroup, Permutation};
