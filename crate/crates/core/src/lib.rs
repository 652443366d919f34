//! Isotemporal classes of serially labeled temporal networks.
//!
//! A temporal network here is a pseudograph whose edges carry the distinct
//! times `1..=t`. Two networks are temporally isomorphic when a graph
//! isomorphism carries time-respecting paths onto time-respecting paths;
//! this crate enumerates the resulting classes, checks closed-form counts
//! for diasters and related pseudographs against exhaustive enumeration,
//! and builds explicit swap sequences between isomorphic labelings.

pub mod classes;
pub mod error;
pub mod families;
pub mod formulas;
pub mod iso;
pub mod network;
pub mod paths;
pub mod verify;

pub use classes::{
    brute_force_classes, compare_partitions, swap_closure_classes, swap_neighbors, ClassPartition,
    ComparisonReport, PartitionMethod,
};
pub use error::{Error, Result};
pub use families::{
    binary_swap_sequence, check_transfer_conditions, diaster_signature, diaster_swap_permutation,
    generate, DiasterSignature, FamilySpec, PartKind, StemPart, SwapScript, SwapStep,
    TransferReport,
};
pub use formulas::{
    diaster_formula, lattice_count, stem_formula, trivial_family_count, CountBasis, CountResult,
};
pub use iso::{
    canonical_labeling, count_distinct_labelings, edge_automorphism_group, edge_isomorphisms,
    is_label_isomorphic, is_temporal_isomorphic, EdgeIsomorphism, EdgePermutationGroup,
};
pub use network::{
    parse_network, serialize_network, AdjacencyRelation, EdgeId, Pseudograph, TemporalNetwork,
    VertexId,
};
pub use paths::{max_temporal_path_length, temporal_paths, TemporalPath};
