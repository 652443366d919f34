use thiserror::Error;

use crate::network::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} names vertex {vertex}, but the graph has {vertex_count} vertices")]
    UnknownVertex {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("label {label} is assigned to more than one edge")]
    DuplicateLabel { label: usize },
    #[error("edge {edge} has no label")]
    MissingEdge { edge: EdgeId },
    #[error("edge {edge} is labeled more than once")]
    EdgeLabeledTwice { edge: EdgeId },
    #[error("edge {edge} does not exist (the graph has {edge_count} edges)")]
    UnknownEdge { edge: EdgeId, edge_count: usize },
    #[error("label {label} on edge {edge} lies outside 1..={max}")]
    LabelOutOfRange {
        edge: EdgeId,
        label: usize,
        max: usize,
    },
    #[error("times must be finite and pairwise distinct")]
    InvalidTimes,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{what} is {value}, which exceeds the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("invalid family spec `{spec}`: {reason}")]
    InvalidFamily { spec: String, reason: String },
    #[error("graph has no central edge splitting it into two sides")]
    NoCentralEdge,
    #[error("networks are not defined on the same graph")]
    GraphMismatch,
    #[error("networks are not temporally isomorphic")]
    NotTemporallyIsomorphic,
    #[error("sequences have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("sequences have different numbers of zeros ({left} and {right})")]
    PopulationMismatch { left: usize, right: usize },
    #[error("formula undefined for {0}")]
    OutsideFormulaDomain(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
