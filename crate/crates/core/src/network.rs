//! Pseudographs, serial temporal labelings and the `.net` text format.
//!
//! A network file looks like
//!
//! ```text
//! vertices: 2
//! edges: 2
//! 0 0 1 2
//! 1 0 1 1
//! ```
//!
//! Each edge line is `<edge-id> <u> <v> <label>`. Edge ids must appear in
//! order starting at 0, vertices are 0-based, and a loop repeats its vertex.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected graph that may contain loops and parallel edges.
///
/// Edges are identified by position, so two parallel edges remain distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pseudograph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Pseudograph {
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (edge, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(Error::UnknownVertex {
                        edge,
                        vertex,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: EdgeId) -> (VertexId, VertexId) {
        self.edges[edge]
    }

    pub fn is_loop(&self, edge: EdgeId) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    pub fn is_incident(&self, edge: EdgeId, vertex: VertexId) -> bool {
        let (u, v) = self.edges[edge];
        u == vertex || v == vertex
    }

    /// Endpoint reached by traversing `edge` starting from `from`.
    pub fn opposite(&self, edge: EdgeId, from: VertexId) -> Option<VertexId> {
        let (u, v) = self.edges[edge];
        if u == from {
            Some(v)
        } else if v == from {
            Some(u)
        } else {
            None
        }
    }

    /// Edges incident to `vertex`, each listed once (loops included).
    pub fn incident_edges(&self, vertex: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(move |&e| self.is_incident(e, vertex))
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, vertex: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| usize::from(u == vertex) + usize::from(v == vertex))
            .sum()
    }

    pub fn loop_count(&self, vertex: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| u == vertex && v == vertex)
            .count()
    }

    /// Number of edges joining `u` and `v` (loops when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a == u && b == v) || (a == v && b == u))
            .count()
    }

    pub fn adjacency(&self) -> AdjacencyRelation {
        let n = self.edges.len();
        let mut bits = vec![false; n * n];
        for e in 0..n {
            for f in (e + 1)..n {
                let (u, v) = self.edges[e];
                if self.is_incident(f, u) || self.is_incident(f, v) {
                    bits[e * n + f] = true;
                    bits[f * n + e] = true;
                }
            }
        }
        AdjacencyRelation {
            edge_count: n,
            bits,
        }
    }
}

/// Symmetric, irreflexive "shares an endpoint" relation between edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyRelation {
    edge_count: usize,
    bits: Vec<bool>,
}

impl AdjacencyRelation {
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        self.bits[e * self.edge_count + f]
    }

    pub fn neighbors(&self, e: EdgeId) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count).filter(move |&f| self.adjacent(e, f))
    }

    pub fn degree(&self, e: EdgeId) -> usize {
        self.neighbors(e).count()
    }
}

/// A pseudograph whose edges carry the distinct times `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalNetwork {
    graph: Pseudograph,
    labels: Vec<usize>,
}

impl TemporalNetwork {
    /// Builds a network from `(edge, label)` pairs covering every edge once.
    pub fn build(graph: Pseudograph, assignments: &[(EdgeId, usize)]) -> Result<Self> {
        let edge_count = graph.edge_count();
        let mut labels = vec![0usize; edge_count];
        for &(edge, label) in assignments {
            if edge >= edge_count {
                return Err(Error::UnknownEdge { edge, edge_count });
            }
            if labels[edge] != 0 {
                return Err(Error::EdgeLabeledTwice { edge });
            }
            if label == 0 || label > edge_count {
                return Err(Error::LabelOutOfRange {
                    edge,
                    label,
                    max: edge_count,
                });
            }
            labels[edge] = label;
        }
        if let Some(edge) = labels.iter().position(|&l| l == 0) {
            return Err(Error::MissingEdge { edge });
        }
        Self::from_labels(graph, labels)
    }

    /// Builds a network from a label vector indexed by edge id.
    pub fn from_labels(graph: Pseudograph, labels: Vec<usize>) -> Result<Self> {
        validate_labels(graph.edge_count(), &labels)?;
        Ok(Self { graph, labels })
    }

    /// Builds a network from arbitrary distinct real times, keeping only their order.
    pub fn from_times(graph: Pseudograph, times: &[f64]) -> Result<Self> {
        if times.len() != graph.edge_count() {
            return Err(Error::MissingEdge {
                edge: times.len().min(graph.edge_count()),
            });
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidTimes);
        }
        let mut order: Vec<EdgeId> = (0..times.len()).collect();
        order.sort_by(|&a, &b| times[a].total_cmp(&times[b]));
        if order.windows(2).any(|w| times[w[0]] == times[w[1]]) {
            return Err(Error::InvalidTimes);
        }
        let mut labels = vec![0; times.len()];
        for (rank, edge) in order.into_iter().enumerate() {
            labels[edge] = rank + 1;
        }
        Ok(Self { graph, labels })
    }

    pub(crate) fn from_labels_unchecked(graph: Pseudograph, labels: Vec<usize>) -> Self {
        debug_assert!(validate_labels(graph.edge_count(), &labels).is_ok());
        Self { graph, labels }
    }

    pub fn graph(&self) -> &Pseudograph {
        &self.graph
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, edge: EdgeId) -> usize {
        self.labels[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Inverse of the labeling: the edge carrying each label, indexed by `label - 1`.
    pub fn edges_by_label(&self) -> Vec<EdgeId> {
        let mut out = vec![0; self.labels.len()];
        for (edge, &label) in self.labels.iter().enumerate() {
            out[label - 1] = edge;
        }
        out
    }

    /// Same graph with a different labeling.
    pub fn relabeled(&self, labels: Vec<usize>) -> Result<Self> {
        Self::from_labels(self.graph.clone(), labels)
    }

    pub fn into_parts(self) -> (Pseudograph, Vec<usize>) {
        (self.graph, self.labels)
    }
}

fn validate_labels(edge_count: usize, labels: &[usize]) -> Result<()> {
    if labels.len() < edge_count {
        return Err(Error::MissingEdge { edge: labels.len() });
    }
    if labels.len() > edge_count {
        return Err(Error::UnknownEdge {
            edge: edge_count,
            edge_count,
        });
    }
    let mut seen = vec![false; edge_count + 1];
    for (edge, &label) in labels.iter().enumerate() {
        if label == 0 || label > edge_count {
            return Err(Error::LabelOutOfRange {
                edge,
                label,
                max: edge_count,
            });
        }
        if seen[label] {
            return Err(Error::DuplicateLabel { label });
        }
        seen[label] = true;
    }
    Ok(())
}

pub fn parse_network(text: &str) -> Result<TemporalNetwork> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let vertex_count = header(lines.next(), "vertices")?;
    let edge_count = header(lines.next(), "edges")?;

    let mut endpoints = Vec::with_capacity(edge_count);
    let mut labels = Vec::with_capacity(edge_count);
    let mut last_line = 0;
    for expected_id in 0..edge_count {
        let Some((line, content)) = lines.next() else {
            return Err(Error::Syntax {
                line: last_line + 1,
                message: format!("expected {edge_count} edge lines, found {expected_id}"),
            });
        };
        last_line = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Syntax {
                line,
                message: format!(
                    "expected `<edge-id> <u> <v> <label>`, found {} fields",
                    fields.len()
                ),
            });
        }
        let mut values = [0usize; 4];
        for (slot, (name, field)) in values
            .iter_mut()
            .zip(["edge id", "u", "v", "label"].iter().zip(&fields))
        {
            *slot = field.parse().map_err(|_| Error::Syntax {
                line,
                message: format!("{name} `{field}` is not a non-negative integer"),
            })?;
        }
        let [id, u, v, label] = values;
        if id != expected_id {
            return Err(Error::Syntax {
                line,
                message: format!("expected edge id {expected_id}, found {id}"),
            });
        }
        endpoints.push((u, v));
        labels.push(label);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Syntax {
            line,
            message: format!("unexpected content after {edge_count} edges"),
        });
    }

    let graph = Pseudograph::new(vertex_count, endpoints)?;
    TemporalNetwork::from_labels(graph, labels)
}

fn header(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let Some((line, content)) = line else {
        return Err(Error::Syntax {
            line: 0,
            message: format!("missing `{key}:` header"),
        });
    };
    let value = content
        .strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix(':'))
        .ok_or_else(|| Error::Syntax {
            line,
            message: format!("expected `{key}: <n>`"),
        })?;
    value.trim().parse().map_err(|_| Error::Syntax {
        line,
        message: format!("`{}` is not a valid {key} count", value.trim()),
    })
}

pub fn serialize_network(network: &TemporalNetwork) -> String {
    network.to_string()
}

impl fmt::Display for TemporalNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.graph.vertex_count())?;
        writeln!(f, "edges: {}", self.graph.edge_count())?;
        for (id, (&(u, v), label)) in self.graph.edges().iter().zip(&self.labels).enumerate() {
            writeln!(f, "{id} {u} {v} {label}")?;
        }
        Ok(())
    }
}

impl FromStr for TemporalNetwork {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_network(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Pseudograph {
        Pseudograph::new(2, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn build_smallest_network() {
        let n = TemporalNetwork::build(single_edge(), &[(0, 1)]).unwrap();
        assert_eq!(n.labels(), &[1]);
    }

    #[test]
    fn build_daisy_with_two_loops() {
        let g = Pseudograph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let n = TemporalNetwork::build(g, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(n.labels(), &[1, 2]);
        assert!(n.graph().is_loop(1));
    }

    #[test]
    fn build_rejects_each_violation_distinctly() {
        assert_eq!(
            TemporalNetwork::build(single_edge(), &[(0, 2)]),
            Err(Error::LabelOutOfRange {
                edge: 0,
                label: 2,
                max: 1
            })
        );
        let path = Pseudograph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            TemporalNetwork::build(path.clone(), &[(0, 1), (1, 1)]),
            Err(Error::DuplicateLabel { label: 1 })
        );
        assert_eq!(
            TemporalNetwork::build(path.clone(), &[(0, 1)]),
            Err(Error::MissingEdge { edge: 1 })
        );
        assert_eq!(
            TemporalNetwork::build(path, &[(0, 1), (0, 2)]),
            Err(Error::EdgeLabeledTwice { edge: 0 })
        );
        assert!(matches!(
            Pseudograph::new(2, vec![(0, 2)]),
            Err(Error::UnknownVertex { vertex: 2, .. })
        ));
    }

    #[test]
    fn real_times_reduce_to_ranks() {
        let path = Pseudograph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let n = TemporalNetwork::from_times(path.clone(), &[3.5, -1.0]).unwrap();
        assert_eq!(n.labels(), &[2, 1]);
        assert_eq!(
            TemporalNetwork::from_times(path, &[1.0, 1.0]),
            Err(Error::InvalidTimes)
        );
    }

    #[test]
    fn adjacency_of_parallel_edges_and_loops() {
        let beachball = Pseudograph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(beachball.adjacency().adjacent(0, 1));

        let daisy = Pseudograph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let adj = daisy.adjacency();
        assert!(adj.adjacent(0, 1));
        assert!(!adj.adjacent(0, 0));

        // D(1,1): central 0, left 1, right 2
        let diaster = Pseudograph::new(4, vec![(0, 1), (0, 2), (1, 3)]).unwrap();
        let adj = diaster.adjacency();
        assert!(!adj.adjacent(1, 2));
        assert!(adj.adjacent(0, 1) && adj.adjacent(0, 2));
    }

    #[test]
    fn parse_daisy() {
        let n = parse_network("vertices: 1\nedges: 1\n0 0 0 1\n").unwrap();
        assert_eq!(n.graph().vertex_count(), 1);
        assert!(n.graph().is_loop(0));
        assert_eq!(n.labels(), &[1]);
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let text = "# a path\n\nvertices: 3\n  edges: 2\n# edges\n0 0 1 2\n\n1 1 2 1\n";
        let n = parse_network(text).unwrap();
        assert_eq!(n.labels(), &[2, 1]);
        assert_eq!(n.to_string(), "vertices: 3\nedges: 2\n0 0 1 2\n1 1 2 1\n");
    }

    #[test]
    fn parse_reports_locations() {
        let err = parse_network("vertices: 2\nedges: 1\n0 0 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = parse_network("vertices: 2\nedges: 2\n1 0 1 1\n0 0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = parse_network("vertices 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }), "{err}");
        let err = parse_network("vertices: 2\nedges: 2\n0 0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }), "{err}");
    }

    #[test]
    fn parse_rejects_duplicate_label() {
        let err = parse_network("vertices: 3\nedges: 2\n0 0 1 1\n1 1 2 1\n").unwrap_err();
        assert_eq!(err, Error::DuplicateLabel { label: 1 });
    }
}
