//! Time-respecting path enumeration.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{EdgeId, TemporalNetwork, VertexId};

/// Default cap on the number of paths a single enumeration may produce.
pub const DEFAULT_PATH_LIMIT: usize = 2_000_000;

/// A walk whose edge labels strictly increase.
///
/// `trace` has one more entry than `edges`; edge `i` joins `trace[i]` and
/// `trace[i + 1]`. A single non-loop edge is recorded once, traversed from
/// its smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TemporalPath {
    edges: Vec<EdgeId>,
    trace: Vec<VertexId>,
}

impl TemporalPath {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn trace(&self) -> &[VertexId] {
        &self.trace
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn labels(&self, network: &TemporalNetwork) -> Vec<usize> {
        self.edges.iter().map(|&e| network.label(e)).collect()
    }

    /// Image of this path under a vertex map and a compatible edge map.
    pub fn mapped(&self, vertex_map: &[VertexId], edge_map: &[EdgeId]) -> TemporalPath {
        let mut path = TemporalPath {
            edges: self.edges.iter().map(|&e| edge_map[e]).collect(),
            trace: self.trace.iter().map(|&v| vertex_map[v]).collect(),
        };
        path.normalize();
        path
    }

    fn normalize(&mut self) {
        if self.edges.len() == 1 && self.trace[0] > self.trace[1] {
            self.trace.swap(0, 1);
        }
    }

    /// Checks chaining and strictly increasing labels against `network`.
    pub fn is_valid_in(&self, network: &TemporalNetwork) -> bool {
        let graph = network.graph();
        if self.edges.is_empty() || self.trace.len() != self.edges.len() + 1 {
            return false;
        }
        let chained = self.edges.iter().enumerate().all(|(i, &e)| {
            e < graph.edge_count() && graph.opposite(e, self.trace[i]) == Some(self.trace[i + 1])
        });
        chained
            && self
                .edges
                .windows(2)
                .all(|w| network.label(w[0]) < network.label(w[1]))
    }

    /// Renders as `labels | vertex trace`, e.g. `1 2 3 | 2 0 1 3`.
    pub fn display<'a>(&'a self, network: &'a TemporalNetwork) -> impl fmt::Display + 'a {
        PathDisplay {
            path: self,
            network,
        }
    }
}

struct PathDisplay<'a> {
    path: &'a TemporalPath,
    network: &'a TemporalNetwork,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .path
            .edges
            .iter()
            .map(|&e| self.network.label(e).to_string())
            .collect();
        let trace: Vec<String> = self.path.trace.iter().map(|v| v.to_string()).collect();
        write!(f, "{} | {}", labels.join(" "), trace.join(" "))
    }
}

/// Every temporal path of every length, sorted.
pub fn temporal_paths(network: &TemporalNetwork) -> Result<Vec<TemporalPath>> {
    temporal_paths_with_limit(network, DEFAULT_PATH_LIMIT)
}

pub fn temporal_paths_with_limit(
    network: &TemporalNetwork,
    limit: usize,
) -> Result<Vec<TemporalPath>> {
    let graph = network.graph();
    let mut out = Vec::new();
    let mut edges = Vec::new();
    let mut trace = Vec::new();
    for start in 0..graph.edge_count() {
        let (u, v) = graph.endpoints(start);
        let starts: &[(VertexId, VertexId)] = if u == v { &[(u, v)] } else { &[(u, v), (v, u)] };
        for &(from, to) in starts {
            edges.push(start);
            trace.push(from);
            trace.push(to);
            let record_single = from <= to;
            extend(
                network,
                &mut edges,
                &mut trace,
                &mut out,
                limit,
                record_single,
            )?;
            edges.clear();
            trace.clear();
        }
    }
    out.sort();
    Ok(out)
}

fn extend(
    network: &TemporalNetwork,
    edges: &mut Vec<EdgeId>,
    trace: &mut Vec<VertexId>,
    out: &mut Vec<TemporalPath>,
    limit: usize,
    record_single: bool,
) -> Result<()> {
    if edges.len() > 1 || record_single {
        if out.len() >= limit {
            return Err(Error::LimitExceeded {
                what: "temporal path count",
                value: out.len() + 1,
                limit,
            });
        }
        out.push(TemporalPath {
            edges: edges.clone(),
            trace: trace.clone(),
        });
    }
    let graph = network.graph();
    let here = *trace.last().expect("trace is never empty");
    let last_label = network.label(*edges.last().expect("path is never empty"));
    for next in graph.incident_edges(here) {
        if network.label(next) <= last_label {
            continue;
        }
        let there = graph.opposite(next, here).expect("incident edge");
        edges.push(next);
        trace.push(there);
        extend(network, edges, trace, out, limit, true)?;
        edges.pop();
        trace.pop();
    }
    Ok(())
}

pub fn max_temporal_path_length(network: &TemporalNetwork) -> usize {
    // Depth-first longest increasing walk; no need to materialize paths.
    let graph = network.graph();
    fn longest(network: &TemporalNetwork, at: VertexId, after: usize) -> usize {
        let graph = network.graph();
        graph
            .incident_edges(at)
            .filter(|&e| network.label(e) > after)
            .map(|e| {
                let there = graph.opposite(e, at).expect("incident edge");
                1 + longest(network, there, network.label(e))
            })
            .max()
            .unwrap_or(0)
    }
    (0..graph.vertex_count())
        .map(|v| longest(network, v, 0))
        .max()
        .unwrap_or(0)
}

/// Count of temporal paths by length; index 0 holds length 1.
pub fn path_length_profile(paths: &[TemporalPath]) -> Vec<usize> {
    let max = paths.iter().map(TemporalPath::len).max().unwrap_or(0);
    let mut profile = vec![0; max];
    for path in paths {
        profile[path.len() - 1] += 1;
    }
    profile
}
