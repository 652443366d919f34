//! Helpers shared by the integration test targets.
//!
//! The oracle here deliberately avoids the library's isomorphism machinery:
//! it finds vertex automorphisms by trying every vertex permutation and
//! compares temporal paths as plain vertex sequences.

#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use isotemporal::{generate, FamilySpec, Pseudograph, TemporalNetwork};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn family(text: &str) -> Pseudograph {
    generate(&text.parse::<FamilySpec>().unwrap()).unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
}

/// Every serial labeling of `graph` (not reduced by symmetry).
pub fn all_labelings(graph: &Pseudograph) -> Vec<TemporalNetwork> {
    permutations(graph.edge_count())
        .into_iter()
        .map(|p| {
            TemporalNetwork::from_labels(graph.clone(), p.iter().map(|x| x + 1).collect()).unwrap()
        })
        .collect()
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Vertex permutations preserving the edge multiset, by exhaustion.
pub fn vertex_automorphisms(graph: &Pseudograph) -> Vec<Vec<usize>> {
    let mut edges: Vec<_> = graph.edges().iter().map(|&(u, v)| edge_key(u, v)).collect();
    edges.sort();
    permutations(graph.vertex_count())
        .into_iter()
        .filter(|p| {
            let mut image: Vec<_> = graph
                .edges()
                .iter()
                .map(|&(u, v)| edge_key(p[u], p[v]))
                .collect();
            image.sort();
            image == edges
        })
        .collect()
}

/// Temporal paths of a simple graph as vertex sequences.
pub fn vertex_paths(network: &TemporalNetwork) -> HashSet<Vec<usize>> {
    let graph = network.graph();
    let mut out = HashSet::new();
    fn walk(
        network: &TemporalNetwork,
        seq: &mut Vec<usize>,
        last: usize,
        out: &mut HashSet<Vec<usize>>,
    ) {
        let here = *seq.last().unwrap();
        for (e, &(u, v)) in network.graph().edges().iter().enumerate() {
            let label = network.label(e);
            if label <= last || (u != here && v != here) {
                continue;
            }
            let there = if u == here { v } else { u };
            seq.push(there);
            out.insert(seq.clone());
            walk(network, seq, label, out);
            seq.pop();
        }
    }
    for v in 0..graph.vertex_count() {
        let mut seq = vec![v];
        walk(network, &mut seq, 0, &mut out);
    }
    out
}

fn normalized(path: &[usize]) -> Vec<usize> {
    if path.len() == 2 && path[0] > path[1] {
        vec![path[1], path[0]]
    } else {
        path.to_vec()
    }
}

/// Number of classes of labelings of a simple graph, where two labelings
/// are identified when some vertex automorphism carries one path set onto
/// the other.
pub fn naive_class_count(graph: &Pseudograph) -> usize {
    let autos = vertex_automorphisms(graph);
    let mut keys = HashSet::new();
    for network in all_labelings(graph) {
        let paths: Vec<Vec<usize>> = vertex_paths(&network).into_iter().collect();
        let key = autos
            .iter()
            .map(|p| {
                let mut image: Vec<Vec<usize>> = paths
                    .iter()
                    .map(|path| normalized(&path.iter().map(|&v| p[v]).collect::<Vec<_>>()))
                    .collect();
                image.sort();
                image.dedup();
                image
            })
            .min()
            .unwrap();
        keys.insert(key);
    }
    keys.len()
}
