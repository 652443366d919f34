//! Partitions of all labelings of a graph into isotemporal classes.
//!
//! Two independent routes are provided. [`brute_force_classes`] tests
//! temporal isomorphism directly between canonical labelings;
//! [`swap_closure_classes`] explores the orbits generated by exchanging
//! consecutive labels on non-adjacent edges. The first is always at least
//! as coarse as the second, and [`compare_partitions`] checks both that and
//! whether they coincide.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{signature_with_layout, CentralLayout, SwapScript, SwapStep};
use crate::iso::{
    canonical_labelings, edge_automorphism_group, EdgePermutationGroup, TemporalMatcher,
};
use crate::network::{AdjacencyRelation, Pseudograph, TemporalNetwork};
use crate::paths::{path_length_profile, temporal_paths, TemporalPath};

/// Largest edge count any partition may be computed for.
pub const HARD_EDGE_CAP: usize = 10;
/// Default edge limit for exhaustive partitions.
pub const DEFAULT_EDGE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionMethod {
    TemporalIsomorphism,
    SwapClosure,
    Signature,
}

impl PartitionMethod {
    pub fn name(self) -> &'static str {
        match self {
            PartitionMethod::TemporalIsomorphism => "temporal-isomorphism",
            PartitionMethod::SwapClosure => "swap-closure",
            PartitionMethod::Signature => "signature",
        }
    }
}

/// Canonical labelings of one graph grouped into classes.
///
/// Blocks are sorted internally and ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub graph: Pseudograph,
    pub method: PartitionMethod,
    pub blocks: Vec<Vec<Vec<usize>>>,
}

impl ClassPartition {
    fn new(graph: Pseudograph, method: PartitionMethod, mut blocks: Vec<Vec<Vec<usize>>>) -> Self {
        for block in blocks.iter_mut() {
            block.sort();
        }
        blocks.sort();
        Self {
            graph,
            method,
            blocks,
        }
    }

    pub fn class_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn labeling_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Smallest labeling of each block.
    pub fn representatives(&self) -> Vec<TemporalNetwork> {
        self.blocks
            .iter()
            .map(|b| TemporalNetwork::from_labels_unchecked(self.graph.clone(), b[0].clone()))
            .collect()
    }

    /// Block index of every labeling.
    pub fn block_index(&self) -> HashMap<&[usize], usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |l| (l.as_slice(), i)))
            .collect()
    }
}

fn check_limit(graph: &Pseudograph, limit: usize) -> Result<()> {
    let limit = limit.min(HARD_EDGE_CAP);
    if graph.edge_count() > limit {
        return Err(Error::LimitExceeded {
            what: "edge count",
            value: graph.edge_count(),
            limit,
        });
    }
    Ok(())
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.parent.len() {
            let root = self.find(x);
            by_root.entry(root).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

pub fn brute_force_classes(graph: &Pseudograph) -> Result<ClassPartition> {
    brute_force_classes_with_limit(graph, DEFAULT_EDGE_LIMIT)
}

/// Classes of [`crate::iso::is_temporal_isomorphic`] over all canonical labelings.
///
/// Labelings are first bucketed by their count of temporal paths of each
/// length, which any temporal isomorphism preserves; pairs are only tested
/// within a bucket.
pub fn brute_force_classes_with_limit(graph: &Pseudograph, limit: usize) -> Result<ClassPartition> {
    check_limit(graph, limit)?;
    let group = edge_automorphism_group(graph)?;
    let labelings = canonical_labelings(&group);
    let matcher = TemporalMatcher::new(graph, graph)?;

    let paths: Vec<Vec<TemporalPath>> = labelings
        .par_iter()
        .map(|l| {
            temporal_paths(&TemporalNetwork::from_labels_unchecked(
                graph.clone(),
                l.clone(),
            ))
        })
        .collect::<Result<_>>()?;

    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        buckets.entry(path_length_profile(p)).or_default().push(i);
    }
    let mut buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    buckets.sort();

    let merged: Vec<Vec<Vec<usize>>> = buckets
        .par_iter()
        .map(|members| {
            let sets: Vec<HashSet<TemporalPath>> = members
                .iter()
                .map(|&i| paths[i].iter().cloned().collect())
                .collect();
            let mut dsu = DisjointSets::new(members.len());
            for i in 1..members.len() {
                let mut tested = HashSet::new();
                for (j, set) in sets.iter().enumerate().take(i) {
                    let root = dsu.find(j);
                    if root == dsu.find(i) || !tested.insert(root) {
                        continue;
                    }
                    if matcher.find(&paths[members[i]], set).is_some() {
                        dsu.union(i, j);
                    }
                }
            }
            dsu.groups()
                .into_iter()
                .map(|g| g.into_iter().map(|k| members[k]).collect())
                .collect()
        })
        .collect();

    let blocks = merged
        .into_iter()
        .flatten()
        .map(|g: Vec<usize>| g.into_iter().map(|i| labelings[i].clone()).collect())
        .collect();
    Ok(ClassPartition::new(
        graph.clone(),
        PartitionMethod::TemporalIsomorphism,
        blocks,
    ))
}

/// Label vectors reachable by exchanging labels `i` and `i + 1` on non-adjacent edges.
pub fn swap_moves(labels: &[usize], adjacency: &AdjacencyRelation) -> Vec<Vec<usize>> {
    let mut by_label = vec![0; labels.len()];
    for (edge, &label) in labels.iter().enumerate() {
        by_label[label - 1] = edge;
    }
    by_label
        .windows(2)
        .filter(|w| !adjacency.adjacent(w[0], w[1]))
        .map(|w| {
            let mut next = labels.to_vec();
            next.swap(w[0], w[1]);
            next
        })
        .collect()
}

pub fn swap_neighbors(network: &TemporalNetwork) -> Vec<TemporalNetwork> {
    let adjacency = network.graph().adjacency();
    swap_moves(network.labels(), &adjacency)
        .into_iter()
        .map(|l| TemporalNetwork::from_labels_unchecked(network.graph().clone(), l))
        .collect()
}

/// Fewest swap moves taking `n` to a labeling label-isomorphic to `m`.
///
/// Breadth-first over raw labelings, so it works on any graph but costs up
/// to `t!` states; `None` means `m` is not in the swap orbit of `n`.
pub fn shortest_swap_script(
    n: &TemporalNetwork,
    m: &TemporalNetwork,
    limit: usize,
) -> Result<Option<SwapScript>> {
    if n.graph() != m.graph() {
        return Err(Error::GraphMismatch);
    }
    check_limit(n.graph(), limit)?;
    let group = edge_automorphism_group(n.graph())?;
    let adjacency = n.graph().adjacency();
    let target = group.canonical_form(m.labels());
    let start = n.labels().to_vec();
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, SwapStep)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(labels) = queue.pop_front() {
        if group.canonical_form(&labels) == target {
            let mut steps = Vec::new();
            let mut at = labels;
            while let Some((prev, step)) = parent[&at].clone() {
                steps.push(step);
                at = prev;
            }
            steps.reverse();
            return Ok(Some(SwapScript { steps }));
        }
        let mut by_label = vec![0; labels.len()];
        for (edge, &label) in labels.iter().enumerate() {
            by_label[label - 1] = edge;
        }
        for (i, w) in by_label.windows(2).enumerate() {
            if adjacency.adjacent(w[0], w[1]) {
                continue;
            }
            let mut next = labels.clone();
            next.swap(w[0], w[1]);
            if !parent.contains_key(&next) {
                let step = SwapStep {
                    label: i + 1,
                    edges: (w[0], w[1]),
                };
                parent.insert(next.clone(), Some((labels.clone(), step)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

pub fn swap_closure_classes(graph: &Pseudograph) -> Result<ClassPartition> {
    swap_closure_classes_with_limit(graph, DEFAULT_EDGE_LIMIT)
}

/// Orbits of canonical labelings under swap moves followed by canonicalization.
pub fn swap_closure_classes_with_limit(
    graph: &Pseudograph,
    limit: usize,
) -> Result<ClassPartition> {
    check_limit(graph, limit)?;
    let group = edge_automorphism_group(graph)?;
    let blocks = swap_orbits(graph, &group);
    Ok(ClassPartition::new(
        graph.clone(),
        PartitionMethod::SwapClosure,
        blocks,
    ))
}

fn swap_orbits(graph: &Pseudograph, group: &EdgePermutationGroup) -> Vec<Vec<Vec<usize>>> {
    let adjacency = graph.adjacency();
    let labelings = canonical_labelings(group);
    let index: HashMap<&[usize], usize> = labelings
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_slice(), i))
        .collect();
    let mut visited = vec![false; labelings.len()];
    let mut blocks = Vec::new();
    for start in 0..labelings.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut block = vec![labelings[start].clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for next in swap_moves(&labelings[i], &adjacency) {
                let canonical = group.canonical_form(&next);
                let j = index[canonical.as_slice()];
                if !visited[j] {
                    visited[j] = true;
                    block.push(canonical);
                    queue.push_back(j);
                }
            }
        }
        blocks.push(block);
    }
    blocks
}

/// Classes by central signature, for graphs with a central edge.
pub fn signature_classes(graph: &Pseudograph) -> Result<ClassPartition> {
    check_limit(graph, DEFAULT_EDGE_LIMIT)?;
    let group = edge_automorphism_group(graph)?;
    let layout = CentralLayout::with_group(graph, &group)?;
    let mut by_signature: HashMap<_, Vec<Vec<usize>>> = HashMap::new();
    for labels in canonical_labelings(&group) {
        by_signature
            .entry(signature_with_layout(&labels, &layout))
            .or_default()
            .push(labels);
    }
    Ok(ClassPartition::new(
        graph.clone(),
        PartitionMethod::Signature,
        by_signature.into_values().collect(),
    ))
}

/// Pairs of labelings sharing a block of `fine` but not of `coarse`.
pub fn refinement_violations(
    fine: &ClassPartition,
    coarse: &ClassPartition,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let index = coarse.block_index();
    let mut out = Vec::new();
    for block in &fine.blocks {
        let home = index.get(block[0].as_slice());
        for other in &block[1..] {
            if index.get(other.as_slice()) != home {
                out.push((block[0].clone(), other.clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub brute_classes: usize,
    pub swap_classes: usize,
    pub equal: bool,
    /// Temporally isomorphic labelings lying in different swap orbits.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub brute: ClassPartition,
    pub swap: ClassPartition,
}

pub fn compare_partitions(graph: &Pseudograph) -> Result<ComparisonReport> {
    compare_partitions_with_limit(graph, DEFAULT_EDGE_LIMIT)
}

pub fn compare_partitions_with_limit(
    graph: &Pseudograph,
    limit: usize,
) -> Result<ComparisonReport> {
    let brute = brute_force_classes_with_limit(graph, limit)?;
    let swap = swap_closure_classes_with_limit(graph, limit)?;
    if let Some((a, b)) = refinement_violations(&swap, &brute).into_iter().next() {
        return Err(Error::Internal(format!(
            "swap moves joined {a:?} and {b:?}, which are not temporally isomorphic"
        )));
    }
    let witness = if brute.blocks == swap.blocks {
        None
    } else {
        refinement_violations(&brute, &swap).into_iter().next()
    };
    Ok(ComparisonReport {
        brute_classes: brute.class_count(),
        swap_classes: swap.class_count(),
        equal: witness.is_none(),
        witness,
        brute,
        swap,
    })
}
