//! Graph isomorphisms of pseudographs, edge automorphism groups, and the
//! label / temporal isomorphism tests built on them.
//!
//! For pseudographs a vertex bijection does not pin down where parallel
//! edges or loops go, so an isomorphism here is a vertex bijection paired
//! with an endpoint-compatible edge bijection. Searches are exhaustive
//! backtracking with degree and multiplicity pruning; they are meant for
//! graphs with a handful of vertices.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{EdgeId, Pseudograph, TemporalNetwork, VertexId};
use crate::paths::{temporal_paths, TemporalPath};

/// Default cap on backtracking nodes visited by a vertex-bijection search.
pub const DEFAULT_SEARCH_LIMIT: usize = 5_000_000;
/// Default cap on the number of isomorphisms a search may return.
pub const DEFAULT_ISOMORPHISM_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub nodes: usize,
    pub isomorphisms: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_SEARCH_LIMIT,
            isomorphisms: DEFAULT_ISOMORPHISM_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeIsomorphism {
    /// Image of each edge, indexed by source edge id.
    pub edge_map: Vec<EdgeId>,
    /// Image of each vertex, indexed by source vertex id.
    pub vertex_map: Vec<VertexId>,
}

impl EdgeIsomorphism {
    pub fn identity(graph: &Pseudograph) -> Self {
        Self {
            edge_map: (0..graph.edge_count()).collect(),
            vertex_map: (0..graph.vertex_count()).collect(),
        }
    }

    /// Checks that the pair really is an isomorphism from `source` onto `target`.
    pub fn is_valid(&self, source: &Pseudograph, target: &Pseudograph) -> bool {
        if self.edge_map.len() != source.edge_count()
            || self.vertex_map.len() != source.vertex_count()
            || source.edge_count() != target.edge_count()
            || source.vertex_count() != target.vertex_count()
            || !is_permutation(&self.edge_map)
            || !is_permutation(&self.vertex_map)
        {
            return false;
        }
        source.edges().iter().enumerate().all(|(e, &(u, v))| {
            let (a, b) = target.endpoints(self.edge_map[e]);
            let (x, y) = (self.vertex_map[u], self.vertex_map[v]);
            (a == x && b == y) || (a == y && b == x)
        })
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&i| i < map.len() && !std::mem::replace(&mut seen[i], true))
}

/// All isomorphisms from `source` onto `target`, sorted by edge map then vertex map.
pub fn edge_isomorphisms(
    source: &Pseudograph,
    target: &Pseudograph,
) -> Result<Vec<EdgeIsomorphism>> {
    edge_isomorphisms_with_limits(source, target, SearchLimits::default())
}

pub fn edge_isomorphisms_with_limits(
    source: &Pseudograph,
    target: &Pseudograph,
    limits: SearchLimits,
) -> Result<Vec<EdgeIsomorphism>> {
    let mut out = Vec::new();
    for vertex_map in vertex_bijections(source, target, limits)? {
        expand_edge_maps(source, target, &vertex_map, limits, &mut out)?;
    }
    out.sort();
    Ok(out)
}

struct Profile {
    n: usize,
    multiplicity: Vec<usize>,
    signature: Vec<(usize, usize)>,
}

impl Profile {
    fn of(graph: &Pseudograph) -> Self {
        let n = graph.vertex_count();
        let mut multiplicity = vec![0; n * n];
        for &(u, v) in graph.edges() {
            multiplicity[u * n + v] += 1;
            if u != v {
                multiplicity[v * n + u] += 1;
            }
        }
        let signature = (0..n)
            .map(|v| (graph.degree(v), graph.loop_count(v)))
            .collect();
        Self {
            n,
            multiplicity,
            signature,
        }
    }

    fn mult(&self, u: VertexId, v: VertexId) -> usize {
        self.multiplicity[u * self.n + v]
    }
}

/// Vertex bijections preserving edge multiplicity between every vertex pair.
fn vertex_bijections(
    source: &Pseudograph,
    target: &Pseudograph,
    limits: SearchLimits,
) -> Result<Vec<Vec<VertexId>>> {
    if source.vertex_count() != target.vertex_count() || source.edge_count() != target.edge_count()
    {
        return Ok(Vec::new());
    }
    let sp = Profile::of(source);
    let tp = Profile::of(target);
    let mut a = sp.signature.clone();
    let mut b = tp.signature.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(Vec::new());
    }

    let order = search_order(source);
    let n = source.vertex_count();
    let mut state = VertexSearch {
        sp: &sp,
        tp: &tp,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        limits,
        out: Vec::new(),
    };
    state.descend(0)?;
    Ok(state.out)
}

/// Vertices ordered so each one (after the first of its component) has an
/// already-placed neighbour, highest degree first.
fn search_order(graph: &Pseudograph) -> Vec<VertexId> {
    let n = graph.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<VertexId> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    for &root in &by_degree {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            order.push(v);
            let mut next: Vec<VertexId> = graph
                .incident_edges(v)
                .filter_map(|e| graph.opposite(e, v))
                .filter(|&w| !placed[w])
                .collect();
            next.sort_by_key(|&w| (graph.degree(w), std::cmp::Reverse(w)));
            next.dedup();
            for w in next {
                if !placed[w] {
                    placed[w] = true;
                    frontier.push(w);
                }
            }
        }
    }
    order
}

struct VertexSearch<'a> {
    sp: &'a Profile,
    tp: &'a Profile,
    order: &'a [VertexId],
    map: Vec<VertexId>,
    used: Vec<bool>,
    nodes: usize,
    limits: SearchLimits,
    out: Vec<Vec<VertexId>>,
}

impl VertexSearch<'_> {
    fn descend(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.nodes {
            return Err(Error::LimitExceeded {
                what: "isomorphism search nodes",
                value: self.nodes,
                limit: self.limits.nodes,
            });
        }
        if depth == self.order.len() {
            if self.out.len() >= self.limits.isomorphisms {
                return Err(Error::LimitExceeded {
                    what: "isomorphism count",
                    value: self.out.len() + 1,
                    limit: self.limits.isomorphisms,
                });
            }
            self.out.push(self.map.clone());
            return Ok(());
        }
        let v = self.order[depth];
        for w in 0..self.tp.n {
            if self.used[w] || self.sp.signature[v] != self.tp.signature[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.sp.mult(v, u) == self.tp.mult(w, self.map[u]));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            self.descend(depth + 1)?;
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        Ok(())
    }
}

fn expand_edge_maps(
    source: &Pseudograph,
    target: &Pseudograph,
    vertex_map: &[VertexId],
    limits: SearchLimits,
    out: &mut Vec<EdgeIsomorphism>,
) -> Result<()> {
    // Group source edges by unordered endpoint pair; each group may be sent
    // onto the matching target group in any order.
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));
    let mut groups: Vec<EdgeGroup> = Vec::new();
    for (e, &(u, v)) in source.edges().iter().enumerate() {
        let k = key(u, v);
        match groups.iter_mut().find(|(gk, _, _)| *gk == k) {
            Some(group) => group.1.push(e),
            None => groups.push((k, vec![e], Vec::new())),
        }
    }
    for (k, _, targets) in groups.iter_mut() {
        let image = key(vertex_map[k.0], vertex_map[k.1]);
        targets.extend(
            target
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| key(a, b) == image)
                .map(|(f, _)| f),
        );
    }

    let mut edge_map = vec![usize::MAX; source.edge_count()];
    fill_groups(&groups, 0, &mut edge_map, vertex_map, limits, out)
}

/// Endpoint pair, the source edges on it, the target edges on its image.
type EdgeGroup = ((VertexId, VertexId), Vec<EdgeId>, Vec<EdgeId>);

fn fill_groups(
    groups: &[EdgeGroup],
    index: usize,
    edge_map: &mut Vec<EdgeId>,
    vertex_map: &[VertexId],
    limits: SearchLimits,
    out: &mut Vec<EdgeIsomorphism>,
) -> Result<()> {
    let Some((_, sources, targets)) = groups.get(index) else {
        if out.len() >= limits.isomorphisms {
            return Err(Error::LimitExceeded {
                what: "isomorphism count",
                value: out.len() + 1,
                limit: limits.isomorphisms,
            });
        }
        out.push(EdgeIsomorphism {
            edge_map: edge_map.clone(),
            vertex_map: vertex_map.to_vec(),
        });
        return Ok(());
    };
    debug_assert_eq!(sources.len(), targets.len());
    let mut result = Ok(());
    for_each_permutation(targets.len(), &mut |perm| {
        if result.is_err() {
            return;
        }
        for (i, &p) in perm.iter().enumerate() {
            edge_map[sources[i]] = targets[p];
        }
        result = fill_groups(groups, index + 1, edge_map, vertex_map, limits, out);
    });
    result
}

/// Calls `f` with every permutation of `0..n` in lexicographic order.
pub(crate) fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        if !next_permutation(&mut perm) {
            return;
        }
    }
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// A finite group of edge permutations, stored element by element.
///
/// Each element maps edge `e` to `element[e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePermutationGroup {
    degree: usize,
    elements: Vec<Vec<EdgeId>>,
}

impl EdgePermutationGroup {
    /// Deduplicates and sorts; does not check the group axioms.
    pub fn from_elements(degree: usize, mut elements: Vec<Vec<EdgeId>>) -> Self {
        elements.sort();
        elements.dedup();
        Self { degree, elements }
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            elements: vec![(0..degree).collect()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<EdgeId>] {
        &self.elements
    }

    pub fn contains(&self, perm: &[EdgeId]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(perm))
            .is_ok()
    }

    /// Identity present, closed under composition and inverse.
    pub fn satisfies_group_axioms(&self) -> bool {
        let identity: Vec<EdgeId> = (0..self.degree).collect();
        if !self.contains(&identity) {
            return false;
        }
        let inverses = self.elements.iter().all(|g| self.contains(&invert(g)));
        inverses
            && self
                .elements
                .iter()
                .all(|g| self.elements.iter().all(|h| self.contains(&compose(g, h))))
    }

    /// The labeling `labels ∘ g`: edge `e` receives the label of `g(e)`.
    pub fn act(labels: &[usize], element: &[EdgeId]) -> Vec<usize> {
        element.iter().map(|&e| labels[e]).collect()
    }

    /// Lexicographically smallest labeling in the orbit of `labels`.
    pub fn canonical_form(&self, labels: &[usize]) -> Vec<usize> {
        let mut best = labels.to_vec();
        let mut candidate = vec![0; labels.len()];
        for g in &self.elements {
            for (slot, &e) in candidate.iter_mut().zip(g) {
                *slot = labels[e];
            }
            if candidate < best {
                best.copy_from_slice(&candidate);
            }
        }
        best
    }

    /// `phi ∘ g ∘ phi⁻¹` for every element, as a group on the target edges.
    pub fn conjugate(&self, phi: &[EdgeId]) -> EdgePermutationGroup {
        let inverse = invert(phi);
        let elements = self
            .elements
            .iter()
            .map(|g| compose(phi, &compose(g, &inverse)))
            .collect();
        Self::from_elements(self.degree, elements)
    }
}

/// `(f ∘ g)(e) = f(g(e))`.
pub fn compose(f: &[EdgeId], g: &[EdgeId]) -> Vec<EdgeId> {
    g.iter().map(|&e| f[e]).collect()
}

pub fn invert(f: &[EdgeId]) -> Vec<EdgeId> {
    let mut out = vec![0; f.len()];
    for (e, &image) in f.iter().enumerate() {
        out[image] = e;
    }
    out
}

pub fn edge_automorphism_group(graph: &Pseudograph) -> Result<EdgePermutationGroup> {
    let isos = edge_isomorphisms(graph, graph)?;
    Ok(EdgePermutationGroup::from_elements(
        graph.edge_count(),
        isos.into_iter().map(|iso| iso.edge_map).collect(),
    ))
}

/// Isomorphisms with pairwise distinct edge maps, keeping the first vertex map.
fn distinct_edge_maps(isos: Vec<EdgeIsomorphism>) -> Vec<EdgeIsomorphism> {
    let mut out: Vec<EdgeIsomorphism> = Vec::with_capacity(isos.len());
    for iso in isos {
        if out
            .last()
            .map(|l| l.edge_map != iso.edge_map)
            .unwrap_or(true)
        {
            out.push(iso);
        }
    }
    out
}

/// A witness `iso` with `τ_M(iso(e)) = τ_N(e)` for every edge, if one exists.
pub fn label_isomorphism(
    n: &TemporalNetwork,
    m: &TemporalNetwork,
) -> Result<Option<EdgeIsomorphism>> {
    let isos = edge_isomorphisms(n.graph(), m.graph())?;
    Ok(isos.into_iter().find(|iso| {
        iso.edge_map
            .iter()
            .enumerate()
            .all(|(e, &f)| m.label(f) == n.label(e))
    }))
}

pub fn is_label_isomorphic(n: &TemporalNetwork, m: &TemporalNetwork) -> Result<bool> {
    Ok(label_isomorphism(n, m)?.is_some())
}

/// Tests temporal isomorphism of labelings against a fixed list of
/// candidate graph isomorphisms, caching nothing between calls.
pub(crate) struct TemporalMatcher {
    candidates: Vec<EdgeIsomorphism>,
}

impl TemporalMatcher {
    pub(crate) fn new(source: &Pseudograph, target: &Pseudograph) -> Result<Self> {
        Ok(Self {
            candidates: distinct_edge_maps(edge_isomorphisms(source, target)?),
        })
    }

    /// First candidate sending every path of `n` onto a path of `m`.
    ///
    /// With equal path counts, forward injectivity makes the map a
    /// bijection on paths, so the inverse preserves paths too.
    pub(crate) fn find<'a>(
        &'a self,
        n_paths: &[TemporalPath],
        m_paths: &HashSet<TemporalPath>,
    ) -> Option<&'a EdgeIsomorphism> {
        if n_paths.len() != m_paths.len() {
            return None;
        }
        self.candidates.iter().find(|iso| {
            n_paths
                .iter()
                .all(|p| m_paths.contains(&p.mapped(&iso.vertex_map, &iso.edge_map)))
        })
    }
}

/// A graph isomorphism carrying temporal paths of `n` exactly onto those of `m`.
pub fn temporal_isomorphism(
    n: &TemporalNetwork,
    m: &TemporalNetwork,
) -> Result<Option<EdgeIsomorphism>> {
    let matcher = TemporalMatcher::new(n.graph(), m.graph())?;
    let n_paths = temporal_paths(n)?;
    let m_paths: HashSet<TemporalPath> = temporal_paths(m)?.into_iter().collect();
    Ok(matcher.find(&n_paths, &m_paths).cloned())
}

pub fn is_temporal_isomorphic(n: &TemporalNetwork, m: &TemporalNetwork) -> Result<bool> {
    Ok(temporal_isomorphism(n, m)?.is_some())
}

pub fn canonical_labeling(network: &TemporalNetwork) -> Result<TemporalNetwork> {
    let group = edge_automorphism_group(network.graph())?;
    Ok(TemporalNetwork::from_labels_unchecked(
        network.graph().clone(),
        group.canonical_form(network.labels()),
    ))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of labelings up to label isomorphism, `t! / |Aut_E|`.
///
/// Only the identity fixes a bijective labeling, so the action is free and
/// every orbit has exactly `|Aut_E|` elements.
pub fn count_distinct_labelings(graph: &Pseudograph) -> Result<u64> {
    let group = edge_automorphism_group(graph)?;
    let total = factorial(graph.edge_count());
    let order = group.order() as u64;
    if !total.is_multiple_of(order) {
        return Err(Error::Internal(format!(
            "group order {order} does not divide {total}"
        )));
    }
    Ok(total / order)
}

/// Every canonical labeling of a graph with `group` as its edge automorphisms,
/// sorted lexicographically.
pub fn canonical_labelings(group: &EdgePermutationGroup) -> Vec<Vec<usize>> {
    let t = group.degree();
    let total = factorial(t) as usize;
    let mut visited = vec![false; total];
    let mut out = Vec::with_capacity(total / group.order().max(1));
    let mut labels: Vec<usize> = (1..=t).collect();
    let mut rank = 0usize;
    loop {
        if !visited[rank] {
            let mut best = labels.clone();
            for g in group.elements() {
                let image = EdgePermutationGroup::act(&labels, g);
                visited[permutation_rank(&image)] = true;
                if image < best {
                    best = image;
                }
            }
            out.push(best);
        }
        // `labels` walks permutations in lexicographic order, so its rank is
        // the loop counter.
        let mut zero_based: Vec<usize> = labels.iter().map(|l| l - 1).collect();
        if !next_permutation(&mut zero_based) {
            break;
        }
        labels = zero_based.iter().map(|l| l + 1).collect();
        rank += 1;
    }
    out.sort();
    out
}

/// Lexicographic rank of a permutation of `1..=t` among all `t!` permutations.
pub(crate) fn permutation_rank(labels: &[usize]) -> usize {
    let t = labels.len();
    let mut rank = 0;
    for i in 0..t {
        let smaller_after = labels[i + 1..].iter().filter(|&&x| x < labels[i]).count();
        rank = rank * (t - i) + smaller_after;
    }
    rank
}
