//! Generators for diasters, stars, beachballs, daisies, cycles and stem
//! structures, plus the machinery that exploits their central edge: the
//! (central label, left count) signature, the binary-sequence swap
//! construction, swap scripts between isomorphic labelings, and the
//! adjacency/automorphism transfer check.
//!
//! Layouts produced by [`generate`]:
//!
//! | family          | vertices                         | edges                                    |
//! |-----------------|----------------------------------|------------------------------------------|
//! | `diaster:a,b`   | 0, 1 hubs; leaves after          | 0 central, 1..=a left, a+1..=a+b right    |
//! | `star:k`        | 0 hub; leaves 1..=k              | i joins 0 and i+1                        |
//! | `beachball:k`   | 0, 1                             | all join 0 and 1                         |
//! | `daisy:k`       | 0                                | all loops at 0                           |
//! | `cycle:n`       | 0..n                             | i joins i and (i+1) mod n                |
//! | `stem:L/R`      | 0, 1 attachments; L then R       | 0 central, then L's edges, then R's      |
//!
//! `stem:star:a/star:b` is the same graph as `diaster:a,b`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{edge_automorphism_group, EdgePermutationGroup};
use crate::network::{EdgeId, Pseudograph, TemporalNetwork, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PartKind {
    Star,
    Beachball,
    Daisy,
}

impl PartKind {
    pub const ALL: [PartKind; 3] = [PartKind::Star, PartKind::Beachball, PartKind::Daisy];

    pub fn name(self) -> &'static str {
        match self {
            PartKind::Star => "star",
            PartKind::Beachball => "beachball",
            PartKind::Daisy => "daisy",
        }
    }
}

/// One side of a stem structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StemPart {
    pub kind: PartKind,
    pub size: usize,
}

impl StemPart {
    pub fn new(kind: PartKind, size: usize) -> Self {
        Self { kind, size }
    }
}

impl fmt::Display for StemPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilySpec {
    Diaster(usize, usize),
    Star(usize),
    Beachball(usize),
    Daisy(usize),
    Cycle(usize),
    Stem(StemPart, StemPart),
}

impl FamilySpec {
    pub fn stem(left: (PartKind, usize), right: (PartKind, usize)) -> Self {
        FamilySpec::Stem(
            StemPart::new(left.0, left.1),
            StemPart::new(right.0, right.1),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidFamily {
                spec: self.to_string(),
                reason: reason.to_string(),
            })
        };
        match *self {
            FamilySpec::Diaster(a, b) if a + b == 0 => bad("a diaster needs a + b >= 1"),
            FamilySpec::Star(0) | FamilySpec::Beachball(0) | FamilySpec::Daisy(0) => {
                bad("size must be at least 1")
            }
            FamilySpec::Cycle(n) if n < 3 => bad("a cycle needs at least 3 vertices"),
            FamilySpec::Stem(l, r) if l.size == 0 || r.size == 0 => {
                bad("stem parts must have size at least 1")
            }
            _ => Ok(()),
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            FamilySpec::Diaster(a, b) => a + b + 1,
            FamilySpec::Star(k) | FamilySpec::Beachball(k) | FamilySpec::Daisy(k) => k,
            FamilySpec::Cycle(n) => n,
            FamilySpec::Stem(l, r) => l.size + r.size + 1,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Diaster(a, b) => write!(f, "diaster:{a},{b}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::Beachball(k) => write!(f, "beachball:{k}"),
            FamilySpec::Daisy(k) => write!(f, "daisy:{k}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Stem(l, r) => write!(f, "stem:{l}/{r}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidFamily {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let number = |text: &str| -> Result<usize> {
            text.trim()
                .parse()
                .map_err(|_| invalid(&format!("`{text}` is not a non-negative integer")))
        };
        let (name, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| invalid("expected `<family>:<parameters>`"))?;
        let spec = match name {
            "diaster" => {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| invalid("expected `diaster:a,b`"))?;
                FamilySpec::Diaster(number(a)?, number(b)?)
            }
            "star" => FamilySpec::Star(number(rest)?),
            "beachball" => FamilySpec::Beachball(number(rest)?),
            "daisy" => FamilySpec::Daisy(number(rest)?),
            "cycle" => FamilySpec::Cycle(number(rest)?),
            "stem" => {
                let (l, r) = rest
                    .split_once('/')
                    .ok_or_else(|| invalid("expected `stem:<part>/<part>`"))?;
                let part = |text: &str| -> Result<StemPart> {
                    match text.parse::<FamilySpec>() {
                        Ok(FamilySpec::Star(k)) => Ok(StemPart::new(PartKind::Star, k)),
                        Ok(FamilySpec::Beachball(k)) => Ok(StemPart::new(PartKind::Beachball, k)),
                        Ok(FamilySpec::Daisy(k)) => Ok(StemPart::new(PartKind::Daisy, k)),
                        _ => Err(invalid("stem parts must be star:k, beachball:k or daisy:k")),
                    }
                };
                FamilySpec::Stem(part(l)?, part(r)?)
            }
            other => return Err(invalid(&format!("unknown family `{other}`"))),
        };
        spec.validate().map_err(|e| match e {
            Error::InvalidFamily { reason, .. } => invalid(&reason),
            other => other,
        })?;
        Ok(spec)
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Pseudograph> {
    spec.validate()?;
    let (vertices, edges) = match *spec {
        FamilySpec::Diaster(a, b) => {
            let mut edges = vec![(0, 1)];
            edges.extend((0..a).map(|i| (0, 2 + i)));
            edges.extend((0..b).map(|j| (1, 2 + a + j)));
            (2 + a + b, edges)
        }
        FamilySpec::Star(k) => (k + 1, (1..=k).map(|i| (0, i)).collect()),
        FamilySpec::Beachball(k) => (2, vec![(0, 1); k]),
        FamilySpec::Daisy(k) => (1, vec![(0, 0); k]),
        FamilySpec::Cycle(n) => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
        FamilySpec::Stem(l, r) => {
            let mut edges = vec![(0, 1)];
            let mut next_vertex = 2;
            for (part, attach) in [(l, 0), (r, 1)] {
                match part.kind {
                    PartKind::Star => {
                        for _ in 0..part.size {
                            edges.push((attach, next_vertex));
                            next_vertex += 1;
                        }
                    }
                    PartKind::Beachball => {
                        edges.extend(std::iter::repeat_n((attach, next_vertex), part.size));
                        next_vertex += 1;
                    }
                    PartKind::Daisy => {
                        edges.extend(std::iter::repeat_n((attach, attach), part.size));
                    }
                }
            }
            (next_vertex, edges)
        }
    };
    Pseudograph::new(vertices, edges)
}

/// A central edge whose removal leaves two sides with no edge between them.
///
/// Every other edge touches exactly one endpoint of the central edge; the
/// ones at the first endpoint are "left", the rest "right".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralLayout {
    pub central: EdgeId,
    pub left_hub: VertexId,
    pub right_hub: VertexId,
    pub left: Vec<EdgeId>,
    pub right: Vec<EdgeId>,
    /// Whether some edge automorphism fixes the central edge and exchanges the sides.
    pub reflective: bool,
}

impl CentralLayout {
    /// Layout with edge 0 as the central edge, as produced by [`generate`]
    /// for diasters and stems.
    pub fn of(graph: &Pseudograph) -> Result<Self> {
        let group = edge_automorphism_group(graph)?;
        Self::with_group(graph, &group)
    }

    pub fn with_group(graph: &Pseudograph, group: &EdgePermutationGroup) -> Result<Self> {
        if graph.edge_count() == 0 || graph.is_loop(0) {
            return Err(Error::NoCentralEdge);
        }
        let (left_hub, right_hub) = graph.endpoints(0);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in 1..graph.edge_count() {
            match (
                graph.is_incident(e, left_hub),
                graph.is_incident(e, right_hub),
            ) {
                (true, false) => left.push(e),
                (false, true) => right.push(e),
                _ => return Err(Error::NoCentralEdge),
            }
        }
        if left.is_empty() || right.is_empty() {
            return Err(Error::NoCentralEdge);
        }
        let reflective = group
            .elements()
            .iter()
            .any(|g| g[0] == 0 && right.binary_search(&g[left[0]]).is_ok());
        Ok(Self {
            central: 0,
            left_hub,
            right_hub,
            left,
            right,
            reflective,
        })
    }

    pub fn is_left(&self, edge: EdgeId) -> bool {
        self.left.binary_search(&edge).is_ok()
    }
}

/// Central label and number of left peripheral labels below it.
///
/// For reflective layouts `left_below` is replaced by
/// `min(k, central_label - 1 - k)`, which identifies mirror images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiasterSignature {
    pub central_label: usize,
    pub left_below: usize,
    pub reflected: bool,
}

pub fn diaster_signature(network: &TemporalNetwork) -> Result<DiasterSignature> {
    let layout = CentralLayout::of(network.graph())?;
    Ok(signature_with_layout(network.labels(), &layout))
}

pub fn signature_with_layout(labels: &[usize], layout: &CentralLayout) -> DiasterSignature {
    let central_label = labels[layout.central];
    let k = layout
        .left
        .iter()
        .filter(|&&e| labels[e] < central_label)
        .count();
    let left_below = if layout.reflective {
        k.min(central_label - 1 - k)
    } else {
        k
    };
    DiasterSignature {
        central_label,
        left_below,
        reflected: layout.reflective,
    }
}

/// Swaps turning `from` into `to`, each exchanging positions `i` and `i + 1`
/// (0-based) that currently hold different values. Returned in application
/// order.
///
/// Scans left to right; at the first mismatch `i`, the nearest later
/// position `j` holding the wanted value is bubbled down through
/// `(j-1, j), (j-2, j-1), …, (i, i+1)`.
pub fn binary_swap_sequence(from: &[bool], to: &[bool]) -> Result<Vec<usize>> {
    if from.len() != to.len() {
        return Err(Error::LengthMismatch {
            left: from.len(),
            right: to.len(),
        });
    }
    let zeros = |s: &[bool]| s.iter().filter(|&&x| !x).count();
    if zeros(from) != zeros(to) {
        return Err(Error::PopulationMismatch {
            left: zeros(from),
            right: zeros(to),
        });
    }
    let mut current = from.to_vec();
    let mut swaps = Vec::new();
    for i in 0..current.len() {
        if current[i] == to[i] {
            continue;
        }
        let j = (i + 1..current.len())
            .find(|&j| current[j] == to[i])
            .ok_or_else(|| Error::Internal("equal populations guarantee a match".into()))?;
        for p in (i..j).rev() {
            debug_assert_ne!(current[p], current[p + 1]);
            current.swap(p, p + 1);
            swaps.push(p);
        }
    }
    debug_assert_eq!(current, to);
    Ok(swaps)
}

/// Exchange of the consecutive labels `label` and `label + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwapStep {
    pub label: usize,
    /// Edges carrying `label` and `label + 1` just before the swap.
    pub edges: (EdgeId, EdgeId),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SwapScript {
    pub steps: Vec<SwapStep>,
}

impl SwapScript {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Replays the script, refusing any step that is not a swap of
    /// consecutive labels on the recorded, non-adjacent edges.
    pub fn apply(&self, network: &TemporalNetwork) -> Result<TemporalNetwork> {
        let adjacency = network.graph().adjacency();
        let mut labels = network.labels().to_vec();
        for (i, step) in self.steps.iter().enumerate() {
            let (e, f) = step.edges;
            let valid = e < labels.len()
                && f < labels.len()
                && labels[e] == step.label
                && labels[f] == step.label + 1
                && !adjacency.adjacent(e, f);
            if !valid {
                return Err(Error::Internal(format!("swap step {i} is not legal")));
            }
            labels.swap(e, f);
        }
        network.relabeled(labels)
    }
}

impl fmt::Display for SwapScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(
                f,
                "swap {} {} on edges {} {}",
                step.label,
                step.label + 1,
                step.edges.0,
                step.edges.1
            )?;
        }
        Ok(())
    }
}

/// Sequential transpositions on non-adjacent edges taking `n` to a labeling
/// label-isomorphic to `m`, for networks on a graph with a central edge.
pub fn diaster_swap_permutation(n: &TemporalNetwork, m: &TemporalNetwork) -> Result<SwapScript> {
    if n.graph() != m.graph() {
        return Err(Error::GraphMismatch);
    }
    let layout = CentralLayout::of(n.graph())?;
    swap_script_with_layout(n, m, &layout)
}

pub fn swap_script_with_layout(
    n: &TemporalNetwork,
    m: &TemporalNetwork,
    layout: &CentralLayout,
) -> Result<SwapScript> {
    let central_label = n.label(layout.central);
    if central_label != m.label(layout.central) {
        return Err(Error::NotTemporallyIsomorphic);
    }
    let side = |net: &TemporalNetwork, mirrored: bool| -> Vec<bool> {
        // true = right side, indexed by label - 1, central label skipped later
        let mut sides: Vec<bool> = net
            .edges_by_label()
            .iter()
            .map(|&e| !layout.is_left(e))
            .collect();
        if mirrored {
            for s in sides.iter_mut() {
                *s = !*s;
            }
        }
        sides
    };
    let target = side(m, false);
    let below = central_label - 1;
    let zeros_below = |s: &[bool]| s[..below].iter().filter(|&&x| !x).count();

    // Align N's sides with M's; a mirror is only available on reflective layouts.
    let mirrored = if zeros_below(&side(n, false)) == zeros_below(&target) {
        false
    } else if layout.reflective && zeros_below(&side(n, true)) == zeros_below(&target) {
        true
    } else {
        return Err(Error::NotTemporallyIsomorphic);
    };
    if mirrored && layout.left.len() != layout.right.len() {
        return Err(Error::Internal(
            "reflective layout with unequal sides".into(),
        ));
    }
    let source = side(n, mirrored);

    let mut labels = n.labels().to_vec();
    let mut by_label = n.edges_by_label();
    let mut steps = Vec::new();
    let ranges = [(0, below), (central_label, labels.len())];
    for (start, end) in ranges {
        for offset in binary_swap_sequence(&source[start..end], &target[start..end])? {
            let label = start + offset + 1;
            let (e, f) = (by_label[label - 1], by_label[label]);
            labels.swap(e, f);
            by_label.swap(label - 1, label);
            steps.push(SwapStep {
                label,
                edges: (e, f),
            });
        }
    }
    Ok(SwapScript { steps })
}

/// Outcome of checking whether two graphs share edge adjacency and edge symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    /// Adjacency-preserving edge bijection found, if any.
    pub edge_map: Option<Vec<EdgeId>>,
    pub adjacency_preserved: bool,
    pub automorphisms_match: bool,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.adjacency_preserved && self.automorphisms_match
    }
}

/// Searches for an edge bijection preserving adjacency in both directions
/// that also conjugates one edge automorphism group onto the other.
pub fn check_transfer_conditions(g: &Pseudograph, h: &Pseudograph) -> Result<TransferReport> {
    let none = TransferReport {
        edge_map: None,
        adjacency_preserved: false,
        automorphisms_match: false,
    };
    if g.edge_count() != h.edge_count() {
        return Ok(none);
    }
    let g_group = edge_automorphism_group(g)?;
    let h_group = edge_automorphism_group(h)?;
    let maps = adjacency_isomorphisms(g, h, crate::iso::DEFAULT_SEARCH_LIMIT)?;
    let Some(first) = maps.first().cloned() else {
        return Ok(none);
    };
    if g_group.order() == h_group.order() {
        if let Some(phi) = maps
            .into_iter()
            .find(|phi| g_group.conjugate(phi) == h_group)
        {
            return Ok(TransferReport {
                edge_map: Some(phi),
                adjacency_preserved: true,
                automorphisms_match: true,
            });
        }
    }
    Ok(TransferReport {
        edge_map: Some(first),
        adjacency_preserved: true,
        automorphisms_match: false,
    })
}

/// Edge bijections `phi` with `e ~ f  <=>  phi(e) ~ phi(f)`, in lexicographic order.
fn adjacency_isomorphisms(
    g: &Pseudograph,
    h: &Pseudograph,
    node_limit: usize,
) -> Result<Vec<Vec<EdgeId>>> {
    let ga = g.adjacency();
    let ha = h.adjacency();
    let t = g.edge_count();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; t];
    let mut used = vec![false; t];
    let mut nodes = 0usize;

    #[allow(clippy::too_many_arguments)]
    fn descend(
        e: usize,
        ga: &crate::network::AdjacencyRelation,
        ha: &crate::network::AdjacencyRelation,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        limit: usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > limit {
            return Err(Error::LimitExceeded {
                what: "adjacency search nodes",
                value: *nodes,
                limit,
            });
        }
        if e == map.len() {
            out.push(map.clone());
            return Ok(());
        }
        for f in 0..map.len() {
            if used[f] || ga.degree(e) != ha.degree(f) {
                continue;
            }
            if (0..e).any(|d| ga.adjacent(e, d) != ha.adjacent(f, map[d])) {
                continue;
            }
            map[e] = f;
            used[f] = true;
            descend(e + 1, ga, ha, map, used, out, nodes, limit)?;
            used[f] = false;
            map[e] = usize::MAX;
        }
        Ok(())
    }

    descend(
        0, &ga, &ha, &mut map, &mut used, &mut out, &mut nodes, node_limit,
    )?;
    Ok(out)
}
