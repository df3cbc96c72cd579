//! Heisenberg-Weyl diagrams: acyclic directed multigraphs whose lines may
//! have one free end, together with canonical forms for their isomorphism
//! classes.
//!
//! A diagram consists of `vertex_count` anonymous vertices and a list of
//! lines. Every line is attached to a vertex at the head, at the tail, or at
//! both ends, which classifies it as *incoming* (free tail), *outgoing* (free
//! head) or *inner* (both ends attached). Lines with both ends free are not
//! diagrams, the inner lines must not form a directed cycle, and every vertex
//! must carry at least one line. Vertices and lines have no identity beyond
//! their position, so equality of diagrams is isomorphism; [`CanonicalKey`]
//! provides an order-independent encoding of the isomorphism class that the
//! algebra layers use to collect terms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;

use crate::limits::{guard, Limits, SizeGuardExceeded, SizeGuardKind};

/// One end of a line: attached to a vertex or hanging free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeEnd {
    Vertex(usize),
    Free,
}

impl EdgeEnd {
    pub fn vertex(self) -> Option<usize> {
        match self {
            EdgeEnd::Vertex(v) => Some(v),
            EdgeEnd::Free => None,
        }
    }
}

/// A single line, directed from `tail` to `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: EdgeEnd,
    pub head: EdgeEnd,
}

impl Edge {
    pub fn inner(tail: usize, head: usize) -> Self {
        Edge { tail: EdgeEnd::Vertex(tail), head: EdgeEnd::Vertex(head) }
    }

    pub fn incoming(head: usize) -> Self {
        Edge { tail: EdgeEnd::Free, head: EdgeEnd::Vertex(head) }
    }

    pub fn outgoing(tail: usize) -> Self {
        Edge { tail: EdgeEnd::Vertex(tail), head: EdgeEnd::Free }
    }
}

/// The three sorts of lines of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKind {
    /// Both ends attached to vertices.
    Inner,
    /// Free tail, head attached: the line enters the diagram from below.
    Incoming,
    /// Tail attached, free head: the line leaves the diagram upwards.
    Outgoing,
}

/// Sizes of the three line classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LineCounts {
    pub inner: usize,
    pub incoming: usize,
    pub outgoing: usize,
}

impl LineCounts {
    pub fn total(&self) -> usize {
        self.inner + self.incoming + self.outgoing
    }
}

/// Line indices grouped by class; a disjoint cover of `0..edge_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinePartition {
    pub inner: Vec<usize>,
    pub incoming: Vec<usize>,
    pub outgoing: Vec<usize>,
}

impl LinePartition {
    pub fn counts(&self) -> LineCounts {
        LineCounts {
            inner: self.inner.len(),
            incoming: self.incoming.len(),
            outgoing: self.outgoing.len(),
        }
    }
}

/// Why a raw vertex/edge list is not a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    /// A line may not have both ends free.
    BothEndsFree { edge: usize },
    /// The inner lines contain a directed cycle; the offending lines are
    /// listed in order, each one's head meeting the next one's tail.
    CycleDetected { edges: Vec<usize> },
    /// Every vertex must carry at least one line.
    IsolatedVertex { vertex: usize },
    /// A line end refers to a vertex index outside `0..vertex_count`.
    IndexOutOfRange { edge: usize, index: usize },
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::BothEndsFree { edge } => {
                write!(f, "edge {edge} has both ends free")
            }
            DiagramError::CycleDetected { edges } => {
                write!(f, "inner lines form a directed cycle: {edges:?}")
            }
            DiagramError::IsolatedVertex { vertex } => {
                write!(f, "vertex {vertex} carries no line")
            }
            DiagramError::IndexOutOfRange { edge, index } => {
                write!(f, "edge {edge} refers to missing vertex {index}")
            }
        }
    }
}

impl core::error::Error for DiagramError {}

/// A validated Heisenberg-Weyl diagram. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Diagram {
    /// Validates a raw vertex count and edge list.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, DiagramError> {
        let mut incident = vec![false; vertex_count];
        for (i, edge) in edges.iter().enumerate() {
            for end in [edge.tail, edge.head] {
                if let EdgeEnd::Vertex(v) = end {
                    if v >= vertex_count {
                        return Err(DiagramError::IndexOutOfRange { edge: i, index: v });
                    }
                    incident[v] = true;
                }
            }
            if edge.tail == EdgeEnd::Free && edge.head == EdgeEnd::Free {
                return Err(DiagramError::BothEndsFree { edge: i });
            }
            if let (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) = (edge.tail, edge.head) {
                if t == h {
                    return Err(DiagramError::CycleDetected { edges: vec![i] });
                }
            }
        }
        if let Some(vertex) = incident.iter().position(|&used| !used) {
            return Err(DiagramError::IsolatedVertex { vertex });
        }
        if let Some(cycle) = find_cycle(vertex_count, &edges) {
            return Err(DiagramError::CycleDetected { edges: cycle });
        }
        Ok(Diagram { vertex_count, edges })
    }

    /// The empty diagram: no vertices, no lines. Unit of the diagram algebra.
    pub fn empty() -> Self {
        Diagram { vertex_count: 0, edges: Vec::new() }
    }

    /// One vertex with a single incoming line.
    pub fn incoming_line() -> Self {
        Diagram { vertex_count: 1, edges: vec![Edge::incoming(0)] }
    }

    /// One vertex with a single outgoing line.
    pub fn outgoing_line() -> Self {
        Diagram { vertex_count: 1, edges: vec![Edge::outgoing(0)] }
    }

    /// Two vertices joined by a single inner line.
    pub fn inner_line() -> Self {
        Diagram { vertex_count: 2, edges: vec![Edge::inner(0, 1)] }
    }

    /// One vertex with one incoming and one outgoing line.
    pub fn single_vertex_pass() -> Self {
        Diagram { vertex_count: 1, edges: vec![Edge::incoming(0), Edge::outgoing(0)] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total number of lines.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0 && self.edges.is_empty()
    }

    pub fn line_kind(&self, edge: usize) -> LineKind {
        match (self.edges[edge].tail, self.edges[edge].head) {
            (EdgeEnd::Vertex(_), EdgeEnd::Vertex(_)) => LineKind::Inner,
            (EdgeEnd::Free, EdgeEnd::Vertex(_)) => LineKind::Incoming,
            (EdgeEnd::Vertex(_), EdgeEnd::Free) => LineKind::Outgoing,
            (EdgeEnd::Free, EdgeEnd::Free) => unreachable!("validated diagram"),
        }
    }

    /// Splits the line indices into the three classes.
    pub fn line_partition(&self) -> LinePartition {
        let mut partition = LinePartition::default();
        for i in 0..self.edges.len() {
            match self.line_kind(i) {
                LineKind::Inner => partition.inner.push(i),
                LineKind::Incoming => partition.incoming.push(i),
                LineKind::Outgoing => partition.outgoing.push(i),
            }
        }
        partition
    }

    pub fn line_counts(&self) -> LineCounts {
        let mut counts = LineCounts::default();
        for i in 0..self.edges.len() {
            match self.line_kind(i) {
                LineKind::Inner => counts.inner += 1,
                LineKind::Incoming => counts.incoming += 1,
                LineKind::Outgoing => counts.outgoing += 1,
            }
        }
        counts
    }

    /// Places `self` and `other` side by side; `other`'s vertices are shifted
    /// past `self`'s. Equals the composition along the empty matching.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let offset = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| shift_edge(*e, offset)));
        Diagram { vertex_count: self.vertex_count + other.vertex_count, edges }
    }

    /// Applies a vertex relabeling; `perm[v]` is the new index of vertex `v`.
    /// Panics if `perm` is not a permutation of `0..vertex_count`.
    pub fn relabeled(&self, perm: &[usize]) -> Diagram {
        assert_eq!(perm.len(), self.vertex_count);
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            assert!(p < self.vertex_count && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let map = |end: EdgeEnd| match end {
            EdgeEnd::Vertex(v) => EdgeEnd::Vertex(perm[v]),
            EdgeEnd::Free => EdgeEnd::Free,
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { tail: map(e.tail), head: map(e.head) })
            .collect();
        Diagram { vertex_count: self.vertex_count, edges }
    }

    /// The subdiagram induced by a set of lines: the listed lines keep their
    /// ends, and the vertex set shrinks to the vertices they touch.
    pub fn restrict(&self, line_indices: &[usize]) -> Diagram {
        let mut used = BTreeSet::new();
        for &i in line_indices {
            for end in [self.edges[i].tail, self.edges[i].head] {
                if let EdgeEnd::Vertex(v) = end {
                    used.insert(v);
                }
            }
        }
        let renumber: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let map = |end: EdgeEnd| match end {
            EdgeEnd::Vertex(v) => EdgeEnd::Vertex(renumber[&v]),
            EdgeEnd::Free => EdgeEnd::Free,
        };
        let edges = line_indices
            .iter()
            .map(|&i| Edge { tail: map(self.edges[i].tail), head: map(self.edges[i].head) })
            .collect();
        Diagram { vertex_count: used.len(), edges }
    }

    /// Order-independent encoding of the isomorphism class, together with the
    /// canonically relabeled representative.
    pub fn canonicalize(&self) -> (CanonicalKey, Diagram) {
        let key = self.canonical_key();
        let representative = key.representative();
        (key, representative)
    }

    /// Order-independent encoding of the isomorphism class.
    ///
    /// Connected components are minimized independently over their vertex
    /// relabelings (pruned by degree signatures: only label assignments that
    /// keep vertices of equal signature interchangeable need to be searched),
    /// then assembled in sorted order. Two diagrams receive equal keys exactly
    /// when they are isomorphic.
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut component_keys: Vec<ComponentKey> = components(self)
            .into_iter()
            .map(|(vertices, edge_indices)| canonical_component(self, &vertices, &edge_indices))
            .collect();
        component_keys.sort();
        let mut tokens = Vec::with_capacity(self.edges.len());
        let mut offset = 0u64;
        for component in &component_keys {
            for &(tail, head) in &component.tokens {
                tokens.push((shift_token(tail, offset), shift_token(head, offset)));
            }
            offset += component.vertex_count as u64;
        }
        tokens.sort_unstable();
        CanonicalKey { vertex_count: self.vertex_count, tokens }
    }

    /// [`Diagram::canonical_key`] behind the vertex-count size guard.
    pub fn canonical_key_checked(&self, limits: &Limits) -> Result<CanonicalKey, SizeGuardExceeded> {
        guard(SizeGuardKind::Vertices, self.vertex_count, limits.max_vertices)?;
        Ok(self.canonical_key())
    }

    /// The canonically relabeled representative of this isomorphism class.
    pub fn canonical_form(&self) -> Diagram {
        self.canonical_key().representative()
    }

    /// True exactly when the two diagrams are related by vertex/edge
    /// bijections commuting with the head and tail maps.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.canonical_key() == other.canonical_key()
    }
}

fn shift_edge(edge: Edge, offset: usize) -> Edge {
    let map = |end: EdgeEnd| match end {
        EdgeEnd::Vertex(v) => EdgeEnd::Vertex(v + offset),
        EdgeEnd::Free => EdgeEnd::Free,
    };
    Edge { tail: map(edge.tail), head: map(edge.head) }
}

/// Sentinel for a free end inside canonical tokens; sorts after every vertex.
const FREE_TOKEN: u64 = u64::MAX;

fn shift_token(token: u64, offset: u64) -> u64 {
    if token == FREE_TOKEN {
        FREE_TOKEN
    } else {
        token + offset
    }
}

/// Canonical encoding of an isomorphism class: the vertex count followed by
/// the sorted line tokens of a distinguished relabeling. The encoding is
/// lossless; [`CanonicalKey::representative`] rebuilds the diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    vertex_count: usize,
    tokens: Vec<(u64, u64)>,
}

impl CanonicalKey {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty_diagram(&self) -> bool {
        self.vertex_count == 0 && self.tokens.is_empty()
    }

    /// Rebuilds the canonically labeled diagram this key encodes.
    pub fn representative(&self) -> Diagram {
        let decode = |token: u64| {
            if token == FREE_TOKEN {
                EdgeEnd::Free
            } else {
                EdgeEnd::Vertex(token as usize)
            }
        };
        let edges = self
            .tokens
            .iter()
            .map(|&(tail, head)| Edge { tail: decode(tail), head: decode(head) })
            .collect();
        let diagram = Diagram { vertex_count: self.vertex_count, edges };
        debug_assert!(
            Diagram::new(diagram.vertex_count, diagram.edges.clone()).is_ok(),
            "canonical keys encode valid diagrams"
        );
        diagram
    }

    /// Flat byte rendering, usable as a map key across process boundaries.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::with_capacity(8 + 16 * self.tokens.len());
        bytes.extend_from_slice(&(self.vertex_count as u64).to_be_bytes());
        for &(tail, head) in &self.tokens {
            bytes.extend_from_slice(&tail.to_be_bytes());
            bytes.extend_from_slice(&head.to_be_bytes());
        }
        bytes
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct ComponentKey {
    vertex_count: usize,
    tokens: Vec<(u64, u64)>,
}

/// Connected components of the inner-line graph. Free lines belong to the
/// component of their attached vertex. Returns (vertices, line indices) per
/// component, vertices ascending, components in order of smallest vertex.
fn components(diagram: &Diagram) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = diagram.vertex_count;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for edge in &diagram.edges {
        if let (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) = (edge.tail, edge.head) {
            let (rt, rh) = (find(&mut parent, t), find(&mut parent, h));
            if rt != rh {
                parent[rt] = rh;
            }
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        by_root.entry(root).or_default().0.push(v);
    }
    for (i, edge) in diagram.edges.iter().enumerate() {
        let v = edge
            .tail
            .vertex()
            .or_else(|| edge.head.vertex())
            .expect("validated diagram has no fully free line");
        let root = find(&mut parent, v);
        by_root.get_mut(&root).expect("vertex registered").1.push(i);
    }
    by_root.into_values().collect()
}

/// Degree signature of a vertex; isomorphisms preserve it, so the canonical
/// search only permutes vertices within equal-signature groups.
type Signature = (usize, usize, usize, usize);

fn signature(diagram: &Diagram, vertex: usize) -> Signature {
    let mut inner_in = 0;
    let mut inner_out = 0;
    let mut free_in = 0;
    let mut free_out = 0;
    for edge in &diagram.edges {
        match (edge.tail, edge.head) {
            (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) => {
                if t == vertex {
                    inner_out += 1;
                }
                if h == vertex {
                    inner_in += 1;
                }
            }
            (EdgeEnd::Free, EdgeEnd::Vertex(h)) if h == vertex => free_in += 1,
            (EdgeEnd::Vertex(t), EdgeEnd::Free) if t == vertex => free_out += 1,
            _ => {}
        }
    }
    (inner_in, inner_out, free_in, free_out)
}

/// Lexicographically minimal sorted token list of one component over the
/// signature-respecting relabelings.
fn canonical_component(
    diagram: &Diagram,
    vertices: &[usize],
    edge_indices: &[usize],
) -> ComponentKey {
    let mut groups: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
    for &v in vertices {
        groups.entry(signature(diagram, v)).or_default().push(v);
    }
    // Label slots are handed out to signature groups in signature order;
    // the search ranges over the within-group assignments only.
    let mut slot_of_group_start = Vec::new();
    let mut group_members: Vec<&[usize]> = Vec::new();
    let mut next_slot = 0usize;
    for members in groups.values() {
        slot_of_group_start.push(next_slot);
        group_members.push(members);
        next_slot += members.len();
    }
    let group_perms: Vec<Vec<Vec<usize>>> = group_members
        .iter()
        .map(|members| {
            members
                .iter()
                .copied()
                .permutations(members.len())
                .collect()
        })
        .collect();

    let max_vertex = vertices.iter().copied().max().map_or(0, |m| m + 1);
    let mut labels = vec![0u64; max_vertex];
    let mut choice = vec![0usize; group_perms.len()];
    let mut best: Option<Vec<(u64, u64)>> = None;
    loop {
        for (g, &perm_index) in choice.iter().enumerate() {
            let perm = &group_perms[g][perm_index];
            for (offset, &vertex) in perm.iter().enumerate() {
                labels[vertex] = (slot_of_group_start[g] + offset) as u64;
            }
        }
        let mut tokens: Vec<(u64, u64)> = edge_indices
            .iter()
            .map(|&i| {
                let encode = |end: EdgeEnd| match end {
                    EdgeEnd::Vertex(v) => labels[v],
                    EdgeEnd::Free => FREE_TOKEN,
                };
                (encode(diagram.edges[i].tail), encode(diagram.edges[i].head))
            })
            .collect();
        tokens.sort_unstable();
        if best.as_ref().is_none_or(|b| tokens < *b) {
            best = Some(tokens);
        }
        // Odometer over the per-group permutation choices.
        let mut g = 0;
        loop {
            if g == choice.len() {
                return ComponentKey {
                    vertex_count: vertices.len(),
                    tokens: best.expect("at least one assignment"),
                };
            }
            choice[g] += 1;
            if choice[g] < group_perms[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

/// Searches the inner lines for a directed cycle and reports its line
/// indices in traversal order.
fn find_cycle(vertex_count: usize, edges: &[Edge]) -> Option<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for (i, edge) in edges.iter().enumerate() {
        if let (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) = (edge.tail, edge.head) {
            adjacency[t].push((h, i));
        }
    }
    // 0 = unvisited, 1 = on the current path, 2 = done
    let mut color = vec![0u8; vertex_count];
    let mut path_vertices = Vec::new();
    let mut path_edges = Vec::new();
    for start in 0..vertex_count {
        if color[start] == 0 {
            if let Some(cycle) = dfs_cycle(
                start,
                &adjacency,
                &mut color,
                &mut path_vertices,
                &mut path_edges,
            ) {
                return Some(cycle);
            }
        }
    }
    None
}

fn dfs_cycle(
    vertex: usize,
    adjacency: &[Vec<(usize, usize)>],
    color: &mut [u8],
    path_vertices: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    color[vertex] = 1;
    path_vertices.push(vertex);
    for &(next, edge) in &adjacency[vertex] {
        if color[next] == 1 {
            let from = path_vertices
                .iter()
                .position(|&v| v == next)
                .expect("gray vertex is on the path");
            let mut cycle = path_edges[from..].to_vec();
            cycle.push(edge);
            return Some(cycle);
        }
        if color[next] == 0 {
            path_edges.push(edge);
            if let Some(cycle) = dfs_cycle(next, adjacency, color, path_vertices, path_edges) {
                return Some(cycle);
            }
            path_edges.pop();
        }
    }
    path_vertices.pop();
    color[vertex] = 2;
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(vertex_count: usize, edges: Vec<Edge>) -> Diagram {
        Diagram::new(vertex_count, edges).expect("test diagram is valid")
    }

    /// All permutations of 0..n, for orbit tests on small diagrams.
    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        (0..n).permutations(n).collect()
    }

    #[test]
    fn minimal_legal_diagram_classifies_lines() {
        let d = diagram(1, vec![Edge::incoming(0), Edge::outgoing(0)]);
        let counts = d.line_counts();
        assert_eq!(counts, LineCounts { inner: 0, incoming: 1, outgoing: 1 });
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Diagram::new(2, vec![Edge::inner(0, 1), Edge::inner(1, 0)]).unwrap_err();
        match err {
            DiagramError::CycleDetected { edges } => {
                assert_eq!(edges.len(), 2);
                // The reported lines really form a cycle.
                assert_eq!(edges[0], 0);
                assert_eq!(edges[1], 1);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let err = Diagram::new(1, vec![Edge::inner(0, 0)]).unwrap_err();
        assert!(matches!(err, DiagramError::CycleDetected { .. }));
    }

    #[test]
    fn isolated_vertex_is_rejected() {
        let err = Diagram::new(1, vec![]).unwrap_err();
        assert_eq!(err, DiagramError::IsolatedVertex { vertex: 0 });
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        let err = Diagram::new(1, vec![Edge::inner(0, 3)]).unwrap_err();
        assert_eq!(err, DiagramError::IndexOutOfRange { edge: 0, index: 3 });
    }

    #[test]
    fn both_ends_free_is_rejected() {
        let err =
            Diagram::new(0, vec![Edge { tail: EdgeEnd::Free, head: EdgeEnd::Free }]).unwrap_err();
        assert_eq!(err, DiagramError::BothEndsFree { edge: 0 });
    }

    #[test]
    fn empty_diagram_has_empty_partition() {
        let d = Diagram::empty();
        let partition = d.line_partition();
        assert!(partition.inner.is_empty());
        assert!(partition.incoming.is_empty());
        assert!(partition.outgoing.is_empty());
    }

    #[test]
    fn chain_partition_sizes() {
        let d = diagram(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]);
        let counts = d.line_counts();
        assert_eq!((counts.inner, counts.incoming, counts.outgoing), (1, 1, 1));
        assert_eq!(counts.total(), d.edge_count());
    }

    #[test]
    fn canonical_key_is_constant_on_relabeling_orbits() {
        let samples = [
            diagram(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]),
            diagram(3, vec![Edge::inner(0, 1), Edge::inner(0, 2), Edge::outgoing(2)]),
            diagram(4, vec![Edge::inner(0, 1), Edge::inner(2, 3), Edge::incoming(2)]),
            diagram(2, vec![Edge::inner(0, 1), Edge::inner(0, 1), Edge::incoming(0)]),
        ];
        for d in &samples {
            let key = d.canonical_key();
            for perm in all_permutations(d.vertex_count()) {
                assert_eq!(d.relabeled(&perm).canonical_key(), key);
            }
        }
    }

    #[test]
    fn single_line_types_have_distinct_keys() {
        assert_ne!(
            Diagram::incoming_line().canonical_key(),
            Diagram::outgoing_line().canonical_key()
        );
    }

    #[test]
    fn disjoint_union_commutes_up_to_isomorphism() {
        let a = diagram(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]);
        let b = Diagram::inner_line();
        assert!(a.disjoint_union(&b).is_isomorphic(&b.disjoint_union(&a)));
        // Brute-force cross-check on one pair: some relabeling of a⊔b equals b⊔a.
        let ab = a.disjoint_union(&b);
        let ba = b.disjoint_union(&a);
        let found = all_permutations(ab.vertex_count()).into_iter().any(|perm| {
            let mut lhs = ab.relabeled(&perm).edges().to_vec();
            let mut rhs = ba.edges().to_vec();
            lhs.sort_unstable();
            rhs.sort_unstable();
            lhs == rhs
        });
        assert!(found);
    }

    #[test]
    fn disjoint_union_adds_line_counts() {
        let a = Diagram::outgoing_line();
        let b = Diagram::incoming_line();
        let u = a.disjoint_union(&b);
        let counts = u.line_counts();
        assert_eq!((counts.inner, counts.incoming, counts.outgoing), (0, 1, 1));
        let empty = Diagram::empty();
        assert!(empty.disjoint_union(&a).is_isomorphic(&a));
    }

    #[test]
    fn isomorphism_spot_checks() {
        let d = Diagram::single_vertex_pass();
        assert!(d.is_isomorphic(&d));
        assert!(!Diagram::incoming_line().is_isomorphic(&Diagram::outgoing_line()));
        // Two ways of numbering the same two-vertex chain.
        let c1 = diagram(
            2,
            vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)],
        );
        let c2 = diagram(
            2,
            vec![Edge::outgoing(0), Edge::inner(1, 0), Edge::incoming(1)],
        );
        assert!(c1.is_isomorphic(&c2));
    }

    #[test]
    fn canonical_representative_round_trips() {
        let d = diagram(3, vec![Edge::inner(2, 0), Edge::incoming(2), Edge::outgoing(0), Edge::incoming(1)]);
        let (key, representative) = d.canonicalize();
        assert!(representative.is_isomorphic(&d));
        assert_eq!(representative.canonical_key(), key);
        assert_eq!(key.representative(), representative);
    }

    #[test]
    fn canonical_key_checked_guards_vertex_count() {
        let limits = Limits { max_vertices: 1, ..Limits::default() };
        let d = Diagram::inner_line();
        let err = d.canonical_key_checked(&limits).unwrap_err();
        assert_eq!(err.kind, SizeGuardKind::Vertices);
        assert_eq!((err.value, err.limit), (2, 1));
    }

    #[test]
    fn parallel_lines_are_distinct_from_a_path() {
        // Two parallel inner lines vs a length-two inner path.
        let parallel = diagram(2, vec![Edge::inner(0, 1), Edge::inner(0, 1)]);
        let path = diagram(3, vec![Edge::inner(0, 1), Edge::inner(1, 2)]);
        assert!(!parallel.is_isomorphic(&path));
        assert_eq!(parallel.edge_count(), path.edge_count());
    }

    #[test]
    fn restrict_keeps_ends_and_drops_unused_vertices() {
        let d = diagram(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]);
        let left = d.restrict(&[0]);
        assert!(left.is_isomorphic(&Diagram::incoming_line()));
        let both = d.restrict(&[0, 1, 2]);
        assert!(both.is_isomorphic(&d));
        let nothing = d.restrict(&[]);
        assert!(nothing.is_empty());
    }
}
