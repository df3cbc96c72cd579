//! Exhaustive corpora of small diagrams, one representative per isomorphism
//! class, shared by every property suite.
//!
//! Diagrams are grown line by line: every diagram with `n` lines arises from
//! one with `n - 1` lines by adding a single typed line whose endpoints are
//! either existing or fresh vertices (deleting any line of a valid diagram,
//! dropping the vertices it leaves bare, yields a valid smaller diagram, so
//! this reaches every class). Canonical keys deduplicate the results.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diagram::{CanonicalKey, Diagram, Edge, EdgeEnd};

/// All diagram classes with at most `max_edges` lines, canonically labeled,
/// ordered by line count and then by canonical key.
pub fn corpus(max_edges: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut layer: BTreeMap<CanonicalKey, Diagram> = BTreeMap::new();
    let empty = Diagram::empty();
    layer.insert(empty.canonical_key(), empty);
    out.extend(layer.values().cloned());
    for _ in 1..=max_edges {
        let mut next: BTreeMap<CanonicalKey, Diagram> = BTreeMap::new();
        for diagram in layer.values() {
            for extended in extensions(diagram) {
                let (key, representative) = extended.canonicalize();
                next.entry(key).or_insert(representative);
            }
        }
        out.extend(next.values().cloned());
        layer = next;
    }
    out
}

/// All diagram classes with exactly `edges` lines.
pub fn corpus_exact(edges: usize) -> Vec<Diagram> {
    corpus(edges)
        .into_iter()
        .filter(|d| d.edge_count() == edges)
        .collect()
}

/// Every way of adding one line to a diagram, up to the choice of endpoints
/// among existing and fresh vertices. Cycle-creating inner lines are skipped.
fn extensions(diagram: &Diagram) -> Vec<Diagram> {
    let n = diagram.vertex_count();
    let mut out = Vec::new();
    let mut push = |vertex_count: usize, extra: Edge| {
        let mut edges = diagram.edges().to_vec();
        edges.push(extra);
        if let Ok(valid) = Diagram::new(vertex_count, edges) {
            out.push(valid);
        }
    };

    for head in 0..n {
        push(n, Edge::incoming(head));
    }
    push(n + 1, Edge::incoming(n));

    for tail in 0..n {
        push(n, Edge::outgoing(tail));
    }
    push(n + 1, Edge::outgoing(n));

    let reach = reachability(diagram);
    for tail in 0..n {
        for head in 0..n {
            // Adding tail -> head closes a cycle iff head already reaches tail.
            if tail != head && !reach[head][tail] {
                push(n, Edge::inner(tail, head));
            }
        }
    }
    for other in 0..n {
        push(n + 1, Edge::inner(other, n));
        push(n + 1, Edge::inner(n, other));
    }
    push(n + 2, Edge::inner(n, n + 1));

    out
}

/// `reach[u][v]` is true when an inner-line path leads from `u` to `v`.
fn reachability(diagram: &Diagram) -> Vec<Vec<bool>> {
    let n = diagram.vertex_count();
    let mut reach = alloc::vec![alloc::vec![false; n]; n];
    for (v, row) in reach.iter_mut().enumerate() {
        row[v] = true;
    }
    for edge in diagram.edges() {
        if let (EdgeEnd::Vertex(t), EdgeEnd::Vertex(h)) = (edge.tail, edge.head) {
            reach[t][h] = true;
        }
    }
    for mid in 0..n {
        for from in 0..n {
            if reach[from][mid] {
                for to in 0..n {
                    if reach[mid][to] {
                        reach[from][to] = true;
                    }
                }
            }
        }
    }
    reach
}
