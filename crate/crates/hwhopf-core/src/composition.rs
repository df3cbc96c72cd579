//! Matchings between free lines and the grafting of diagrams along them.
//!
//! A matching pairs incoming lines of an upper diagram with outgoing lines of
//! a lower diagram, injectively on both sides. Composing along a matching
//! fuses each matched pair into a single inner line running from the lower
//! diagram into the upper one; everything else is carried over unchanged.

use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::diagram::{Diagram, Edge, EdgeEnd, LineKind};

/// An injective pairing of incoming lines of the upper diagram with outgoing
/// lines of the lower diagram. Entries are `(upper line index, lower line
/// index)` into the diagrams' edge lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Builds a matching from `(upper incoming, lower outgoing)` index pairs.
    /// The pairs are kept sorted by upper index; validity against concrete
    /// diagrams is checked by [`compose`].
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn empty() -> Self {
        Matching { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Why a matching does not fit a pair of diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingError {
    /// An index does not name a line of the required class.
    InvalidMatching { upper: usize, lower: usize, reason: MatchingDefect },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingDefect {
    UpperNotIncoming,
    LowerNotOutgoing,
    DuplicateUpper,
    DuplicateLower,
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let MatchingError::InvalidMatching { upper, lower, reason } = self;
        let what = match reason {
            MatchingDefect::UpperNotIncoming => "upper index is not an incoming line",
            MatchingDefect::LowerNotOutgoing => "lower index is not an outgoing line",
            MatchingDefect::DuplicateUpper => "upper line matched twice",
            MatchingDefect::DuplicateLower => "lower line matched twice",
        };
        write!(f, "invalid matching pair ({upper}, {lower}): {what}")
    }
}

impl core::error::Error for MatchingError {}

/// Where a line of a composite diagram came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Carried over from the upper diagram (index into its edge list).
    Upper(usize),
    /// Carried over from the lower diagram.
    Lower(usize),
    /// Fusion of an upper incoming line with a lower outgoing line.
    Fused { upper: usize, lower: usize },
}

/// Number of matchings of size `i` between `n_minus` incoming and `n_plus`
/// outgoing lines: `C(n_minus, i) * C(n_plus, i) * i!`.
pub fn matching_count(n_minus: usize, n_plus: usize, i: usize) -> BigUint {
    if i > n_minus || i > n_plus {
        return BigUint::zero();
    }
    let binom = |n: usize, k: usize| {
        num_integer::binomial(BigUint::from(n), BigUint::from(k))
    };
    let mut factorial = BigUint::one();
    for j in 2..=i {
        factorial *= BigUint::from(j);
    }
    binom(n_minus, i) * binom(n_plus, i) * factorial
}

/// All matchings between the incoming lines of `upper` and the outgoing lines
/// of `lower`. With `size` given, exactly the matchings of that many pairs
/// (none if it exceeds either side); without it, all sizes from zero upwards.
/// The order is deterministic: sizes ascending, then lexicographic on the
/// sorted pair sequences.
pub fn enumerate_matchings(
    upper: &Diagram,
    lower: &Diagram,
    size: Option<usize>,
) -> Vec<Matching> {
    let incoming = upper.line_partition().incoming;
    let outgoing = lower.line_partition().outgoing;
    let max = incoming.len().min(outgoing.len());
    let sizes: Vec<usize> = match size {
        Some(i) if i > max => Vec::new(),
        Some(i) => alloc::vec![i],
        None => (0..=max).collect(),
    };
    let mut matchings = Vec::new();
    for i in sizes {
        for chosen_incoming in incoming.iter().copied().combinations(i) {
            for chosen_outgoing in outgoing.iter().copied().permutations(i) {
                matchings.push(Matching {
                    pairs: chosen_incoming
                        .iter()
                        .copied()
                        .zip(chosen_outgoing)
                        .collect(),
                });
            }
        }
    }
    matchings
}

/// Grafts `upper` onto `lower` along `m`: the lower diagram keeps its vertex
/// numbering, the upper one is shifted past it, and every matched pair of
/// lines becomes one inner line with the lower tail and the upper head.
pub fn compose(upper: &Diagram, m: &Matching, lower: &Diagram) -> Result<Diagram, MatchingError> {
    compose_traced(upper, m, lower).map(|(diagram, _)| diagram)
}

/// [`compose`], also reporting the origin of every line of the composite.
/// Output lines appear lower-first in original order (with matched outgoing
/// lines replaced in place by their fusions), then the unmatched upper lines.
pub fn compose_traced(
    upper: &Diagram,
    m: &Matching,
    lower: &Diagram,
) -> Result<(Diagram, Vec<EdgeOrigin>), MatchingError> {
    validate_matching(upper, m, lower)?;
    let offset = lower.vertex_count();
    let shift = |end: EdgeEnd| match end {
        EdgeEnd::Vertex(v) => EdgeEnd::Vertex(v + offset),
        EdgeEnd::Free => EdgeEnd::Free,
    };

    let mut fused_by_lower: Vec<Option<usize>> = alloc::vec![None; lower.edge_count()];
    let mut matched_upper: Vec<bool> = alloc::vec![false; upper.edge_count()];
    for &(u, l) in m.pairs() {
        fused_by_lower[l] = Some(u);
        matched_upper[u] = true;
    }

    let mut edges = Vec::with_capacity(upper.edge_count() + lower.edge_count() - m.len());
    let mut origins = Vec::with_capacity(edges.capacity());
    for (l, edge) in lower.edges().iter().enumerate() {
        match fused_by_lower[l] {
            Some(u) => {
                edges.push(Edge { tail: edge.tail, head: shift(upper.edges()[u].head) });
                origins.push(EdgeOrigin::Fused { upper: u, lower: l });
            }
            None => {
                edges.push(*edge);
                origins.push(EdgeOrigin::Lower(l));
            }
        }
    }
    for (u, edge) in upper.edges().iter().enumerate() {
        if !matched_upper[u] {
            edges.push(Edge { tail: shift(edge.tail), head: shift(edge.head) });
            origins.push(EdgeOrigin::Upper(u));
        }
    }

    let diagram = Diagram::new(lower.vertex_count() + upper.vertex_count(), edges)
        .expect("grafting along a matching preserves validity");
    Ok((diagram, origins))
}

fn validate_matching(upper: &Diagram, m: &Matching, lower: &Diagram) -> Result<(), MatchingError> {
    let mut seen_upper = alloc::vec![false; upper.edge_count()];
    let mut seen_lower = alloc::vec![false; lower.edge_count()];
    for &(u, l) in m.pairs() {
        let fail = |reason| MatchingError::InvalidMatching { upper: u, lower: l, reason };
        if u >= upper.edge_count() || upper.line_kind(u) != LineKind::Incoming {
            return Err(fail(MatchingDefect::UpperNotIncoming));
        }
        if l >= lower.edge_count() || lower.line_kind(l) != LineKind::Outgoing {
            return Err(fail(MatchingDefect::LowerNotOutgoing));
        }
        if seen_upper[u] {
            return Err(fail(MatchingDefect::DuplicateUpper));
        }
        if seen_lower[l] {
            return Err(fail(MatchingDefect::DuplicateLower));
        }
        seen_upper[u] = true;
        seen_lower[l] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::LineCounts;
    use alloc::vec;

    #[test]
    fn one_to_one_matching_is_unique() {
        let upper = Diagram::single_vertex_pass();
        let lower = Diagram::single_vertex_pass();
        let found = enumerate_matchings(&upper, &lower, Some(1));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].pairs(), &[(0, 1)]);
    }

    #[test]
    fn matching_counts_match_enumeration() {
        // 4 incoming lines upstairs, 3 outgoing lines downstairs.
        let upper = Diagram::new(
            1,
            vec![Edge::incoming(0), Edge::incoming(0), Edge::incoming(0), Edge::incoming(0)],
        )
        .unwrap();
        let lower = Diagram::new(
            1,
            vec![Edge::outgoing(0), Edge::outgoing(0), Edge::outgoing(0)],
        )
        .unwrap();
        for i in 0..=5 {
            let expected = matching_count(4, 3, i);
            let found = enumerate_matchings(&upper, &lower, Some(i)).len();
            assert_eq!(BigUint::from(found), expected, "size {i}");
        }
        assert_eq!(enumerate_matchings(&upper, &lower, Some(2)).len(), 36);
    }

    #[test]
    fn matching_count_convention_for_short_sides() {
        assert_eq!(matching_count(1, 1, 1), BigUint::from(1u32));
        assert_eq!(matching_count(4, 3, 2), BigUint::from(36u32));
        assert_eq!(matching_count(2, 3, 4), BigUint::zero());
    }

    #[test]
    fn size_zero_gives_exactly_the_empty_matching() {
        let upper = Diagram::incoming_line();
        let lower = Diagram::outgoing_line();
        let found = enumerate_matchings(&upper, &lower, Some(0));
        assert_eq!(found, vec![Matching::empty()]);
    }

    #[test]
    fn composing_two_passes_gives_the_chain() {
        let d = Diagram::single_vertex_pass();
        let m = Matching::new(vec![(0, 1)]);
        let chain = compose(&d, &m, &d).unwrap();
        let counts = chain.line_counts();
        assert_eq!(counts, LineCounts { inner: 1, incoming: 1, outgoing: 1 });
        let expected = Diagram::new(
            2,
            vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)],
        )
        .unwrap();
        assert!(chain.is_isomorphic(&expected));
    }

    #[test]
    fn empty_matching_composes_to_disjoint_union() {
        let d = Diagram::single_vertex_pass();
        let e = Diagram::inner_line();
        let composed = compose(&d, &Matching::empty(), &e).unwrap();
        assert!(composed.is_isomorphic(&d.disjoint_union(&e)));
    }

    #[test]
    fn line_counts_after_composition_are_matching_independent() {
        let upper = Diagram::new(
            2,
            vec![Edge::incoming(0), Edge::incoming(1), Edge::inner(0, 1), Edge::outgoing(1)],
        )
        .unwrap();
        let lower = Diagram::new(
            1,
            vec![Edge::outgoing(0), Edge::outgoing(0), Edge::incoming(0)],
        )
        .unwrap();
        let up = upper.line_counts();
        let low = lower.line_counts();
        for m in enumerate_matchings(&upper, &lower, None) {
            let i = m.len();
            let composed = compose(&upper, &m, &lower).unwrap();
            let counts = composed.line_counts();
            assert_eq!(counts.outgoing, up.outgoing + low.outgoing - i);
            assert_eq!(counts.incoming, up.incoming + low.incoming - i);
            assert_eq!(counts.inner, up.inner + low.inner + i);
        }
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        let d = Diagram::single_vertex_pass();
        // Line 1 of the upper diagram is outgoing, not incoming.
        let err = compose(&d, &Matching::new(vec![(1, 1)]), &d).unwrap_err();
        assert!(matches!(
            err,
            MatchingError::InvalidMatching { reason: MatchingDefect::UpperNotIncoming, .. }
        ));
        // Lower index names an incoming line.
        let err = compose(&d, &Matching::new(vec![(0, 0)]), &d).unwrap_err();
        assert!(matches!(
            err,
            MatchingError::InvalidMatching { reason: MatchingDefect::LowerNotOutgoing, .. }
        ));
    }

    #[test]
    fn duplicate_components_are_rejected() {
        let upper =
            Diagram::new(1, vec![Edge::incoming(0), Edge::incoming(0), Edge::outgoing(0)]).unwrap();
        let lower =
            Diagram::new(1, vec![Edge::outgoing(0), Edge::outgoing(0), Edge::incoming(0)]).unwrap();
        let err = compose(&upper, &Matching::new(vec![(0, 0), (1, 0)]), &lower).unwrap_err();
        assert!(matches!(
            err,
            MatchingError::InvalidMatching { reason: MatchingDefect::DuplicateLower, .. }
        ));
    }

    #[test]
    fn enumeration_size_is_grouped_and_lexicographic() {
        let upper =
            Diagram::new(1, vec![Edge::incoming(0), Edge::incoming(0), Edge::outgoing(0)]).unwrap();
        let lower =
            Diagram::new(1, vec![Edge::outgoing(0), Edge::outgoing(0), Edge::incoming(0)]).unwrap();
        let all = enumerate_matchings(&upper, &lower, None);
        let sizes: Vec<usize> = all.iter().map(Matching::len).collect();
        assert_eq!(sizes, vec![0, 1, 1, 1, 1, 2, 2]);
        // Σ_i C(2,i)² i! = 1 + 4 + 2.
        assert_eq!(all.len(), 7);
        let mut sorted_within = all.clone();
        sorted_within[1..5].sort();
        sorted_within[5..].sort();
        assert_eq!(all, sorted_within);
    }
}
