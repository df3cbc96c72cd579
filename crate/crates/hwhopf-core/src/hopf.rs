//! Hopf structure on the diagram algebra: splitting a diagram over the
//! ordered partitions of its line set.
//!
//! The coproduct sends a diagram to the sum of all splittings `Γ|_L ⊗ Γ|_R`
//! over subsets `L` of its lines; the counit extracts the coefficient of the
//! empty diagram; the antipode is the alternating sum, over ordered
//! partitions of the line set into nonempty blocks, of the products of the
//! corresponding restrictions. Restriction keeps each line's ends and drops
//! the vertices no chosen line touches, so the empty line set always yields
//! the empty diagram and the counit laws hold on the nose.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{basis_product, DiagramSum};
use crate::diagram::{CanonicalKey, Diagram};
use crate::limits::{guard, Limits, SizeGuardExceeded, SizeGuardKind};
use crate::Rational;

/// A finitely supported rational combination of ordered pairs of diagram
/// classes: an element of the tensor square of the diagram algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSum {
    terms: BTreeMap<(CanonicalKey, CanonicalKey), (Diagram, Diagram, Rational)>,
}

impl TensorSum {
    pub fn zero() -> Self {
        TensorSum::default()
    }

    pub fn add_term(&mut self, coefficient: Rational, left: &Diagram, right: &Diagram) {
        if coefficient.is_zero() {
            return;
        }
        let (left_key, left_rep) = left.canonicalize();
        let (right_key, right_rep) = right.canonicalize();
        match self.terms.entry((left_key, right_key)) {
            alloc::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert((left_rep, right_rep, coefficient));
            }
            alloc::collections::btree_map::Entry::Occupied(mut entry) => {
                entry.get_mut().2 += coefficient;
                if entry.get().2.is_zero() {
                    entry.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical key order.
    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&CanonicalKey, &CanonicalKey, &Diagram, &Diagram, &Rational)> {
        self.terms
            .iter()
            .map(|((lk, rk), (left, right, coefficient))| (lk, rk, left, right, coefficient))
    }

    pub fn coefficient(&self, left: &CanonicalKey, right: &CanonicalKey) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Exchanges the tensor factors of every term.
    pub fn swapped(&self) -> TensorSum {
        let mut out = TensorSum::zero();
        for (_, _, left, right, coefficient) in self.iter() {
            out.add_term(coefficient.clone(), right, left);
        }
        out
    }

    /// Component-wise product: `(a ⊗ b) (c ⊗ d) = (a c) ⊗ (b d)`, extended
    /// bilinearly.
    pub fn product(&self, other: &TensorSum, limits: &Limits) -> Result<TensorSum, SizeGuardExceeded> {
        let mut out = TensorSum::zero();
        for (_, _, a, b, x) in self.iter() {
            for (_, _, c, d, y) in other.iter() {
                let left = basis_product(a, c, limits)?;
                let right = basis_product(b, d, limits)?;
                let coefficient = x * y;
                for (_, left_diagram, left_coefficient) in left.iter() {
                    for (_, right_diagram, right_coefficient) in right.iter() {
                        out.add_term(
                            &coefficient * left_coefficient * right_coefficient,
                            left_diagram,
                            right_diagram,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplies the two factors of every term back together: the map
    /// `a ⊗ b ↦ a b` used in the antipode identities.
    pub fn multiply_out(&self, limits: &Limits) -> Result<DiagramSum, SizeGuardExceeded> {
        let mut out = DiagramSum::zero();
        for (_, _, left, right, coefficient) in self.iter() {
            let product = basis_product(left, right, limits)?;
            out.add_scaled(coefficient, &product);
        }
        Ok(out)
    }
}

/// All splittings of a diagram into an ordered pair of subdiagrams, one per
/// subset of its line set (the subset induces the first component). The
/// enumeration follows a binary counter over the line indices, so the result
/// has exactly `2^lines` entries, the pair `(empty, d)` first and `(d, empty)`
/// last.
pub fn decompositions(
    diagram: &Diagram,
    limits: &Limits,
) -> Result<Vec<(Diagram, Diagram)>, SizeGuardExceeded> {
    let lines = diagram.edge_count();
    // 2^lines subsets are enumerated through a u64 mask, so the effective
    // ceiling is 63 lines no matter how the guard is configured.
    guard(SizeGuardKind::Decomposition, lines, limits.decomposition_edge_limit.min(63))?;
    let mut out = Vec::with_capacity(1usize << lines);
    for mask in 0u64..(1u64 << lines) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for line in 0..lines {
            if mask & (1 << line) != 0 {
                left.push(line);
            } else {
                right.push(line);
            }
        }
        out.push((diagram.restrict(&left), diagram.restrict(&right)));
    }
    Ok(out)
}

/// The coproduct: sum of all splittings, collected canonically and extended
/// linearly.
pub fn coproduct(x: &DiagramSum, limits: &Limits) -> Result<TensorSum, SizeGuardExceeded> {
    let mut out = TensorSum::zero();
    for (_, diagram, coefficient) in x.iter() {
        for (left, right) in decompositions(diagram, limits)? {
            out.add_term(coefficient.clone(), &left, &right);
        }
    }
    Ok(out)
}

/// The counit: the coefficient of the empty diagram.
pub fn counit(x: &DiagramSum) -> Rational {
    x.coefficient_of(&Diagram::empty())
}

/// The projection onto the span of the empty diagram, `Ξ = η ∘ ε`.
pub fn unit_projection(x: &DiagramSum) -> DiagramSum {
    let coefficient = counit(x);
    let mut out = DiagramSum::zero();
    out.add_term(coefficient, &Diagram::empty());
    out
}

/// All ordered partitions of `{0, .., size-1}` into exactly `blocks` nonempty
/// blocks; there are `blocks! · S(size, blocks)` of them (Stirling numbers of
/// the second kind). Deterministic order: lexicographic in the vector that
/// assigns each element its block.
pub fn ordered_partitions(size: usize, blocks: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_ordered_partition(size, blocks, |partition| out.push(partition.to_vec()));
    out
}

/// Callback form of [`ordered_partitions`]; the antipode uses this to avoid
/// materializing the whole list.
pub fn for_each_ordered_partition<F>(size: usize, blocks: usize, mut visit: F)
where
    F: FnMut(&[Vec<usize>]),
{
    if blocks == 0 || blocks > size {
        return;
    }
    let mut assignment = vec![0usize; size];
    loop {
        let mut filled = vec![false; blocks];
        for &block in &assignment {
            filled[block] = true;
        }
        if filled.iter().all(|&f| f) {
            let mut partition = vec![Vec::new(); blocks];
            for (element, &block) in assignment.iter().enumerate() {
                partition[block].push(element);
            }
            visit(&partition);
        }
        // Advance the assignment vector, last element fastest.
        let mut position = size;
        loop {
            if position == 0 {
                return;
            }
            position -= 1;
            assignment[position] += 1;
            if assignment[position] < blocks {
                break;
            }
            assignment[position] = 0;
        }
    }
}

/// The antipode: for a basis diagram the alternating sum, over ordered
/// partitions of the line set into nonempty blocks, of the products of the
/// restrictions; the empty diagram is fixed. Extended linearly.
///
/// The ordered-Bell guard is the only one applied; the internal products of
/// restrictions are bounded by the input's own size and run against limits
/// derived from it.
pub fn antipode(x: &DiagramSum, limits: &Limits) -> Result<DiagramSum, SizeGuardExceeded> {
    let mut out = DiagramSum::zero();
    for (_, diagram, coefficient) in x.iter() {
        let lines = diagram.edge_count();
        guard(SizeGuardKind::Antipode, lines, limits.antipode_edge_limit)?;
        if diagram.is_empty() {
            out.add_term(coefficient.clone(), diagram);
            continue;
        }
        let inner_limits = Limits::for_total_edges(lines);
        let mut failure = None;
        for blocks in 1..=lines {
            let sign = if blocks % 2 == 0 { 1 } else { -1 };
            let signed = coefficient * Rational::from_integer(sign.into());
            for_each_ordered_partition(lines, blocks, |partition| {
                if failure.is_some() {
                    return;
                }
                let mut term = DiagramSum::unit();
                for block in partition {
                    let factor = DiagramSum::from_diagram(&diagram.restrict(block));
                    match term.product(&factor, &inner_limits) {
                        Ok(next) => term = next,
                        Err(err) => {
                            failure = Some(err);
                            return;
                        }
                    }
                }
                out.add_scaled(&signed, &term);
            });
        }
        if let Some(err) = failure {
            return Err(err);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Edge;
    use crate::int;

    fn chain2() -> Diagram {
        Diagram::new(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn decomposition_count_is_two_to_the_lines() {
        let d = chain2();
        assert_eq!(decompositions(&d, &limits()).unwrap().len(), 8);
        let empty = Diagram::empty();
        assert_eq!(decompositions(&empty, &limits()).unwrap().len(), 1);
    }

    #[test]
    fn single_line_splits_two_ways() {
        let d = Diagram::incoming_line();
        let splits = decompositions(&d, &limits()).unwrap();
        assert_eq!(splits.len(), 2);
        assert!(splits[0].0.is_empty() && splits[0].1.is_isomorphic(&d));
        assert!(splits[1].1.is_empty() && splits[1].0.is_isomorphic(&d));
    }

    #[test]
    fn coproduct_of_the_empty_diagram() {
        let delta = coproduct(&DiagramSum::unit(), &limits()).unwrap();
        assert_eq!(delta.term_count(), 1);
        let empty_key = Diagram::empty().canonical_key();
        assert_eq!(delta.coefficient(&empty_key, &empty_key), int(1));
    }

    #[test]
    fn coproduct_of_the_pass_diagram() {
        let d = Diagram::single_vertex_pass();
        let delta = coproduct(&DiagramSum::from_diagram(&d), &limits()).unwrap();
        assert_eq!(delta.term_count(), 4);
        let empty = Diagram::empty().canonical_key();
        let d_key = d.canonical_key();
        let up = Diagram::outgoing_line().canonical_key();
        let down = Diagram::incoming_line().canonical_key();
        assert_eq!(delta.coefficient(&empty, &d_key), int(1));
        assert_eq!(delta.coefficient(&d_key, &empty), int(1));
        assert_eq!(delta.coefficient(&down, &up), int(1));
        assert_eq!(delta.coefficient(&up, &down), int(1));
    }

    #[test]
    fn counit_extracts_the_empty_coefficient() {
        assert_eq!(counit(&DiagramSum::unit()), int(1));
        assert_eq!(counit(&DiagramSum::from_diagram(&Diagram::single_vertex_pass())), int(0));
        let mut x = DiagramSum::unit().scaled(&int(3));
        x.add_term(int(2), &Diagram::single_vertex_pass());
        assert_eq!(counit(&x), int(3));
    }

    #[test]
    fn unit_projection_is_idempotent() {
        let mut x = DiagramSum::unit().scaled(&int(3));
        x.add_term(int(2), &Diagram::single_vertex_pass());
        let projected = unit_projection(&x);
        assert_eq!(projected, DiagramSum::unit().scaled(&int(3)));
        assert_eq!(unit_projection(&projected), projected);
        assert!(unit_projection(&DiagramSum::from_diagram(&Diagram::single_vertex_pass())).is_zero());
    }

    #[test]
    fn ordered_partition_counts() {
        assert_eq!(ordered_partitions(2, 2).len(), 2);
        assert_eq!(ordered_partitions(3, 2).len(), 6);
        assert_eq!(ordered_partitions(3, 5).len(), 0);
        assert_eq!(ordered_partitions(4, 1).len(), 1);
        // 2! · S(4,2) = 2 · 7
        assert_eq!(ordered_partitions(4, 2).len(), 14);
    }

    #[test]
    fn antipode_of_a_single_line_flips_sign() {
        let d = Diagram::outgoing_line();
        let s = antipode(&DiagramSum::from_diagram(&d), &limits()).unwrap();
        assert_eq!(s, -&DiagramSum::from_diagram(&d));
    }

    #[test]
    fn antipode_of_the_pass_diagram() {
        let d = Diagram::single_vertex_pass();
        let s = antipode(&DiagramSum::from_diagram(&d), &limits()).unwrap();
        let union = Diagram::incoming_line().disjoint_union(&Diagram::outgoing_line());
        assert_eq!(s.term_count(), 3);
        assert_eq!(s.coefficient_of(&d), int(-1));
        assert_eq!(s.coefficient_of(&union), int(2));
        assert_eq!(s.coefficient_of(&Diagram::inner_line()), int(1));
    }

    #[test]
    fn antipode_identity_on_the_pass_diagram() {
        let d = Diagram::single_vertex_pass();
        let x = DiagramSum::from_diagram(&d);
        let delta = coproduct(&x, &limits()).unwrap();
        let mut folded = DiagramSum::zero();
        for (_, _, left, right, coefficient) in delta.iter() {
            let s_right = antipode(&DiagramSum::from_diagram(right), &limits()).unwrap();
            let product = DiagramSum::from_diagram(left)
                .product(&s_right, &limits())
                .unwrap();
            folded.add_scaled(coefficient, &product);
        }
        assert_eq!(folded, unit_projection(&x));
        assert!(folded.is_zero());
    }

    #[test]
    fn antipode_respects_the_edge_guard() {
        let restrictive = Limits { antipode_edge_limit: 1, ..Limits::default() };
        let err = antipode(&DiagramSum::from_diagram(&Diagram::single_vertex_pass()), &restrictive)
            .unwrap_err();
        assert_eq!(err.kind, SizeGuardKind::Antipode);
    }

    #[test]
    fn decompositions_respect_the_edge_guard() {
        let restrictive = Limits { decomposition_edge_limit: 2, ..Limits::default() };
        let err = decompositions(&chain2(), &restrictive).unwrap_err();
        assert_eq!(err.kind, SizeGuardKind::Decomposition);
    }
}
