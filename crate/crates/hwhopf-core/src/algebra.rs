//! The algebra of diagrams: formal rational linear combinations of
//! isomorphism classes, multiplied by summing over all compositions.
//!
//! A [`DiagramSum`] collects terms by canonical key, so isomorphic diagrams
//! merge and the structure constants of the product appear as integer
//! multiplicities. The product of basis diagrams runs over every matching of
//! the upper factor's incoming lines with the lower factor's outgoing lines;
//! it is associative, noncommutative, and has the empty diagram as unit.

use alloc::collections::BTreeMap;
use core::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::composition::{compose, enumerate_matchings};
use crate::diagram::{CanonicalKey, Diagram};
use crate::limits::{guard, Limits, SizeGuardExceeded, SizeGuardKind};
use crate::Rational;

/// A finitely supported rational linear combination of diagram classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSum {
    terms: BTreeMap<CanonicalKey, (Diagram, Rational)>,
}

impl DiagramSum {
    pub fn zero() -> Self {
        DiagramSum::default()
    }

    /// The unit of the algebra: the empty diagram with coefficient one.
    pub fn unit() -> Self {
        DiagramSum::from_diagram(&Diagram::empty())
    }

    pub fn from_diagram(diagram: &Diagram) -> Self {
        let mut sum = DiagramSum::zero();
        sum.add_term(Rational::from_integer(1.into()), diagram);
        sum
    }

    /// Collects a list of scaled diagrams into a sum, merging isomorphic
    /// terms and dropping exact zeros.
    pub fn linear_combine<I>(parts: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Diagram)>,
    {
        let mut sum = DiagramSum::zero();
        for (coefficient, diagram) in parts {
            sum.add_term(coefficient, &diagram);
        }
        sum
    }

    /// Adds `coefficient · diagram` in place.
    pub fn add_term(&mut self, coefficient: Rational, diagram: &Diagram) {
        if coefficient.is_zero() {
            return;
        }
        let (key, representative) = diagram.canonicalize();
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert((representative, coefficient));
            }
            alloc::collections::btree_map::Entry::Occupied(mut entry) => {
                entry.get_mut().1 += coefficient;
                if entry.get().1.is_zero() {
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
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Diagram, &Rational)> {
        self.terms.iter().map(|(key, (diagram, coefficient))| (key, diagram, coefficient))
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> Rational {
        self.terms.get(key).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn coefficient_of(&self, diagram: &Diagram) -> Rational {
        self.coefficient(&diagram.canonical_key())
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return DiagramSum::zero();
        }
        DiagramSum {
            terms: self
                .terms
                .iter()
                .map(|(key, (diagram, coefficient))| {
                    (key.clone(), (diagram.clone(), coefficient * factor))
                })
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &DiagramSum) {
        for (_, diagram, coefficient) in other.iter() {
            self.add_term(factor * coefficient, diagram);
        }
    }

    /// The product of the algebra, `self` acting as the upper factor. Every
    /// produced term is checked against the size guards.
    pub fn product(&self, lower: &DiagramSum, limits: &Limits) -> Result<Self, SizeGuardExceeded> {
        let mut out = DiagramSum::zero();
        for (_, upper_diagram, upper_coefficient) in self.iter() {
            for (_, lower_diagram, lower_coefficient) in lower.iter() {
                let coefficient = upper_coefficient * lower_coefficient;
                accumulate_basis_product(&mut out, upper_diagram, lower_diagram, &coefficient, limits)?;
            }
        }
        Ok(out)
    }
}

/// Product of two basis diagrams: the sum of all their compositions, with
/// multiplicities given by how often isomorphic composites arise.
pub fn basis_product(
    upper: &Diagram,
    lower: &Diagram,
    limits: &Limits,
) -> Result<DiagramSum, SizeGuardExceeded> {
    let mut out = DiagramSum::zero();
    let one = Rational::from_integer(1.into());
    accumulate_basis_product(&mut out, upper, lower, &one, limits)?;
    Ok(out)
}

fn accumulate_basis_product(
    out: &mut DiagramSum,
    upper: &Diagram,
    lower: &Diagram,
    coefficient: &Rational,
    limits: &Limits,
) -> Result<(), SizeGuardExceeded> {
    for matching in enumerate_matchings(upper, lower, None) {
        let composite = compose(upper, &matching, lower)
            .expect("enumerated matchings fit their diagrams");
        guard(SizeGuardKind::Vertices, composite.vertex_count(), limits.max_vertices)?;
        guard(SizeGuardKind::Edges, composite.edge_count(), limits.max_edges)?;
        out.add_term(coefficient.clone(), &composite);
    }
    Ok(())
}

impl Add<&DiagramSum> for &DiagramSum {
    type Output = DiagramSum;

    fn add(self, other: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        for (_, diagram, coefficient) in other.iter() {
            out.add_term(coefficient.clone(), diagram);
        }
        out
    }
}

impl Sub<&DiagramSum> for &DiagramSum {
    type Output = DiagramSum;

    fn sub(self, other: &DiagramSum) -> DiagramSum {
        let mut out = self.clone();
        for (_, diagram, coefficient) in other.iter() {
            out.add_term(-coefficient.clone(), diagram);
        }
        out
    }
}

impl Neg for &DiagramSum {
    type Output = DiagramSum;

    fn neg(self) -> DiagramSum {
        self.scaled(&Rational::from_integer((-1).into()))
    }
}

impl FromIterator<(Rational, Diagram)> for DiagramSum {
    fn from_iter<I: IntoIterator<Item = (Rational, Diagram)>>(iter: I) -> Self {
        DiagramSum::linear_combine(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::matching_count;
    use crate::diagram::Edge;
    use crate::{int, ratio};
    use alloc::vec;
    use num_bigint::BigUint;

    fn chain2() -> Diagram {
        Diagram::new(2, vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)]).unwrap()
    }

    #[test]
    fn relabelings_cancel() {
        let d = chain2();
        let relabeled = d.relabeled(&[1, 0]);
        let sum = DiagramSum::linear_combine(vec![(int(1), d), (int(-1), relabeled)]);
        assert!(sum.is_zero());
    }

    #[test]
    fn halves_collect() {
        let d = Diagram::single_vertex_pass();
        let sum = DiagramSum::linear_combine(vec![(ratio(1, 2), d.clone()), (ratio(1, 2), d.clone())]);
        assert_eq!(sum.term_count(), 1);
        assert_eq!(sum.coefficient_of(&d), int(1));
    }

    #[test]
    fn disjoint_unions_collect_across_order() {
        let a = Diagram::incoming_line();
        let b = Diagram::inner_line();
        let sum = DiagramSum::linear_combine(vec![
            (int(2), a.disjoint_union(&b)),
            (int(3), b.disjoint_union(&a)),
        ]);
        assert_eq!(sum.term_count(), 1);
        assert_eq!(sum.coefficient_of(&a.disjoint_union(&b)), int(5));
    }

    #[test]
    fn pass_times_pass_has_two_terms() {
        let d = Diagram::single_vertex_pass();
        let x = DiagramSum::from_diagram(&d);
        let product = x.product(&x, &Limits::default()).unwrap();
        assert_eq!(product.term_count(), 2);
        assert_eq!(product.coefficient_of(&d.disjoint_union(&d)), int(1));
        assert_eq!(product.coefficient_of(&chain2()), int(1));
    }

    #[test]
    fn empty_diagram_is_the_unit() {
        let samples = [
            Diagram::single_vertex_pass(),
            Diagram::inner_line(),
            Diagram::incoming_line().disjoint_union(&Diagram::outgoing_line()),
        ];
        let unit = DiagramSum::unit();
        for d in &samples {
            let x = DiagramSum::from_diagram(d);
            assert_eq!(unit.product(&x, &Limits::default()).unwrap(), x);
            assert_eq!(x.product(&unit, &Limits::default()).unwrap(), x);
        }
    }

    #[test]
    fn upper_without_incoming_lines_only_stacks() {
        let up = DiagramSum::from_diagram(&Diagram::outgoing_line());
        let down = DiagramSum::from_diagram(&Diagram::incoming_line());
        let product = up.product(&down, &Limits::default()).unwrap();
        assert_eq!(product.term_count(), 1);
        let union = Diagram::outgoing_line().disjoint_union(&Diagram::incoming_line());
        assert_eq!(product.coefficient_of(&union), int(1));
    }

    #[test]
    fn coefficient_mass_per_level_matches_matching_count() {
        let up = Diagram::new(
            1,
            vec![Edge::incoming(0), Edge::incoming(0), Edge::outgoing(0)],
        )
        .unwrap();
        let down = Diagram::new(
            1,
            vec![Edge::outgoing(0), Edge::outgoing(0), Edge::incoming(0)],
        )
        .unwrap();
        let product = basis_product(&up, &down, &Limits::default()).unwrap();
        let total_edges = up.edge_count() + down.edge_count();
        let mut mass_by_level: BTreeMap<usize, Rational> = BTreeMap::new();
        for (_, diagram, coefficient) in product.iter() {
            let level = total_edges - diagram.edge_count();
            *mass_by_level.entry(level).or_insert_with(Rational::zero) += coefficient.clone();
        }
        for (level, mass) in mass_by_level {
            let expected = matching_count(2, 2, level);
            assert_eq!(mass, Rational::from_integer(expected.into()));
        }
    }

    #[test]
    fn product_respects_size_guard() {
        let limits = Limits { max_edges: 2, ..Limits::default() };
        let x = DiagramSum::from_diagram(&Diagram::single_vertex_pass());
        let err = x.product(&x, &limits).unwrap_err();
        assert_eq!(err.kind, SizeGuardKind::Edges);
    }
}
