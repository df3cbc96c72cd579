//! Forgetful maps from the diagram algebra onto the enveloping algebra and
//! the Heisenberg-Weyl algebra.
//!
//! A diagram is sent to the monomial counting its lines: outgoing lines
//! become creators, incoming lines annihilators, inner lines central
//! elements. The graph structure is discarded; only the counts survive.
//! Both maps are surjective algebra morphisms, and the one onto the
//! enveloping algebra also preserves the Hopf structure.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::algebra::DiagramSum;
use crate::diagram::{Diagram, Edge};
use crate::envelope::{HwMonomial, HwPolynomial, PbwMonomial, PbwPolynomial};

/// The monomial a single diagram maps to: `ad^outgoing a^incoming e^inner`.
pub fn phi_diagram(diagram: &Diagram) -> PbwMonomial {
    let counts = diagram.line_counts();
    PbwMonomial::new(
        BigUint::from(counts.outgoing),
        BigUint::from(counts.incoming),
        BigUint::from(counts.inner),
    )
}

/// The forgetful map into the enveloping algebra, extended linearly.
pub fn phi(x: &DiagramSum) -> PbwPolynomial {
    let mut out = PbwPolynomial::zero();
    for (_, diagram, coefficient) in x.iter() {
        out.add_term(coefficient.clone(), phi_diagram(diagram));
    }
    out
}

/// The monomial a single diagram maps to in the Heisenberg-Weyl algebra:
/// inner lines are forgotten entirely.
pub fn phi_bar_diagram(diagram: &Diagram) -> HwMonomial {
    let counts = diagram.line_counts();
    HwMonomial::new(BigUint::from(counts.outgoing), BigUint::from(counts.incoming))
}

/// The forgetful map into the Heisenberg-Weyl algebra; equals the projection
/// of [`phi`] along `e -> 1`.
pub fn phi_bar(x: &DiagramSum) -> HwPolynomial {
    let mut out = HwPolynomial::zero();
    for (_, diagram, coefficient) in x.iter() {
        out.add_term(coefficient.clone(), phi_bar_diagram(diagram));
    }
    out
}

/// A smallest-by-construction diagram mapping to `ad^k a^l e^m`: one hub
/// vertex carrying all the free lines, plus `m` separate two-vertex inner
/// lines. Used as the surjectivity witness; self-loops are excluded, so each
/// inner line needs its own vertex pair.
pub fn monomial_witness(outgoing: usize, incoming: usize, inner: usize) -> Diagram {
    let hub = outgoing + incoming > 0;
    let mut vertex_count = 0;
    let mut edges = Vec::new();
    if hub {
        vertex_count = 1;
        for _ in 0..incoming {
            edges.push(Edge::incoming(0));
        }
        for _ in 0..outgoing {
            edges.push(Edge::outgoing(0));
        }
    }
    for _ in 0..inner {
        edges.push(Edge::inner(vertex_count, vertex_count + 1));
        vertex_count += 2;
    }
    Diagram::new(vertex_count, edges).expect("witness construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::pbw_monomial_product;
    use crate::limits::Limits;
    use crate::{int, nat};

    #[test]
    fn phi_counts_lines() {
        assert_eq!(phi(&DiagramSum::unit()), PbwPolynomial::one());
        let chain = Diagram::new(
            2,
            alloc::vec![Edge::incoming(0), Edge::inner(0, 1), Edge::outgoing(1)],
        )
        .unwrap();
        assert_eq!(phi_diagram(&chain), PbwMonomial::new(nat(1), nat(1), nat(1)));
        assert_eq!(phi_bar_diagram(&chain), HwMonomial::new(nat(1), nat(1)));
    }

    #[test]
    fn phi_is_multiplicative_on_the_pass_diagram() {
        let d = DiagramSum::from_diagram(&Diagram::single_vertex_pass());
        let product = d.product(&d, &Limits::default()).unwrap();
        let lhs = phi(&product);
        let number = PbwMonomial::new(nat(1), nat(1), nat(0));
        let rhs = pbw_monomial_product(&number, &number);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.coefficient(&PbwMonomial::new(nat(2), nat(2), nat(0))), int(1));
        assert_eq!(lhs.coefficient(&PbwMonomial::new(nat(1), nat(1), nat(1))), int(1));
    }

    #[test]
    fn phi_bar_is_the_projection_of_phi() {
        let d = DiagramSum::from_diagram(&Diagram::single_vertex_pass());
        let product = d.product(&d, &Limits::default()).unwrap();
        assert_eq!(phi_bar(&product), phi(&product).project());
        let n = HwMonomial::new(nat(1), nat(1));
        let rhs = HwPolynomial::from_monomial(n.clone()).product(&HwPolynomial::from_monomial(n));
        assert_eq!(phi_bar(&product), rhs);
    }

    #[test]
    fn witnesses_hit_their_monomials() {
        for outgoing in 0..3 {
            for incoming in 0..3 {
                for inner in 0..3 {
                    let witness = monomial_witness(outgoing, incoming, inner);
                    let expected = PbwMonomial::new(
                        nat(outgoing as u64),
                        nat(incoming as u64),
                        nat(inner as u64),
                    );
                    assert_eq!(phi_diagram(&witness), expected);
                }
            }
        }
        assert!(monomial_witness(0, 0, 0).is_empty());
    }
}
