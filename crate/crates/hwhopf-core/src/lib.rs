//! Exact combinatorial algebra for the creation-annihilation system.
//!
//! This crate implements three algebras and the maps between them:
//!
//! * [`diagram`] / [`composition`] / [`algebra`] / [`hopf`] — the algebra `G`
//!   of Heisenberg-Weyl diagrams: acyclic directed multigraphs whose lines may
//!   have one free end. Diagrams multiply by summing over all ways of grafting
//!   outgoing lines of one factor onto incoming lines of the other, and carry
//!   a co-commutative Hopf structure induced by splitting line sets.
//! * [`envelope`] — the enveloping algebra `U(L_H)` of the Heisenberg Lie
//!   algebra in the PBW basis `ad^k a^l e^m`, together with the Heisenberg-Weyl
//!   algebra `H` obtained by sending the central `e` to the identity, and a
//!   term-rewriting normal-ordering engine used as an independent oracle.
//! * [`morphism`] — the forgetful maps sending a diagram to the monomial that
//!   counts its outgoing, incoming and inner lines.
//!
//! All coefficients are exact rationals over arbitrary-precision integers;
//! there is no floating point anywhere. The crate is `no_std` (it allocates,
//! but performs no IO); parsing, serialization and the command-line front end
//! live in the companion `hwhopf` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod composition;
pub mod corpus;
pub mod diagram;
pub mod envelope;
pub mod hopf;
pub mod limits;
pub mod morphism;

pub use num_bigint::{BigInt, BigUint};

/// Scalar type of every algebra in this crate: exact rationals over
/// arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for rational scalars.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Convenience constructor for integer scalars.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Convenience constructor for natural numbers (exponents, counts).
pub fn nat(value: u64) -> BigUint {
    BigUint::from(value)
}
