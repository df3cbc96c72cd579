//! Corpus property suites: the laws of the diagram algebra, its Hopf
//! structure, the enveloping algebra and the forgetful morphisms, run
//! exhaustively over small-diagram corpora.
//!
//! Each suite produces one report line per law. Suites fan out over the
//! corpus with rayon; failures collect counterexamples rendered in `.hwd`
//! syntax, sorted by canonical key so reports are deterministic.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hwhopf_core::algebra::{basis_product, DiagramSum};
use hwhopf_core::composition::{
    compose, compose_traced, enumerate_matchings, matching_count, EdgeOrigin, Matching,
};
use hwhopf_core::corpus::corpus;
use hwhopf_core::diagram::{CanonicalKey, Diagram, Edge};
use hwhopf_core::envelope::{
    hw_monomial_product, pbw_monomial_coproduct, pbw_monomial_product, Generator, HwMonomial,
    PbwMonomial, PbwPolynomial, PbwTensor, Word,
};
use hwhopf_core::hopf::{antipode, coproduct, counit, decompositions, ordered_partitions, unit_projection};
use hwhopf_core::limits::Limits;
use hwhopf_core::morphism::{monomial_witness, phi, phi_bar, phi_bar_diagram, phi_diagram};
use hwhopf_core::{nat, BigUint, Rational};
use num_traits::{One, Zero};

use crate::textio::render_hwd;

/// Seed for the sampled-triple associativity check.
const SAMPLE_SEED: u64 = 0x687768_6f7066;
/// How many triples the sampled associativity check draws.
const SAMPLE_TRIPLES: usize = 512;
/// How many counterexamples a failing line keeps.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|line| line.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Algebra,
    Hopf,
    Morphism,
    Counting,
}

impl Suite {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "all" => Some(Suite::All),
            "algebra" => Some(Suite::Algebra),
            "hopf" => Some(Suite::Hopf),
            "morphism" => Some(Suite::Morphism),
            "counting" => Some(Suite::Counting),
            _ => None,
        }
    }
}

/// Runs the requested suite (or all of them). `max_edges` rescales the main
/// corpus bound of each suite; the defaults are algebra 2 (+1 for sampling),
/// hopf 4, morphism 4, counting 4 (+1 for decompositions).
pub fn run(suite: Suite, max_edges: Option<usize>) -> Vec<SuiteReport> {
    match suite {
        Suite::All => vec![
            algebra_suite(max_edges.unwrap_or(2)),
            hopf_suite(max_edges.unwrap_or(4)),
            morphism_suite(max_edges.unwrap_or(4)),
            counting_suite(max_edges.unwrap_or(4)),
        ],
        Suite::Algebra => vec![algebra_suite(max_edges.unwrap_or(2))],
        Suite::Hopf => vec![hopf_suite(max_edges.unwrap_or(4))],
        Suite::Morphism => vec![morphism_suite(max_edges.unwrap_or(4))],
        Suite::Counting => vec![counting_suite(max_edges.unwrap_or(4))],
    }
}

fn sum(d: &Diagram) -> DiagramSum {
    DiagramSum::from_diagram(d)
}

/// The transcription of the worked example diagram: four incoming, four
/// inner and three outgoing lines over four vertices.
pub fn fig1_diagram() -> Diagram {
    Diagram::new(
        4,
        vec![
            Edge::incoming(0),
            Edge::incoming(0),
            Edge::incoming(1),
            Edge::incoming(2),
            Edge::inner(0, 1),
            Edge::inner(0, 2),
            Edge::inner(1, 3),
            Edge::inner(2, 3),
            Edge::outgoing(3),
            Edge::outgoing(3),
            Edge::outgoing(1),
        ],
    )
    .expect("the example diagram is valid")
}

fn failures_to_line(
    name: &'static str,
    details: String,
    mut failures: Vec<String>,
) -> CheckLine {
    failures.sort();
    let passed = failures.is_empty();
    failures.truncate(MAX_COUNTEREXAMPLES);
    CheckLine { name, passed, details, counterexamples: failures }
}

fn show_pair(x: &Diagram, y: &Diagram) -> String {
    format!("left factor:\n{}right factor:\n{}", render_hwd(x), render_hwd(y))
}

fn show_triple(x: &Diagram, y: &Diagram, z: &Diagram) -> String {
    format!(
        "first factor:\n{}second factor:\n{}third factor:\n{}",
        render_hwd(x),
        render_hwd(y),
        render_hwd(z)
    )
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

pub fn algebra_suite(exhaustive_bound: usize) -> SuiteReport {
    let sampled_bound = exhaustive_bound + 1;
    let small = corpus(exhaustive_bound);
    let larger = corpus(sampled_bound);
    let lines = vec![
        check_unit_laws(&larger, sampled_bound),
        check_associativity_exhaustive(&small, exhaustive_bound),
        check_associativity_sampled(&larger, sampled_bound),
        check_structure_constants(&larger, sampled_bound),
        check_grading_mass(&larger, sampled_bound),
        check_fine_graining(&small),
        check_pbw_vs_oracle(),
        check_hw_vs_oracle(),
        check_pbw_associativity(),
        check_central_element(),
        check_stirling(),
        check_hw_has_no_counit(),
    ];
    SuiteReport { suite: "algebra", lines }
}

fn check_unit_laws(corpus: &[Diagram], bound: usize) -> CheckLine {
    let unit = DiagramSum::unit();
    let limits = Limits::for_total_edges(bound);
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|d| {
            let x = sum(d);
            let left = unit.product(&x, &limits).ok()?;
            let right = x.product(&unit, &limits).ok()?;
            (left != x || right != x).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "unit-laws",
        format!("empty diagram is a two-sided unit on {} classes", corpus.len()),
        failures,
    )
}

fn associativity_holds(x: &Diagram, y: &Diagram, z: &Diagram, limits: &Limits) -> bool {
    let (xs, ys, zs) = (sum(x), sum(y), sum(z));
    let left = xs.product(&ys, limits).and_then(|xy| xy.product(&zs, limits));
    let right = ys.product(&zs, limits).and_then(|yz| xs.product(&yz, limits));
    match (left, right) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn check_associativity_exhaustive(corpus: &[Diagram], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(3 * bound);
    let n = corpus.len();
    let failures: Vec<String> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|ij| {
            let (x, y) = (&corpus[ij / n], &corpus[ij % n]);
            corpus.iter().filter_map(move |z| {
                (!associativity_holds(x, y, z, &limits)).then(|| show_triple(x, y, z))
            })
        })
        .collect();
    failures_to_line(
        "associativity-exhaustive",
        format!("(x y) z = x (y z) on all {} triples of the {}-line corpus", n * n * n, bound),
        failures,
    )
}

fn check_associativity_sampled(corpus: &[Diagram], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(3 * bound);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let triples: Vec<(usize, usize, usize)> = (0..SAMPLE_TRIPLES)
        .map(|_| {
            (
                rng.random_range(0..corpus.len()),
                rng.random_range(0..corpus.len()),
                rng.random_range(0..corpus.len()),
            )
        })
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let (x, y, z) = (&corpus[i], &corpus[j], &corpus[k]);
            (!associativity_holds(x, y, z, &limits)).then(|| show_triple(x, y, z))
        })
        .collect();
    failures_to_line(
        "associativity-sampled",
        format!(
            "(x y) z = x (y z) on {} seeded triples of the {}-line corpus",
            SAMPLE_TRIPLES, bound
        ),
        failures,
    )
}

fn check_structure_constants(corpus: &[Diagram], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(2 * bound);
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|x| {
            corpus.iter().filter_map(move |y| {
                let product = basis_product(x, y, &limits).ok()?;
                let bad = product.iter().any(|(_, _, coefficient)| {
                    !coefficient.is_integer() || coefficient <= &Rational::zero()
                });
                bad.then(|| show_pair(x, y))
            })
        })
        .collect();
    failures_to_line(
        "structure-constants",
        format!("basis products have positive integer coefficients ({} pairs)", corpus.len().pow(2)),
        failures,
    )
}

fn check_grading_mass(corpus: &[Diagram], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(2 * bound);
    let failures: Vec<String> = corpus
        .par_iter()
        .flat_map_iter(|x| {
            corpus.iter().filter_map(move |y| {
                let product = basis_product(x, y, &limits).ok()?;
                let total = x.edge_count() + y.edge_count();
                let fusable = x.line_counts().incoming.min(y.line_counts().outgoing);
                let mut mass: BTreeMap<usize, Rational> = BTreeMap::new();
                for (_, term, coefficient) in product.iter() {
                    let level = total - term.edge_count();
                    if level > fusable {
                        return Some(show_pair(x, y));
                    }
                    *mass.entry(level).or_insert_with(Rational::zero) += coefficient.clone();
                }
                for level in 0..=fusable {
                    let expected = matching_count(
                        x.line_counts().incoming,
                        y.line_counts().outgoing,
                        level,
                    );
                    let found = mass.remove(&level).unwrap_or_else(Rational::zero);
                    if found != Rational::from_integer(expected.into()) {
                        return Some(show_pair(x, y));
                    }
                }
                None
            })
        })
        .collect();
    failures_to_line(
        "grading-mass",
        format!(
            "per-level coefficient mass equals the matching count ({} pairs)",
            corpus.len().pow(2)
        ),
        failures,
    )
}

/// The explicit refinement bijection behind associativity: pairs
/// `(m', m21)` of matchings for `x (y z)` correspond one-to-one to pairs
/// `(m32, m'')` for `(x y) z`, and matched summands are identical graphs.
fn check_fine_graining(corpus: &[Diagram]) -> CheckLine {
    let triples: Vec<(usize, usize, usize)> = (0..corpus.len())
        .flat_map(|i| {
            (0..corpus.len()).flat_map(move |j| (0..corpus.len()).map(move |k| (i, j, k)))
        })
        .collect();
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let (upper, middle, lower) = (&corpus[i], &corpus[j], &corpus[k]);
            fine_graining_holds(upper, middle, lower).then_some(None).unwrap_or_else(|| {
                Some(show_triple(upper, middle, lower))
            })
        })
        .collect();
    failures_to_line(
        "fine-graining-bijection",
        format!("matching refinement is a bijection on {} triples", triples.len()),
        failures,
    )
}

fn fine_graining_holds(upper: &Diagram, middle: &Diagram, lower: &Diagram) -> bool {
    // Right-association side: m21 composes middle onto lower, then m' grafts
    // upper onto the composite.
    let mut right_side_keys = std::collections::BTreeSet::new();
    let mut right_count = 0usize;
    for m21 in enumerate_matchings(middle, lower, None) {
        let Ok((composite21, origins21)) = compose_traced(middle, &m21, lower) else {
            return false;
        };
        for m_prime in enumerate_matchings(upper, &composite21, None) {
            right_count += 1;
            // Split m' by where the matched outgoing line of the composite
            // came from.
            let mut m32_pairs = Vec::new();
            let mut extra = Vec::new();
            for &(u, o) in m_prime.pairs() {
                match origins21[o] {
                    EdgeOrigin::Upper(e2) => m32_pairs.push((u, e2)),
                    EdgeOrigin::Lower(e1) => extra.push((u, e1)),
                    EdgeOrigin::Fused { .. } => return false,
                }
            }
            let m32 = Matching::new(m32_pairs);
            let Ok((composite32, origins32)) = compose_traced(upper, &m32, middle) else {
                return false;
            };
            // Translate m21 (incoming lines of the middle factor) and the
            // remainder of m' (incoming lines of the upper factor) into the
            // composite's edge indices.
            let locate = |origin: EdgeOrigin| {
                origins32.iter().position(|&o| o == origin).expect("carried edge survives")
            };
            let mut m_second_pairs = Vec::new();
            for &(e2_in, e1_out) in m21.pairs() {
                m_second_pairs.push((locate(EdgeOrigin::Lower(e2_in)), e1_out));
            }
            for &(u3_in, e1_out) in &extra {
                m_second_pairs.push((locate(EdgeOrigin::Upper(u3_in)), e1_out));
            }
            let m_second = Matching::new(m_second_pairs);
            // The mapped pair must reproduce the same composite graph.
            let Ok(via_right) = compose(upper, &m_prime, &composite21) else {
                return false;
            };
            let Ok(via_left) = compose(&composite32, &m_second, lower) else {
                return false;
            };
            if via_right.vertex_count() != via_left.vertex_count() {
                return false;
            }
            let mut lhs = via_right.edges().to_vec();
            let mut rhs = via_left.edges().to_vec();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return false;
            }
            if !right_side_keys.insert((m32.pairs().to_vec(), m_second.pairs().to_vec())) {
                // Not injective.
                return false;
            }
        }
    }
    // Independent count of the left-association side.
    let mut left_count = 0usize;
    for m32 in enumerate_matchings(upper, middle, None) {
        let Ok(composite32) = compose(upper, &m32, middle) else {
            return false;
        };
        left_count += enumerate_matchings(&composite32, lower, None).len();
    }
    right_count == left_count && right_side_keys.len() == right_count
}

/// All words over the three generators up to the given length.
fn all_words(max_length: usize) -> Vec<Word> {
    let generators = [Generator::Creation, Generator::Annihilation, Generator::Central];
    let mut out = vec![Word::identity()];
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for stem in &layer {
            for &g in &generators {
                let mut word = stem.clone();
                word.push(g);
                out.push(Word::from_generators(word.iter().copied()));
                next.push(word);
            }
        }
        layer = next;
    }
    out
}

fn check_pbw_vs_oracle() -> CheckLine {
    let words = all_words(6);
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| (w.normal_order() != w.monomial_product()).then(|| format!("word: {w}")))
        .collect();
    failures_to_line(
        "pbw-product-vs-oracle",
        format!("closed-form product matches the rewrite oracle on {} words", words.len()),
        failures,
    )
}

fn check_hw_vs_oracle() -> CheckLine {
    let mut failures = Vec::new();
    let mut tested = 0usize;
    for p in 0..=4u64 {
        for q in 0..=4u64 {
            for k in 0..=4u64 {
                for l in 0..=4u64 {
                    tested += 1;
                    let closed = hw_monomial_product(
                        &HwMonomial::new(nat(p), nat(q)),
                        &HwMonomial::new(nat(k), nat(l)),
                    );
                    let mut letters = Vec::new();
                    letters.extend(std::iter::repeat_n(Generator::Creation, p as usize));
                    letters.extend(std::iter::repeat_n(Generator::Annihilation, q as usize));
                    letters.extend(std::iter::repeat_n(Generator::Creation, k as usize));
                    letters.extend(std::iter::repeat_n(Generator::Annihilation, l as usize));
                    let oracle = Word::from_generators(letters).normal_order().project();
                    if closed != oracle {
                        failures.push(format!("ad^{p} a^{q} · ad^{k} a^{l}"));
                    }
                }
            }
        }
    }
    failures_to_line(
        "hw-product-vs-oracle",
        format!("structure constants match the rewrite oracle on {tested} monomial pairs"),
        failures,
    )
}

fn check_pbw_associativity() -> CheckLine {
    let mut monomials = Vec::new();
    for k in 0..=4u64 {
        for l in 0..=4u64 {
            for m in 0..=4u64 {
                monomials.push(PbwMonomial::new(nat(k), nat(l), nat(m)));
            }
        }
    }
    let n = monomials.len();
    let failures: Vec<String> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|ij| {
            let (x, y) = (&monomials[ij / n], &monomials[ij % n]);
            let xy = pbw_monomial_product(x, y);
            monomials.iter().filter_map(move |z| {
                let left = xy.product(&PbwPolynomial::from_monomial(z.clone()));
                let yz = pbw_monomial_product(y, z);
                let right = PbwPolynomial::from_monomial(x.clone()).product(&yz);
                (left != right).then(|| format!("{x:?} {y:?} {z:?}"))
            })
        })
        .collect();
    failures_to_line(
        "pbw-associativity",
        format!("associativity on all {} monomial triples with exponents up to 4", n * n * n),
        failures,
    )
}

fn check_central_element() -> CheckLine {
    let mut failures = Vec::new();
    let mut tested = 0usize;
    for k in 0..=3u64 {
        for l in 0..=3u64 {
            for m in 0..=2u64 {
                for power in 1..=3u64 {
                    tested += 1;
                    let x = PbwPolynomial::from_monomial(PbwMonomial::new(nat(k), nat(l), nat(m)));
                    let e = PbwPolynomial::from_monomial(PbwMonomial::new(nat(0), nat(0), nat(power)));
                    if x.product(&e) != e.product(&x) {
                        failures.push(format!("ad^{k} a^{l} e^{m} vs e^{power}"));
                    }
                }
            }
        }
    }
    failures_to_line(
        "central-element-commutes",
        format!("e^m commutes with {tested} monomials"),
        failures,
    )
}

fn stirling_second(n: usize, k: usize) -> BigUint {
    // Recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
    let mut row = vec![BigUint::one()];
    for _ in 1..=n {
        let mut next = vec![BigUint::zero(); row.len() + 1];
        for (k, value) in row.iter().enumerate() {
            next[k] += BigUint::from(k) * value;
            next[k + 1] += value;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigUint::zero)
}

fn check_stirling() -> CheckLine {
    let mut failures = Vec::new();
    for n in 1..=5usize {
        let mut letters = Vec::new();
        for _ in 0..n {
            letters.push(Generator::Creation);
            letters.push(Generator::Annihilation);
        }
        let projected = Word::from_generators(letters).normal_order().project();
        for k in 0..=n {
            let expected = Rational::from_integer(stirling_second(n, k).into());
            let found = projected.coefficient(&HwMonomial::new(nat(k as u64), nat(k as u64)));
            let expected = if k == 0 && n > 0 { Rational::zero() } else { expected };
            if found != expected {
                failures.push(format!("(ad a)^{n}, coefficient of ad^{k} a^{k}"));
            }
        }
    }
    failures_to_line(
        "stirling-coefficients",
        "normal ordering of (ad a)^n reproduces Stirling numbers for n up to 5".to_string(),
        failures,
    )
}

fn check_hw_has_no_counit() -> CheckLine {
    let a = hwhopf_core::envelope::HwPolynomial::from_monomial(HwMonomial::new(nat(0), nat(1)));
    let ad = hwhopf_core::envelope::HwPolynomial::from_monomial(HwMonomial::new(nat(1), nat(0)));
    let commutator = &a.product(&ad) - &ad.product(&a);
    let mut failures = Vec::new();
    if commutator != hwhopf_core::envelope::HwPolynomial::one() {
        failures.push("a ad - ad a is not the identity".to_string());
    }
    // Any multiplicative functional sends the commutator to x y - y x = 0,
    // never to 1; sweep a grid of candidate values.
    let mut tested = 0usize;
    for xn in -6i64..=6 {
        for xd in 1i64..=3 {
            for yn in -6i64..=6 {
                for yd in 1i64..=3 {
                    tested += 1;
                    let x = hwhopf_core::ratio(xn, xd);
                    let y = hwhopf_core::ratio(yn, yd);
                    if &x * &y - &y * &x != Rational::zero() {
                        failures.push(format!("{x} {y}"));
                    }
                }
            }
        }
    }
    failures_to_line(
        "hw-has-no-counit",
        format!("no multiplicative functional fits the defining relation ({tested} candidates)"),
        failures,
    )
}

// ---------------------------------------------------------------------------
// hopf
// ---------------------------------------------------------------------------

pub fn hopf_suite(bound: usize) -> SuiteReport {
    let diagrams = corpus(bound);
    let limits = Limits::for_total_edges(2 * bound.max(1));
    let antipodes: BTreeMap<CanonicalKey, DiagramSum> = diagrams
        .par_iter()
        .map(|d| (d.canonical_key(), antipode(&sum(d), &limits).expect("within guards")))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let pairs = bounded_pairs(&diagrams, bound);
    let lines = vec![
        check_coassociativity(&diagrams, &limits),
        check_counit_laws(&diagrams, &limits),
        check_cocommutativity(&diagrams, &limits),
        check_coproduct_multiplicative(&pairs, bound),
        check_counit_multiplicative(&pairs, bound),
        check_antipode_identities(&diagrams, &antipodes, &limits),
        check_antipode_antimorphism(&pairs, &antipodes, bound),
        check_antipode_involution(&diagrams, &antipodes, bound),
        check_restriction_line_types(&diagrams, &limits),
        check_antipode_spot_value(),
        check_antipode_vs_convolution(bound.min(3)),
        check_envelope_hopf_axioms(),
    ];
    SuiteReport { suite: "hopf", lines }
}

/// All ordered corpus pairs whose line counts sum to at most the bound, so
/// products stay inside the corpus scale.
fn bounded_pairs(diagrams: &[Diagram], bound: usize) -> Vec<(Diagram, Diagram)> {
    let mut out = Vec::new();
    for x in diagrams {
        for y in diagrams {
            if x.edge_count() + y.edge_count() <= bound {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

type TripleMap = BTreeMap<(CanonicalKey, CanonicalKey, CanonicalKey), Rational>;

fn triple_map_left(d: &Diagram, limits: &Limits) -> TripleMap {
    // (Δ ⊗ Id) Δ: split, then split the first component.
    let mut out = TripleMap::new();
    for (first, rest) in decompositions(d, limits).expect("within guards") {
        for (a, b) in decompositions(&first, limits).expect("within guards") {
            let key = (a.canonical_key(), b.canonical_key(), rest.canonical_key());
            *out.entry(key).or_insert_with(Rational::zero) += Rational::one();
        }
    }
    out
}

fn triple_map_right(d: &Diagram, limits: &Limits) -> TripleMap {
    // (Id ⊗ Δ) Δ: split, then split the second component.
    let mut out = TripleMap::new();
    for (first, rest) in decompositions(d, limits).expect("within guards") {
        for (a, b) in decompositions(&rest, limits).expect("within guards") {
            let key = (first.canonical_key(), a.canonical_key(), b.canonical_key());
            *out.entry(key).or_insert_with(Rational::zero) += Rational::one();
        }
    }
    out
}

fn check_coassociativity(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| (triple_map_left(d, limits) != triple_map_right(d, limits)).then(|| render_hwd(d)))
        .collect();
    failures_to_line(
        "coassociativity",
        format!("(Δ⊗Id)Δ = (Id⊗Δ)Δ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_counit_laws(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let x = sum(d);
            let delta = coproduct(&x, limits).expect("within guards");
            let mut left_applied = DiagramSum::zero();
            let mut right_applied = DiagramSum::zero();
            for (_, _, left, right, coefficient) in delta.iter() {
                left_applied.add_term(coefficient * &counit(&sum(left)), right);
                right_applied.add_term(coefficient * &counit(&sum(right)), left);
            }
            (left_applied != x || right_applied != x).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "counit-laws",
        format!("(ε⊗Id)Δ = Id = (Id⊗ε)Δ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_cocommutativity(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let delta = coproduct(&sum(d), limits).expect("within guards");
            (delta.swapped() != delta).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "cocommutativity",
        format!("swapping tensor factors fixes Δ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_coproduct_multiplicative(pairs: &[(Diagram, Diagram)], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(x, y)| {
            let product = sum(x).product(&sum(y), &limits).expect("within guards");
            let lhs = coproduct(&product, &limits).expect("within guards");
            let dx = coproduct(&sum(x), &limits).expect("within guards");
            let dy = coproduct(&sum(y), &limits).expect("within guards");
            let rhs = dx.product(&dy, &limits).expect("within guards");
            (lhs != rhs).then(|| show_pair(x, y))
        })
        .collect();
    failures_to_line(
        "coproduct-multiplicative",
        format!("Δ(x y) = Δ(x) Δ(y) on {} pairs with line counts summing to {bound}", pairs.len()),
        failures,
    )
}

fn check_counit_multiplicative(pairs: &[(Diagram, Diagram)], bound: usize) -> CheckLine {
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(x, y)| {
            let product = sum(x).product(&sum(y), &limits).expect("within guards");
            let lhs = counit(&product);
            let rhs = counit(&sum(x)) * counit(&sum(y));
            (lhs != rhs).then(|| show_pair(x, y))
        })
        .collect();
    failures_to_line(
        "counit-multiplicative",
        format!("ε(x y) = ε(x) ε(y) on {} pairs", pairs.len()),
        failures,
    )
}

fn check_antipode_identities(
    diagrams: &[Diagram],
    antipodes: &BTreeMap<CanonicalKey, DiagramSum>,
    limits: &Limits,
) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let x = sum(d);
            let expected = unit_projection(&x);
            let delta = coproduct(&x, limits).expect("within guards");
            let mut with_s_right = DiagramSum::zero();
            let mut with_s_left = DiagramSum::zero();
            for (left_key, right_key, left, right, coefficient) in delta.iter() {
                let s_right = &antipodes[right_key];
                let s_left = &antipodes[left_key];
                let folded = sum(left).product(s_right, limits).expect("within guards");
                with_s_right.add_scaled(coefficient, &folded);
                let folded = s_left.product(&sum(right), limits).expect("within guards");
                with_s_left.add_scaled(coefficient, &folded);
            }
            (with_s_right != expected || with_s_left != expected).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "antipode-identities",
        format!("μ(Id⊗S)Δ = Ξ = μ(S⊗Id)Δ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_antipode_antimorphism(
    pairs: &[(Diagram, Diagram)],
    antipodes: &BTreeMap<CanonicalKey, DiagramSum>,
    bound: usize,
) -> CheckLine {
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(x, y)| {
            let product = sum(x).product(&sum(y), &limits).expect("within guards");
            let lhs = antipode(&product, &limits).expect("within guards");
            let rhs = antipodes[&y.canonical_key()]
                .product(&antipodes[&x.canonical_key()], &limits)
                .expect("within guards");
            (lhs != rhs).then(|| show_pair(x, y))
        })
        .collect();
    failures_to_line(
        "antipode-antimorphism",
        format!("S(x y) = S(y) S(x) on {} pairs", pairs.len()),
        failures,
    )
}

fn check_antipode_involution(
    diagrams: &[Diagram],
    antipodes: &BTreeMap<CanonicalKey, DiagramSum>,
    bound: usize,
) -> CheckLine {
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let twice = antipode(&antipodes[&d.canonical_key()], &limits).expect("within guards");
            (twice != sum(d)).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "antipode-involution",
        format!("S(S(x)) = x on {} classes", diagrams.len()),
        failures,
    )
}

fn check_restriction_line_types(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let counts = d.line_counts();
            for (left, right) in decompositions(d, limits).expect("within guards") {
                let l = left.line_counts();
                let r = right.line_counts();
                if l.inner + r.inner != counts.inner
                    || l.incoming + r.incoming != counts.incoming
                    || l.outgoing + r.outgoing != counts.outgoing
                {
                    return Some(render_hwd(d));
                }
            }
            None
        })
        .collect();
    failures_to_line(
        "restriction-preserves-line-types",
        format!("line classes survive restriction on {} classes", diagrams.len()),
        failures,
    )
}

fn check_antipode_spot_value() -> CheckLine {
    let d = Diagram::single_vertex_pass();
    let s = antipode(&sum(&d), &Limits::default()).expect("within guards");
    let union = Diagram::incoming_line().disjoint_union(&Diagram::outgoing_line());
    let mut expected = DiagramSum::zero();
    expected.add_term(-Rational::one(), &d);
    expected.add_term(Rational::from_integer(2.into()), &union);
    expected.add_term(Rational::one(), &Diagram::inner_line());
    let mut failures = Vec::new();
    if s != expected {
        failures.push(format!("computed:\n{s:?}"));
    }
    failures_to_line(
        "antipode-spot-value",
        "S of the one-vertex pass diagram has its three known terms".to_string(),
        failures,
    )
}

/// Independent oracle: the antipode as the convolution inverse, computed by
/// the recursion S(Γ) = -Σ over proper splittings of Γ|_L * S(Γ|_R).
fn antipode_by_convolution(
    d: &Diagram,
    memo: &mut BTreeMap<CanonicalKey, DiagramSum>,
    limits: &Limits,
) -> DiagramSum {
    if d.is_empty() {
        return DiagramSum::unit();
    }
    let key = d.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut acc = DiagramSum::zero();
    for (left, right) in decompositions(d, limits).expect("within guards") {
        if left.is_empty() {
            continue;
        }
        let s_right = antipode_by_convolution(&right, memo, limits);
        let folded = sum(&left).product(&s_right, limits).expect("within guards");
        acc.add_scaled(&-Rational::one(), &folded);
    }
    memo.insert(key, acc.clone());
    acc
}

fn check_antipode_vs_convolution(bound: usize) -> CheckLine {
    let diagrams = corpus(bound);
    let limits = Limits::for_total_edges(2 * bound.max(1));
    let mut memo = BTreeMap::new();
    let mut failures = Vec::new();
    for d in &diagrams {
        let direct = antipode(&sum(d), &limits).expect("within guards");
        let recursive = antipode_by_convolution(d, &mut memo, &limits);
        if direct != recursive {
            failures.push(render_hwd(d));
        }
    }
    failures_to_line(
        "antipode-vs-convolution-oracle",
        format!("ordered-partition antipode equals the convolution inverse on {} classes", diagrams.len()),
        failures,
    )
}

/// All PBW monomials with total degree at most `total`.
pub fn pbw_monomials_up_to(total: u64) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for p in 0..=total {
        for q in 0..=total - p {
            for r in 0..=total - p - q {
                out.push(PbwMonomial::new(nat(p), nat(q), nat(r)));
            }
        }
    }
    out
}

fn check_envelope_hopf_axioms() -> CheckLine {
    let monomials = pbw_monomials_up_to(4);
    let mut failures = Vec::new();
    type PbwTriple = BTreeMap<(PbwMonomial, PbwMonomial, PbwMonomial), Rational>;
    for m in &monomials {
        let delta = pbw_monomial_coproduct(m);
        // Co-associativity.
        let mut left_route = PbwTriple::new();
        let mut right_route = PbwTriple::new();
        for (a, b, c) in delta.iter() {
            for (x, y, c2) in pbw_monomial_coproduct(a).iter() {
                *left_route
                    .entry((x.clone(), y.clone(), b.clone()))
                    .or_insert_with(Rational::zero) += c * c2;
            }
            for (x, y, c2) in pbw_monomial_coproduct(b).iter() {
                *right_route
                    .entry((a.clone(), x.clone(), y.clone()))
                    .or_insert_with(Rational::zero) += c * c2;
            }
        }
        left_route.retain(|_, v| !v.is_zero());
        right_route.retain(|_, v| !v.is_zero());
        if left_route != right_route {
            failures.push(format!("coassociativity at {m:?}"));
        }
        // Counit laws and antipode identities.
        let poly = PbwPolynomial::from_monomial(m.clone());
        let mut counit_left = PbwPolynomial::zero();
        let mut counit_right = PbwPolynomial::zero();
        let mut s_right_folded = PbwPolynomial::zero();
        let mut s_left_folded = PbwPolynomial::zero();
        for (a, b, c) in delta.iter() {
            let a_poly = PbwPolynomial::from_monomial(a.clone());
            let b_poly = PbwPolynomial::from_monomial(b.clone());
            counit_left.add_scaled(&(c * a_poly.counit()), &b_poly);
            counit_right.add_scaled(&(c * b_poly.counit()), &a_poly);
            s_right_folded.add_scaled(c, &a_poly.product(&b_poly.antipode()));
            s_left_folded.add_scaled(c, &a_poly.antipode().product(&b_poly));
        }
        if counit_left != poly || counit_right != poly {
            failures.push(format!("counit law at {m:?}"));
        }
        let projected = PbwPolynomial::one().scaled(&poly.counit());
        if s_right_folded != projected || s_left_folded != projected {
            failures.push(format!("antipode identity at {m:?}"));
        }
    }
    failures_to_line(
        "envelope-hopf-axioms",
        format!("co-associativity, counit and antipode identities on {} monomials", monomials.len()),
        failures,
    )
}

// ---------------------------------------------------------------------------
// morphism
// ---------------------------------------------------------------------------

pub fn morphism_suite(bound: usize) -> SuiteReport {
    let diagrams = corpus(bound);
    let limits = Limits::for_total_edges(2 * bound.max(1));
    let lines = vec![
        check_phi_multiplicative(&diagrams),
        check_phi_bar_projection(&diagrams),
        check_phi_coproduct(&diagrams, &limits),
        check_phi_counit(&diagrams),
        check_phi_antipode(&diagrams, &limits),
        check_surjectivity_witnesses(),
        check_fig1(),
    ];
    SuiteReport { suite: "morphism", lines }
}

fn check_phi_multiplicative(diagrams: &[Diagram]) -> CheckLine {
    // φ applied matching by matching needs no canonical collection, so the
    // full square of the corpus is affordable.
    let n = diagrams.len();
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = &diagrams[i];
            diagrams.iter().filter_map(move |y| {
                let mut lhs = PbwPolynomial::zero();
                for m in enumerate_matchings(x, y, None) {
                    let composite = compose(x, &m, y).expect("enumerated matching fits");
                    lhs.add_term(Rational::one(), phi_diagram(&composite));
                }
                let rhs = pbw_monomial_product(&phi_diagram(x), &phi_diagram(y));
                (lhs != rhs).then(|| show_pair(x, y))
            })
        })
        .collect();
    failures_to_line(
        "phi-multiplicative",
        format!("φ(x y) = φ(x) φ(y) on all {} corpus pairs", n * n),
        failures,
    )
}

fn check_phi_bar_projection(diagrams: &[Diagram]) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let x = sum(d);
            (phi_bar(&x) != phi(&x).project() || phi_bar_diagram(d) != {
                let m = phi_diagram(d);
                HwMonomial::new(m.creation.clone(), m.annihilation.clone())
            })
            .then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "phi-bar-is-projected-phi",
        format!("φ̄ = π ∘ φ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_phi_coproduct(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let mut lhs = PbwTensor::zero();
            for (left, right) in decompositions(d, limits).expect("within guards") {
                lhs.add_term(Rational::one(), phi_diagram(&left), phi_diagram(&right));
            }
            let rhs = pbw_monomial_coproduct(&phi_diagram(d));
            (lhs != rhs).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "phi-intertwines-coproducts",
        format!("(φ⊗φ)Δ = Δφ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_phi_counit(diagrams: &[Diagram]) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let x = sum(d);
            (counit(&x) != phi(&x).counit()).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "phi-preserves-counit",
        format!("ε = ε ∘ φ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_phi_antipode(diagrams: &[Diagram], limits: &Limits) -> CheckLine {
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let s_diagram = antipode(&sum(d), limits).expect("within guards");
            let lhs = phi(&s_diagram);
            let rhs = phi(&sum(d)).antipode();
            (lhs != rhs).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "phi-intertwines-antipodes",
        format!("φ ∘ S = S ∘ φ on {} classes", diagrams.len()),
        failures,
    )
}

fn check_surjectivity_witnesses() -> CheckLine {
    let mut failures = Vec::new();
    let mut tested = 0usize;
    for k in 0..=6usize {
        for l in 0..=6usize {
            for m in 0..=3usize {
                if k + l + 2 * m > 6 {
                    continue;
                }
                tested += 1;
                let witness = monomial_witness(k, l, m);
                if phi_diagram(&witness) != PbwMonomial::new(nat(k as u64), nat(l as u64), nat(m as u64)) {
                    failures.push(format!("ad^{k} a^{l} e^{m}"));
                }
            }
        }
    }
    failures_to_line(
        "phi-surjectivity-witnesses",
        format!("constructed preimages for {tested} monomials with k+l+2m up to 6"),
        failures,
    )
}

fn check_fig1() -> CheckLine {
    let d = fig1_diagram();
    let counts = d.line_counts();
    let mut failures = Vec::new();
    if (counts.inner, counts.incoming, counts.outgoing) != (4, 4, 3) {
        failures.push(format!("line counts {counts:?}"));
    }
    if phi_diagram(&d) != PbwMonomial::new(nat(3), nat(4), nat(4)) {
        failures.push("phi image".to_string());
    }
    if format!("{}", phi(&sum(&d))) != "ad^3 a^4 e^4" {
        failures.push(format!("rendered phi image {}", phi(&sum(&d))));
    }
    if format!("{}", phi_bar(&sum(&d))) != "ad^3 a^4" {
        failures.push(format!("rendered phi-bar image {}", phi_bar(&sum(&d))));
    }
    failures_to_line(
        "fig1-line-counts-and-image",
        "the worked example diagram has counts (4,4,3) and image ad^3 a^4 e^4".to_string(),
        failures,
    )
}

// ---------------------------------------------------------------------------
// counting
// ---------------------------------------------------------------------------

pub fn counting_suite(bound: usize) -> SuiteReport {
    let diagrams = corpus(bound);
    let lines = vec![
        check_matching_formula(&diagrams),
        check_composition_line_counts(bound.min(3)),
        check_decomposition_count(bound + 1),
        check_decomposition_refined_count(bound + 1),
        check_ordered_partition_count(),
    ];
    SuiteReport { suite: "counting", lines }
}

fn check_matching_formula(diagrams: &[Diagram]) -> CheckLine {
    let n = diagrams.len();
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let upper = &diagrams[i];
            diagrams.iter().filter_map(move |lower| {
                let n_minus = upper.line_counts().incoming;
                let n_plus = lower.line_counts().outgoing;
                for size in 0..=n_minus.min(n_plus) + 1 {
                    let found = enumerate_matchings(upper, lower, Some(size)).len();
                    if BigUint::from(found) != matching_count(n_minus, n_plus, size) {
                        return Some(show_pair(upper, lower));
                    }
                }
                None
            })
        })
        .collect();
    failures_to_line(
        "matching-formula",
        format!("enumerated matchings agree with C(n-,i) C(n+,i) i! on {} pairs", n * n),
        failures,
    )
}

fn check_composition_line_counts(bound: usize) -> CheckLine {
    let diagrams = corpus(bound);
    let n = diagrams.len();
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let upper = &diagrams[i];
            diagrams.iter().filter_map(move |lower| {
                let up = upper.line_counts();
                let low = lower.line_counts();
                for m in enumerate_matchings(upper, lower, None) {
                    // compose re-validates, so acyclicity failures surface here.
                    let Ok(composite) = compose(upper, &m, lower) else {
                        return Some(show_pair(upper, lower));
                    };
                    let i = m.len();
                    let c = composite.line_counts();
                    if c.outgoing != up.outgoing + low.outgoing - i
                        || c.incoming != up.incoming + low.incoming - i
                        || c.inner != up.inner + low.inner + i
                    {
                        return Some(show_pair(upper, lower));
                    }
                }
                None
            })
        })
        .collect();
    failures_to_line(
        "composition-line-counts",
        format!("every composition is acyclic with the expected line counts ({} pairs)", n * n),
        failures,
    )
}

fn check_decomposition_count(bound: usize) -> CheckLine {
    let diagrams = corpus(bound);
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let found = decompositions(d, &limits).expect("within guards").len();
            (found != 1usize << d.edge_count()).then(|| render_hwd(d))
        })
        .collect();
    failures_to_line(
        "decomposition-count",
        format!("every diagram splits in exactly 2^lines ways ({} classes)", diagrams.len()),
        failures,
    )
}

fn check_decomposition_refined_count(bound: usize) -> CheckLine {
    let diagrams = corpus(bound);
    let limits = Limits::for_total_edges(bound.max(1));
    let failures: Vec<String> = diagrams
        .par_iter()
        .filter_map(|d| {
            let counts = d.line_counts();
            let mut by_shape: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
            for (left, _) in decompositions(d, &limits).expect("within guards") {
                let l = left.line_counts();
                *by_shape.entry((l.outgoing, l.incoming, l.inner)).or_insert(0) += 1;
            }
            for i in 0..=counts.outgoing {
                for j in 0..=counts.incoming {
                    for k in 0..=counts.inner {
                        let expected = binomial(counts.outgoing, i)
                            * binomial(counts.incoming, j)
                            * binomial(counts.inner, k);
                        let found = by_shape.remove(&(i, j, k)).unwrap_or(0);
                        if BigUint::from(found) != expected {
                            return Some(render_hwd(d));
                        }
                    }
                }
            }
            if !by_shape.is_empty() {
                return Some(render_hwd(d));
            }
            None
        })
        .collect();
    failures_to_line(
        "decomposition-refined-count",
        format!(
            "splittings with a given first-component shape are counted by binomials ({} classes)",
            diagrams.len()
        ),
        failures,
    )
}

fn binomial(n: usize, k: usize) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

fn check_ordered_partition_count() -> CheckLine {
    let mut failures = Vec::new();
    for size in 0..=6usize {
        for blocks in 1..=6usize {
            let found = ordered_partitions(size, blocks).len();
            let mut factorial = BigUint::one();
            for i in 2..=blocks {
                factorial *= BigUint::from(i);
            }
            let expected = factorial * stirling_second(size, blocks);
            if BigUint::from(found) != expected {
                failures.push(format!("size {size}, blocks {blocks}"));
            }
        }
    }
    failures_to_line(
        "ordered-partition-count",
        "ordered partitions are counted by n! S(k,n) for sizes up to 6".to_string(),
        failures,
    )
}
