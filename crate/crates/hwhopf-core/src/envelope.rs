//! The enveloping algebra of the Heisenberg Lie algebra in the PBW basis
//! `ad^k a^l e^m`, the Heisenberg-Weyl algebra obtained from it by sending
//! the central element to the identity, and a string-rewriting normal
//! ordering engine that serves as an independent oracle for both products.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::Rational;

/// The three generators, in normal-form order: creators first, then
/// annihilators, then the central element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `ad` — the creation operator a†.
    Creation,
    /// `a` — the annihilation operator.
    Annihilation,
    /// `e` — the central element of the Heisenberg Lie algebra.
    Central,
}

/// A PBW basis monomial `ad^creation a^annihilation e^central`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub creation: BigUint,
    pub annihilation: BigUint,
    pub central: BigUint,
}

impl PbwMonomial {
    pub fn new(creation: BigUint, annihilation: BigUint, central: BigUint) -> Self {
        PbwMonomial { creation, annihilation, central }
    }

    /// The identity monomial (all exponents zero).
    pub fn one() -> Self {
        PbwMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.creation.is_zero() && self.annihilation.is_zero() && self.central.is_zero()
    }

    pub fn generator(generator: Generator, exponent: BigUint) -> Self {
        let mut monomial = PbwMonomial::one();
        match generator {
            Generator::Creation => monomial.creation = exponent,
            Generator::Annihilation => monomial.annihilation = exponent,
            Generator::Central => monomial.central = exponent,
        }
        monomial
    }
}

/// A basis monomial `ad^creation a^annihilation` of the Heisenberg-Weyl
/// algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HwMonomial {
    pub creation: BigUint,
    pub annihilation: BigUint,
}

impl HwMonomial {
    pub fn new(creation: BigUint, annihilation: BigUint) -> Self {
        HwMonomial { creation, annihilation }
    }

    pub fn one() -> Self {
        HwMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.creation.is_zero() && self.annihilation.is_zero()
    }
}

/// Yields `(i, C(n, i))` for `i = 0, .., n`, computing each binomial from the
/// previous one.
struct BinomialScan {
    n: BigUint,
    i: BigUint,
    value: BigUint,
    finished: bool,
}

impl BinomialScan {
    fn new(n: &BigUint) -> Self {
        BinomialScan { n: n.clone(), i: BigUint::zero(), value: BigUint::one(), finished: false }
    }
}

impl Iterator for BinomialScan {
    type Item = (BigUint, BigUint);

    fn next(&mut self) -> Option<(BigUint, BigUint)> {
        if self.finished {
            return None;
        }
        let current = (self.i.clone(), self.value.clone());
        if self.i == self.n {
            self.finished = true;
        } else {
            let next = &self.i + 1u32;
            self.value = &self.value * (&self.n - &self.i) / &next;
            self.i = next;
        }
        Some(current)
    }
}

/// A finitely supported rational combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwPolynomial {
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl PbwPolynomial {
    pub fn zero() -> Self {
        PbwPolynomial::default()
    }

    pub fn one() -> Self {
        PbwPolynomial::from_monomial(PbwMonomial::one())
    }

    pub fn from_monomial(monomial: PbwMonomial) -> Self {
        let mut poly = PbwPolynomial::zero();
        poly.add_term(Rational::one(), monomial);
        poly
    }

    pub fn add_term(&mut self, coefficient: Rational, monomial: PbwMonomial) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            alloc::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += coefficient;
                if entry.get().is_zero() {
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

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &PbwMonomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return PbwPolynomial::zero();
        }
        PbwPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &PbwPolynomial) {
        for (monomial, coefficient) in other.iter() {
            self.add_term(factor * coefficient, monomial.clone());
        }
    }

    /// The associative product of the enveloping algebra, extended
    /// bilinearly from [`pbw_monomial_product`].
    pub fn product(&self, other: &PbwPolynomial) -> PbwPolynomial {
        let mut out = PbwPolynomial::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_scaled(&(x * y), &pbw_monomial_product(a, b));
            }
        }
        out
    }

    /// The coproduct, extended linearly from [`pbw_monomial_coproduct`].
    pub fn coproduct(&self) -> PbwTensor {
        let mut out = PbwTensor::zero();
        for (monomial, coefficient) in self.iter() {
            out.add_scaled(coefficient, &pbw_monomial_coproduct(monomial));
        }
        out
    }

    /// The antipode: `ad^p a^q e^r` goes to `(-1)^(p+q+r)` times the normal
    /// ordering of `e^r a^q ad^p`. Extended linearly.
    pub fn antipode(&self) -> PbwPolynomial {
        let mut out = PbwPolynomial::zero();
        for (monomial, coefficient) in self.iter() {
            let parity = (&monomial.creation + &monomial.annihilation + &monomial.central).bit(0);
            let sign = if parity { -Rational::one() } else { Rational::one() };
            // e^r a^q times ad^p, reordered into the PBW basis.
            let reversed = pbw_monomial_product(
                &PbwMonomial::new(BigUint::zero(), monomial.annihilation.clone(), monomial.central.clone()),
                &PbwMonomial::new(monomial.creation.clone(), BigUint::zero(), BigUint::zero()),
            );
            out.add_scaled(&(coefficient * sign), &reversed);
        }
        out
    }

    /// The counit: the coefficient of the identity monomial.
    pub fn counit(&self) -> Rational {
        self.coefficient(&PbwMonomial::one())
    }

    /// The projection onto the Heisenberg-Weyl algebra: sends `e` to the
    /// identity, collecting coefficients of equal `(creation, annihilation)`.
    pub fn project(&self) -> HwPolynomial {
        let mut out = HwPolynomial::zero();
        for (monomial, coefficient) in self.iter() {
            out.add_term(
                coefficient.clone(),
                HwMonomial::new(monomial.creation.clone(), monomial.annihilation.clone()),
            );
        }
        out
    }
}

/// Product of PBW basis monomials:
/// `ad^p a^q e^r · ad^k a^l e^m
///   = Σ_i C(q,i) C(k,i) i! ad^(p+k-i) a^(q+l-i) e^(r+m+i)`
/// with `i` running to the smaller of `q` and `k`.
pub fn pbw_monomial_product(a: &PbwMonomial, b: &PbwMonomial) -> PbwPolynomial {
    let q = &a.annihilation;
    let k = &b.creation;
    let bound = q.min(k);
    let mut out = PbwPolynomial::zero();
    let mut i = BigUint::zero();
    let mut binom_q = BigUint::one();
    let mut binom_k = BigUint::one();
    let mut factorial = BigUint::one();
    loop {
        let coefficient = &binom_q * &binom_k * &factorial;
        let monomial = PbwMonomial::new(
            &a.creation + k - &i,
            q + &b.annihilation - &i,
            &a.central + &b.central + &i,
        );
        out.add_term(Rational::from_integer(coefficient.into()), monomial);
        if &i == bound {
            break;
        }
        let next = &i + 1u32;
        binom_q = binom_q * (q - &i) / &next;
        binom_k = binom_k * (k - &i) / &next;
        factorial *= &next;
        i = next;
    }
    out
}

/// Coproduct of a PBW basis monomial: the binomial splitting
/// `Δ(ad^p a^q e^r) = Σ C(p,i) C(q,j) C(r,k) ad^i a^j e^k ⊗ ad^(p-i) a^(q-j) e^(r-k)`.
pub fn pbw_monomial_coproduct(monomial: &PbwMonomial) -> PbwTensor {
    let mut out = PbwTensor::zero();
    for (i, ci) in BinomialScan::new(&monomial.creation) {
        for (j, cj) in BinomialScan::new(&monomial.annihilation) {
            for (k, ck) in BinomialScan::new(&monomial.central) {
                let coefficient = &ci * &cj * &ck;
                let left = PbwMonomial::new(i.clone(), j.clone(), k.clone());
                let right = PbwMonomial::new(
                    &monomial.creation - &i,
                    &monomial.annihilation - &j,
                    &monomial.central - &k,
                );
                out.add_term(Rational::from_integer(coefficient.into()), left, right);
            }
        }
    }
    out
}

/// A rational combination of ordered pairs of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwTensor {
    terms: BTreeMap<(PbwMonomial, PbwMonomial), Rational>,
}

impl PbwTensor {
    pub fn zero() -> Self {
        PbwTensor::default()
    }

    pub fn add_term(&mut self, coefficient: Rational, left: PbwMonomial, right: PbwMonomial) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            alloc::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += coefficient;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &PbwTensor) {
        for ((left, right), coefficient) in &other.terms {
            self.add_term(factor * coefficient, left.clone(), right.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &PbwMonomial, &Rational)> {
        self.terms.iter().map(|((left, right), coefficient)| (left, right, coefficient))
    }

    pub fn coefficient(&self, left: &PbwMonomial, right: &PbwMonomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn swapped(&self) -> PbwTensor {
        let mut out = PbwTensor::zero();
        for (left, right, coefficient) in self.iter() {
            out.add_term(coefficient.clone(), right.clone(), left.clone());
        }
        out
    }
}

/// A finitely supported rational combination of Heisenberg-Weyl monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HwPolynomial {
    terms: BTreeMap<HwMonomial, Rational>,
}

impl HwPolynomial {
    pub fn zero() -> Self {
        HwPolynomial::default()
    }

    pub fn one() -> Self {
        HwPolynomial::from_monomial(HwMonomial::one())
    }

    pub fn from_monomial(monomial: HwMonomial) -> Self {
        let mut poly = HwPolynomial::zero();
        poly.add_term(Rational::one(), monomial);
        poly
    }

    pub fn add_term(&mut self, coefficient: Rational, monomial: HwMonomial) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            alloc::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += coefficient;
                if entry.get().is_zero() {
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

    pub fn iter(&self) -> impl Iterator<Item = (&HwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &HwMonomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &HwPolynomial) {
        for (monomial, coefficient) in other.iter() {
            self.add_term(factor * coefficient, monomial.clone());
        }
    }

    /// The Heisenberg-Weyl product, extended bilinearly from
    /// [`hw_monomial_product`].
    pub fn product(&self, other: &HwPolynomial) -> HwPolynomial {
        let mut out = HwPolynomial::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_scaled(&(x * y), &hw_monomial_product(a, b));
            }
        }
        out
    }
}

/// Product of Heisenberg-Weyl basis monomials:
/// `ad^p a^q · ad^k a^l = Σ_i C(q,i) C(k,i) i! ad^(p+k-i) a^(q+l-i)`.
pub fn hw_monomial_product(a: &HwMonomial, b: &HwMonomial) -> HwPolynomial {
    let q = &a.annihilation;
    let k = &b.creation;
    let bound = q.min(k);
    let mut out = HwPolynomial::zero();
    let mut i = BigUint::zero();
    let mut binom_q = BigUint::one();
    let mut binom_k = BigUint::one();
    let mut factorial = BigUint::one();
    loop {
        let coefficient = &binom_q * &binom_k * &factorial;
        let monomial = HwMonomial::new(&a.creation + k - &i, q + &b.annihilation - &i);
        out.add_term(Rational::from_integer(coefficient.into()), monomial);
        if &i == bound {
            break;
        }
        let next = &i + 1u32;
        binom_q = binom_q * (q - &i) / &next;
        binom_k = binom_k * (k - &i) / &next;
        factorial *= &next;
        i = next;
    }
    out
}

/// A word in the free monoid on the generators, run-length encoded. The
/// empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<(Generator, BigUint)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Builds a word from runs, dropping zero exponents and merging adjacent
    /// runs of the same generator.
    pub fn new(letters: Vec<(Generator, BigUint)>) -> Self {
        Word { letters: normalize_runs(letters) }
    }

    pub fn from_generators<I: IntoIterator<Item = Generator>>(generators: I) -> Self {
        Word::new(generators.into_iter().map(|g| (g, BigUint::one())).collect())
    }

    pub fn letters(&self) -> &[(Generator, BigUint)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, generator: Generator, exponent: BigUint) {
        if exponent.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == generator {
                last.1 += exponent;
                return;
            }
        }
        self.letters.push((generator, exponent));
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for (generator, exponent) in &other.letters {
            out.push(*generator, exponent.clone());
        }
        out
    }

    /// Normal ordering by term rewriting: repeatedly applies
    /// `a ad -> ad a + e`, `e ad -> ad e`, `e a -> a e` at the leftmost
    /// reducible position of each pending word until every word is in PBW
    /// order, then collects the results. This is the independent oracle the
    /// closed-form products are checked against.
    pub fn normal_order(&self) -> PbwPolynomial {
        let mut out = PbwPolynomial::zero();
        let mut pending: Vec<(Rational, Vec<(Generator, BigUint)>)> =
            vec![(Rational::one(), self.letters.clone())];
        while let Some((coefficient, word)) = pending.pop() {
            match first_redex(&word) {
                None => out.add_term(coefficient, monomial_of_normal_word(&word)),
                Some(at) => {
                    let one = BigUint::one();
                    let prefix = &word[..at];
                    let suffix = &word[at + 2..];
                    let (left_gen, left_exp) = &word[at];
                    let (right_gen, right_exp) = &word[at + 1];
                    match (left_gen, right_gen) {
                        // a^q ad^k -> a^(q-1) (ad a + e) ad^(k-1)
                        (Generator::Annihilation, Generator::Creation) => {
                            let mut swapped = prefix.to_vec();
                            swapped.push((Generator::Annihilation, left_exp - &one));
                            swapped.push((Generator::Creation, one.clone()));
                            swapped.push((Generator::Annihilation, one.clone()));
                            swapped.push((Generator::Creation, right_exp - &one));
                            swapped.extend_from_slice(suffix);
                            pending.push((coefficient.clone(), normalize_runs(swapped)));

                            let mut central = prefix.to_vec();
                            central.push((Generator::Annihilation, left_exp - &one));
                            central.push((Generator::Central, one.clone()));
                            central.push((Generator::Creation, right_exp - &one));
                            central.extend_from_slice(suffix);
                            pending.push((coefficient, normalize_runs(central)));
                        }
                        // e^r x^n -> x^n e^r for x in {ad, a}
                        (Generator::Central, _) => {
                            let mut swapped = prefix.to_vec();
                            swapped.push((*right_gen, right_exp.clone()));
                            swapped.push((Generator::Central, left_exp.clone()));
                            swapped.extend_from_slice(suffix);
                            pending.push((coefficient, normalize_runs(swapped)));
                        }
                        _ => unreachable!("not a redex"),
                    }
                }
            }
        }
        out
    }

    /// Normal ordering through the closed-form basis product: folds the runs
    /// into PBW monomials and multiplies them out left to right.
    pub fn monomial_product(&self) -> PbwPolynomial {
        let mut out = PbwPolynomial::one();
        for (generator, exponent) in &self.letters {
            let step =
                PbwPolynomial::from_monomial(PbwMonomial::generator(*generator, exponent.clone()));
            out = out.product(&step);
        }
        out
    }
}

fn normalize_runs(letters: Vec<(Generator, BigUint)>) -> Vec<(Generator, BigUint)> {
    let mut out: Vec<(Generator, BigUint)> = Vec::with_capacity(letters.len());
    for (generator, exponent) in letters {
        if exponent.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.0 == generator => last.1 += exponent,
            _ => out.push((generator, exponent)),
        }
    }
    out
}

/// Position of the leftmost adjacent pair of runs that a rewrite rule
/// applies to, if any.
fn first_redex(word: &[(Generator, BigUint)]) -> Option<usize> {
    word.windows(2).position(|pair| {
        matches!(
            (pair[0].0, pair[1].0),
            (Generator::Annihilation, Generator::Creation)
                | (Generator::Central, Generator::Creation)
                | (Generator::Central, Generator::Annihilation)
        )
    })
}

fn monomial_of_normal_word(word: &[(Generator, BigUint)]) -> PbwMonomial {
    debug_assert!(word.windows(2).all(|pair| pair[0].0 < pair[1].0), "word is in PBW order");
    let mut monomial = PbwMonomial::one();
    for (generator, exponent) in word {
        match generator {
            Generator::Creation => monomial.creation += exponent,
            Generator::Annihilation => monomial.annihilation += exponent,
            Generator::Central => monomial.central += exponent,
        }
    }
    monomial
}

fn write_exponent(out: &mut String, name: &str, exponent: &BigUint) -> fmt::Result {
    if exponent.is_zero() {
        return Ok(());
    }
    if !out.is_empty() {
        out.push(' ');
    }
    if exponent.is_one() {
        write!(out, "{name}")
    } else {
        write!(out, "{name}^{exponent}")
    }
}

fn format_pbw_monomial(monomial: &PbwMonomial) -> String {
    let mut out = String::new();
    let _ = write_exponent(&mut out, "ad", &monomial.creation);
    let _ = write_exponent(&mut out, "a", &monomial.annihilation);
    let _ = write_exponent(&mut out, "e", &monomial.central);
    out
}

fn format_hw_monomial(monomial: &HwMonomial) -> String {
    let mut out = String::new();
    let _ = write_exponent(&mut out, "ad", &monomial.creation);
    let _ = write_exponent(&mut out, "a", &monomial.annihilation);
    out
}

fn format_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    let mut any = false;
    for (body, coefficient) in terms {
        any = true;
        let negative = coefficient < &Rational::zero();
        let magnitude = if negative { -coefficient.clone() } else { coefficient.clone() };
        if first {
            if negative {
                f.write_str("-")?;
            }
            first = false;
        } else if negative {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        if body.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            f.write_str(&body)?;
        } else {
            write!(f, "{magnitude} {body}")?;
        }
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for PbwPolynomial {
    /// Terms in descending lexicographic order of the exponent triple.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms.iter().rev().map(|(m, c)| (format_pbw_monomial(m), c)))
    }
}

impl fmt::Display for HwPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, self.terms.iter().rev().map(|(m, c)| (format_hw_monomial(m), c)))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Creation => f.write_str("ad"),
            Generator::Annihilation => f.write_str("a"),
            Generator::Central => f.write_str("e"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for (generator, exponent) in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exponent.is_one() {
                write!(f, "{generator}")?;
            } else {
                write!(f, "{generator}^{exponent}")?;
            }
        }
        Ok(())
    }
}

impl core::ops::Mul<&PbwPolynomial> for &PbwPolynomial {
    type Output = PbwPolynomial;

    fn mul(self, other: &PbwPolynomial) -> PbwPolynomial {
        self.product(other)
    }
}

impl core::ops::Mul<&HwPolynomial> for &HwPolynomial {
    type Output = HwPolynomial;

    fn mul(self, other: &HwPolynomial) -> HwPolynomial {
        self.product(other)
    }
}

impl core::ops::Add<&PbwPolynomial> for &PbwPolynomial {
    type Output = PbwPolynomial;

    fn add(self, other: &PbwPolynomial) -> PbwPolynomial {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }
}

impl core::ops::Sub<&PbwPolynomial> for &PbwPolynomial {
    type Output = PbwPolynomial;

    fn sub(self, other: &PbwPolynomial) -> PbwPolynomial {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }
}

impl core::ops::Sub<&HwPolynomial> for &HwPolynomial {
    type Output = HwPolynomial;

    fn sub(self, other: &HwPolynomial) -> HwPolynomial {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, nat};
    use alloc::format;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn mono(k: u64, l: u64, m: u64) -> PbwMonomial {
        PbwMonomial::new(nat(k), nat(l), nat(m))
    }

    fn poly(k: u64, l: u64, m: u64) -> PbwPolynomial {
        PbwPolynomial::from_monomial(mono(k, l, m))
    }

    fn word(generators: &[Generator]) -> Word {
        Word::from_generators(generators.iter().copied())
    }

    use Generator::{Annihilation as A, Central as E, Creation as Ad};

    #[test]
    fn the_defining_relation() {
        // a · ad = ad a + e
        let product = poly(0, 1, 0).product(&poly(1, 0, 0));
        assert_eq!(product.coefficient(&mono(1, 1, 0)), int(1));
        assert_eq!(product.coefficient(&mono(0, 0, 1)), int(1));
        assert_eq!(product.term_count(), 2);
    }

    #[test]
    fn squares_of_annihilators_against_creators() {
        // a² · ad² = ad² a² + 4 ad a e + 2 e²
        let product = poly(0, 2, 0).product(&poly(2, 0, 0));
        assert_eq!(product.coefficient(&mono(2, 2, 0)), int(1));
        assert_eq!(product.coefficient(&mono(1, 1, 1)), int(4));
        assert_eq!(product.coefficient(&mono(0, 0, 2)), int(2));
        assert_eq!(product.term_count(), 3);
        let oracle = word(&[A, A, Ad, Ad]).normal_order();
        assert_eq!(product, oracle);
    }

    #[test]
    fn number_operator_squared() {
        // (ad a)(ad a) = ad² a² + ad a e
        let n = poly(1, 1, 0);
        let squared = n.product(&n);
        assert_eq!(squared.coefficient(&mono(2, 2, 0)), int(1));
        assert_eq!(squared.coefficient(&mono(1, 1, 1)), int(1));
        assert_eq!(squared.term_count(), 2);
        assert_eq!(squared, word(&[Ad, A, Ad, A]).normal_order());
    }

    #[test]
    fn hw_products() {
        // a · ad = ad a + 1
        let a = HwPolynomial::from_monomial(HwMonomial::new(nat(0), nat(1)));
        let ad = HwPolynomial::from_monomial(HwMonomial::new(nat(1), nat(0)));
        let product = a.product(&ad);
        assert_eq!(product.coefficient(&HwMonomial::new(nat(1), nat(1))), int(1));
        assert_eq!(product.coefficient(&HwMonomial::one()), int(1));
        // (ad a)² = ad² a² + ad a
        let n = HwPolynomial::from_monomial(HwMonomial::new(nat(1), nat(1)));
        let squared = n.product(&n);
        assert_eq!(squared.coefficient(&HwMonomial::new(nat(2), nat(2))), int(1));
        assert_eq!(squared.coefficient(&HwMonomial::new(nat(1), nat(1))), int(1));
        // unit law
        assert_eq!(n.product(&HwPolynomial::one()), n);
    }

    #[test]
    fn rewrite_oracle_basics() {
        let mut expected = PbwPolynomial::zero();
        expected.add_term(int(1), mono(1, 1, 0));
        expected.add_term(int(1), mono(0, 0, 1));
        assert_eq!(word(&[A, Ad]).normal_order(), expected);
        let squared = word(&[A, Ad, A, Ad]).normal_order();
        assert_eq!(squared.coefficient(&mono(2, 2, 0)), int(1));
        assert_eq!(squared.coefficient(&mono(1, 1, 1)), int(3));
        assert_eq!(squared.coefficient(&mono(0, 0, 2)), int(1));
        assert_eq!(squared.term_count(), 3);
        assert_eq!(Word::identity().normal_order(), PbwPolynomial::one());
    }

    #[test]
    fn oracle_equals_closed_form_on_all_short_words() {
        let generators = [Ad, A, E];
        for length in 0..=5usize {
            let mut pick = vec![0usize; length];
            loop {
                let w = word(&pick.iter().map(|&i| generators[i]).collect::<Vec<_>>());
                assert_eq!(w.normal_order(), w.monomial_product(), "word {w}");
                let mut at = 0;
                loop {
                    if at == length {
                        break;
                    }
                    pick[at] += 1;
                    if pick[at] < generators.len() {
                        break;
                    }
                    pick[at] = 0;
                    at += 1;
                }
                if at == length {
                    break;
                }
            }
        }
    }

    #[test]
    fn central_element_commutes() {
        for (k, l, m) in [(2, 1, 0), (0, 3, 1), (1, 1, 2)] {
            let x = poly(k, l, m);
            let e = poly(0, 0, 2);
            assert_eq!(x.product(&e), e.product(&x));
        }
    }

    #[test]
    fn coproduct_on_generators_is_primitive() {
        let delta = pbw_monomial_coproduct(&mono(1, 0, 0));
        assert_eq!(delta.term_count(), 2);
        assert_eq!(delta.coefficient(&mono(1, 0, 0), &PbwMonomial::one()), int(1));
        assert_eq!(delta.coefficient(&PbwMonomial::one(), &mono(1, 0, 0)), int(1));
        assert_eq!(pbw_monomial_coproduct(&PbwMonomial::one()).term_count(), 1);
    }

    #[test]
    fn coproduct_of_the_number_operator() {
        let delta = pbw_monomial_coproduct(&mono(1, 1, 0));
        assert_eq!(delta.term_count(), 4);
        assert_eq!(delta.coefficient(&mono(1, 1, 0), &PbwMonomial::one()), int(1));
        assert_eq!(delta.coefficient(&mono(1, 0, 0), &mono(0, 1, 0)), int(1));
        assert_eq!(delta.coefficient(&mono(0, 1, 0), &mono(1, 0, 0)), int(1));
        assert_eq!(delta.coefficient(&PbwMonomial::one(), &mono(1, 1, 0)), int(1));
    }

    #[test]
    fn antipode_values() {
        // S(ad) = -ad
        assert_eq!(poly(1, 0, 0).antipode(), poly(1, 0, 0).scaled(&int(-1)));
        // S(ad a) = a ad = ad a + e
        let s = poly(1, 1, 0).antipode();
        assert_eq!(s.coefficient(&mono(1, 1, 0)), int(1));
        assert_eq!(s.coefficient(&mono(0, 0, 1)), int(1));
        // S(ad a e) = -ad a e - e²
        let s = poly(1, 1, 1).antipode();
        assert_eq!(s.coefficient(&mono(1, 1, 1)), int(-1));
        assert_eq!(s.coefficient(&mono(0, 0, 2)), int(-1));
        assert_eq!(s.term_count(), 2);
        assert_eq!(PbwPolynomial::one().antipode(), PbwPolynomial::one());
    }

    #[test]
    fn counit_values() {
        assert_eq!(PbwPolynomial::one().counit(), int(1));
        assert_eq!(poly(1, 1, 0).counit(), int(0));
        // Multiplicative on a small grid of monomials.
        for (x, y) in [(mono(0, 0, 0), mono(0, 0, 0)), (mono(1, 0, 0), mono(0, 1, 0)), (mono(0, 0, 1), mono(0, 0, 0))] {
            let product = pbw_monomial_product(&x, &y);
            let lhs = product.counit();
            let rhs = PbwPolynomial::from_monomial(x.clone()).counit()
                * PbwPolynomial::from_monomial(y.clone()).counit();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_values() {
        let projected = poly(1, 1, 2).project();
        assert_eq!(projected, HwPolynomial::from_monomial(HwMonomial::new(nat(1), nat(1))));
        let mut mixed = PbwPolynomial::zero();
        mixed.add_term(int(1), mono(2, 2, 0));
        mixed.add_term(int(3), mono(1, 1, 1));
        mixed.add_term(int(1), mono(0, 0, 2));
        let projected = mixed.project();
        assert_eq!(projected.coefficient(&HwMonomial::new(nat(2), nat(2))), int(1));
        assert_eq!(projected.coefficient(&HwMonomial::new(nat(1), nat(1))), int(3));
        assert_eq!(projected.coefficient(&HwMonomial::one()), int(1));
    }

    #[test]
    fn projection_is_an_algebra_morphism() {
        let monomials = [mono(1, 1, 0), mono(0, 2, 1), mono(2, 0, 0), mono(1, 2, 2)];
        for x in &monomials {
            for y in &monomials {
                let lhs = pbw_monomial_product(x, y).project();
                let rhs = PbwPolynomial::from_monomial(x.clone())
                    .project()
                    .product(&PbwPolynomial::from_monomial(y.clone()).project());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn stirling_numbers_from_the_oracle() {
        // Stirling numbers of the second kind by recurrence, independent of
        // the rewrite machinery.
        fn stirling(n: usize, k: usize) -> u64 {
            if n == 0 && k == 0 {
                return 1;
            }
            if n == 0 || k == 0 {
                return 0;
            }
            k as u64 * stirling(n - 1, k) + stirling(n - 1, k - 1)
        }
        for n in 1..=5usize {
            let mut letters = Vec::new();
            for _ in 0..n {
                letters.push(Ad);
                letters.push(A);
            }
            let projected = word(&letters).normal_order().project();
            for k in 1..=n {
                let expected = int(stirling(n, k) as i64);
                assert_eq!(
                    projected.coefficient(&HwMonomial::new(nat(k as u64), nat(k as u64))),
                    expected,
                    "S({n},{k})"
                );
            }
        }
    }

    #[test]
    fn no_counit_is_compatible_with_the_hw_relation() {
        // In H the commutator a·ad - ad·a is the identity, yet any
        // multiplicative linear functional kills it: e(a)e(ad) - e(ad)e(a)
        // vanishes identically, so e(1) would have to be 0, not 1.
        let a = HwPolynomial::from_monomial(HwMonomial::new(nat(0), nat(1)));
        let ad = HwPolynomial::from_monomial(HwMonomial::new(nat(1), nat(0)));
        let commutator = &a.product(&ad) - &ad.product(&a);
        assert_eq!(commutator, HwPolynomial::one());
        proptest!(|(xn in -20i64..20, xd in 1i64..8, yn in -20i64..20, yd in 1i64..8)| {
            let x = crate::ratio(xn, xd);
            let y = crate::ratio(yn, yd);
            let functional_value = &x * &y - &y * &x;
            prop_assert_eq!(functional_value, int(0));
            prop_assert_ne!(int(0), int(1));
        });
    }

    #[test]
    fn rendering() {
        let squared = word(&[A, Ad, A, Ad]).normal_order();
        assert_eq!(squared.to_string(), "ad^2 a^2 + 3 ad a e + e^2");
        assert_eq!(squared.project().to_string(), "ad^2 a^2 + 3 ad a + 1");
        assert_eq!(word(&[A, Ad]).normal_order().to_string(), "ad a + e");
        assert_eq!(PbwPolynomial::one().to_string(), "1");
        assert_eq!(PbwPolynomial::zero().to_string(), "0");
        let mut negatives = PbwPolynomial::zero();
        negatives.add_term(int(-1), mono(1, 1, 0));
        negatives.add_term(crate::ratio(-3, 2), mono(0, 0, 1));
        assert_eq!(negatives.to_string(), "-ad a - 3/2 e");
        assert_eq!(format!("{}", word(&[A, Ad, A])), "a ad a");
        assert_eq!(Word::new(vec![(A, nat(2)), (A, nat(1))]).to_string(), "a^3");
    }

    proptest! {
        /// The rewrite engine and the closed-form product agree on random
        /// words a fair bit longer than the exhaustive sweep covers.
        #[test]
        fn oracle_equivalence_on_random_words(indices in proptest::collection::vec(0usize..3, 0..8)) {
            let generators = [Ad, A, E];
            let w = Word::from_generators(indices.into_iter().map(|i| generators[i]));
            prop_assert_eq!(w.normal_order(), w.monomial_product());
        }

        /// Associativity of the closed-form product on random monomials.
        #[test]
        fn pbw_product_is_associative(
            a in (0u64..5, 0u64..5, 0u64..3),
            b in (0u64..5, 0u64..5, 0u64..3),
            c in (0u64..5, 0u64..5, 0u64..3),
        ) {
            let x = poly(a.0, a.1, a.2);
            let y = poly(b.0, b.1, b.2);
            let z = poly(c.0, c.1, c.2);
            prop_assert_eq!(x.product(&y).product(&z), x.product(&y.product(&z)));
        }
    }
}
