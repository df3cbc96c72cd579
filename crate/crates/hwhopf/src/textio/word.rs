//! The operator-word expression grammar.
//!
//! Tokens `a`, `ad` (alias `a+`), `e`; `^n` postfix powers; juxtaposition or
//! `*` for products; `+`/`-` for sums; rational coefficients `p` or `p/q`;
//! parentheses. `a+` only counts as the creation operator when the `+` sits
//! directly against the `a`; with whitespace it is addition.
//!
//! The parse result is a flattened linear combination of free-monoid words
//! with rational coefficients; normal ordering is up to the caller.

use hwhopf_core::envelope::{Generator, Word};
use hwhopf_core::{BigUint, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use super::ParseError;

/// Everything a factor can expand to before normal ordering: a collected
/// linear combination of words.
type LinComb = BTreeMap<Word, Rational>;

/// Guard against runaway expansion of expressions like `(a + ad)^40`.
const MAX_EXPANSION_TERMS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum TokenKind {
    Number(BigUint),
    Gen(Generator),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Open,
    Close,
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (token_line, token_column) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let kind = match c {
            '+' => {
                advance(&mut chars);
                TokenKind::Plus
            }
            '-' => {
                advance(&mut chars);
                TokenKind::Minus
            }
            '*' => {
                advance(&mut chars);
                TokenKind::Star
            }
            '^' => {
                advance(&mut chars);
                TokenKind::Caret
            }
            '/' => {
                advance(&mut chars);
                TokenKind::Slash
            }
            '(' => {
                advance(&mut chars);
                TokenKind::Open
            }
            ')' => {
                advance(&mut chars);
                TokenKind::Close
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<BigUint>().expect("digits parse");
                TokenKind::Number(value)
            }
            c if c.is_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() {
                        name.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "a" => {
                        // `a+` with the plus attached is the creation operator.
                        if chars.peek() == Some(&'+') {
                            advance(&mut chars);
                            TokenKind::Gen(Generator::Creation)
                        } else {
                            TokenKind::Gen(Generator::Annihilation)
                        }
                    }
                    "ad" => TokenKind::Gen(Generator::Creation),
                    "e" => TokenKind::Gen(Generator::Central),
                    other => {
                        return Err(ParseError::new(
                            token_line,
                            token_column,
                            format!("unknown operator token `{other}` (expected a, ad, a+ or e)"),
                        ));
                    }
                }
            }
            other => {
                return Err(ParseError::new(
                    token_line,
                    token_column,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        tokens.push(Token { kind, line: token_line, column: token_column });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end_line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn position(&self) -> (usize, usize) {
        self.tokens
            .get(self.at)
            .map(|t| (t.line, t.column))
            .unwrap_or((self.end_line, self.end_column))
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.at).cloned();
        if token.is_some() {
            self.at += 1;
        }
        token
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.position();
        ParseError::new(line, column, message)
    }

    fn expr(&mut self) -> Result<LinComb, ParseError> {
        let mut negate = false;
        if let Some(TokenKind::Minus) = self.peek() {
            self.bump();
            negate = true;
        } else if let Some(TokenKind::Plus) = self.peek() {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = scale(acc, &-Rational::one());
        }
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = add(acc, rhs, &Rational::one());
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = add(acc, rhs, &-Rational::one());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LinComb, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(TokenKind::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.multiply(acc, rhs)?;
                }
                Some(TokenKind::Number(_)) | Some(TokenKind::Gen(_)) | Some(TokenKind::Open) => {
                    let rhs = self.factor()?;
                    acc = self.multiply(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LinComb, ParseError> {
        let base = self.primary()?;
        if let Some(TokenKind::Caret) = self.peek() {
            self.bump();
            let exponent = match self.bump() {
                Some(Token { kind: TokenKind::Number(n), .. }) => n,
                _ => return Err(self.error("expected a natural number after `^`")),
            };
            return self.power(base, &exponent);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<LinComb, ParseError> {
        match self.bump() {
            Some(Token { kind: TokenKind::Number(numer), .. }) => {
                let mut value = Rational::from_integer(numer.into());
                if let Some(TokenKind::Slash) = self.peek() {
                    self.bump();
                    let denom = match self.bump() {
                        Some(Token { kind: TokenKind::Number(d), line, column }) => {
                            if d.is_zero() {
                                return Err(ParseError::new(line, column, "zero denominator"));
                            }
                            d
                        }
                        _ => return Err(self.error("expected a denominator after `/`")),
                    };
                    value /= Rational::from_integer(denom.into());
                }
                Ok(constant(value))
            }
            Some(Token { kind: TokenKind::Gen(generator), .. }) => {
                Ok(single(Word::from_generators([generator])))
            }
            Some(Token { kind: TokenKind::Open, line, column }) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token { kind: TokenKind::Close, .. }) => Ok(inner),
                    _ => Err(ParseError::new(line, column, "unclosed parenthesis")),
                }
            }
            Some(token) => Err(ParseError::new(
                token.line,
                token.column,
                "expected an operator, a number or `(`",
            )),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn multiply(&mut self, lhs: LinComb, rhs: LinComb) -> Result<LinComb, ParseError> {
        if lhs.len().saturating_mul(rhs.len()) > MAX_EXPANSION_TERMS {
            return Err(self.error("expression expands beyond the supported size"));
        }
        let mut out = LinComb::new();
        for (left_word, left_coefficient) in &lhs {
            for (right_word, right_coefficient) in &rhs {
                let word = left_word.concat(right_word);
                let coefficient = left_coefficient * right_coefficient;
                insert(&mut out, word, coefficient);
            }
        }
        Ok(out)
    }

    fn power(&mut self, base: LinComb, exponent: &BigUint) -> Result<LinComb, ParseError> {
        if exponent.is_zero() {
            return Ok(constant(Rational::one()));
        }
        // A single run with unit coefficient powers exactly, whatever the
        // exponent's size.
        if base.len() == 1 {
            let (word, coefficient) = base.iter().next().expect("one term");
            if coefficient.is_one() && word.letters().len() == 1 {
                let (generator, run) = &word.letters()[0];
                return Ok(single(Word::new(vec![(*generator, run * exponent)])));
            }
        }
        let Ok(times) = usize::try_from(exponent) else {
            return Err(self.error("exponent too large to expand"));
        };
        let mut acc = constant(Rational::one());
        for _ in 0..times {
            acc = self.multiply(acc, base.clone())?;
        }
        Ok(acc)
    }
}

fn constant(value: Rational) -> LinComb {
    let mut out = LinComb::new();
    insert(&mut out, Word::identity(), value);
    out
}

fn single(word: Word) -> LinComb {
    let mut out = LinComb::new();
    insert(&mut out, word, Rational::one());
    out
}

fn insert(map: &mut LinComb, word: Word, coefficient: Rational) {
    if coefficient.is_zero() {
        return;
    }
    match map.entry(word) {
        std::collections::btree_map::Entry::Vacant(entry) => {
            entry.insert(coefficient);
        }
        std::collections::btree_map::Entry::Occupied(mut entry) => {
            *entry.get_mut() += coefficient;
            if entry.get().is_zero() {
                entry.remove();
            }
        }
    }
}

fn scale(map: LinComb, factor: &Rational) -> LinComb {
    map.into_iter().map(|(word, coefficient)| (word, coefficient * factor)).collect()
}

fn add(mut lhs: LinComb, rhs: LinComb, factor: &Rational) -> LinComb {
    for (word, coefficient) in rhs {
        insert(&mut lhs, word, coefficient * factor);
    }
    lhs
}

/// Parses an expression into a collected list of `(coefficient, word)` pairs,
/// ordered by word. Empty input denotes the identity.
pub fn parse_word(text: &str) -> Result<Vec<(Rational, Word)>, ParseError> {
    let tokens = lex(text)?;
    let end_line = text.lines().count().max(1);
    let end_column = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    if tokens.is_empty() {
        return Ok(vec![(Rational::one(), Word::identity())]);
    }
    let mut parser = Parser { tokens, at: 0, end_line, end_column };
    let combination = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(combination.into_iter().map(|(word, coefficient)| (coefficient, word)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwhopf_core::{int, ratio};
    use Generator::{Annihilation as A, Central as E, Creation as Ad};

    fn w(generators: &[Generator]) -> Word {
        Word::from_generators(generators.iter().copied())
    }

    #[test]
    fn juxtaposition_is_a_product() {
        let parsed = parse_word("a ad").unwrap();
        assert_eq!(parsed, vec![(int(1), w(&[A, Ad]))]);
    }

    #[test]
    fn group_powers_unroll() {
        let parsed = parse_word("(a ad)^2").unwrap();
        assert_eq!(parsed, vec![(int(1), w(&[A, Ad, A, Ad]))]);
    }

    #[test]
    fn coefficients_and_signs() {
        let parsed = parse_word("2 ad^2 a - 1/2 e").unwrap();
        assert_eq!(
            parsed,
            vec![
                (int(2), w(&[Ad, Ad, A])),
                (ratio(-1, 2), w(&[E])),
            ]
        );
    }

    #[test]
    fn empty_input_is_the_identity() {
        assert_eq!(parse_word("").unwrap(), vec![(int(1), Word::identity())]);
        assert_eq!(parse_word("  \n ").unwrap(), vec![(int(1), Word::identity())]);
    }

    #[test]
    fn aplus_alias_binds_tightly() {
        // `a+` attached is the creation operator, detached it is addition.
        assert_eq!(parse_word("a+").unwrap(), vec![(int(1), w(&[Ad]))]);
        assert_eq!(parse_word("a + e").unwrap(), vec![(int(1), w(&[A])), (int(1), w(&[E]))]);
        assert_eq!(parse_word("a+ e").unwrap(), vec![(int(1), w(&[Ad, E]))]);
    }

    #[test]
    fn sums_collect_like_words() {
        let parsed = parse_word("a + a").unwrap();
        assert_eq!(parsed, vec![(int(2), w(&[A]))]);
        assert!(parse_word("a - a").unwrap().is_empty());
    }

    #[test]
    fn distributes_products_over_sums() {
        let parsed = parse_word("(a + e) * a").unwrap();
        assert_eq!(parsed, vec![(int(1), w(&[A, A])), (int(1), w(&[E, A]))]);
    }

    #[test]
    fn single_run_powers_stay_compact() {
        let parsed = parse_word("ad^100000000000000000000").unwrap();
        assert_eq!(parsed.len(), 1);
        let (coefficient, word) = &parsed[0];
        assert_eq!(coefficient, &int(1));
        assert_eq!(word.letters().len(), 1);
        assert_eq!(word.letters()[0].1, "100000000000000000000".parse::<BigUint>().unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_word("a $ e").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (1, 3));
        let err = parse_word("(a ad").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (1, 1));
        let err = parse_word("1/0").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (1, 3));
        let err = parse_word("b").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (1, 1));
        let err = parse_word("a )").unwrap_err();
        assert_eq!((err.diagnostic.line, err.diagnostic.column), (1, 3));
    }

    #[test]
    fn rational_powers_evaluate() {
        let parsed = parse_word("(1/2)^3 e").unwrap();
        assert_eq!(parsed, vec![(ratio(1, 8), w(&[E]))]);
    }
}
