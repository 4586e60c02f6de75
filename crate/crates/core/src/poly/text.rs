//! Text grammar for polynomials.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := ['+' | '-'] factor ('*' factor)*
//! factor := int ['/' int] | 'x' index ['^' int]
//! ```
//!
//! Affine polynomials use `x1..xn`; forms use `x0..xn` with `x0` the
//! homogenizing variable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Exponent, SparsePoly};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `x1` is variable index 0; `x0` is not allowed.
    Affine,
    /// `xk` is variable index k.
    Form,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    convention: Convention,
}

struct RawTerm {
    coef: Rational,
    powers: Vec<(usize, u32)>,
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty polynomial"));
        }
        let mut negate = self.sign();
        loop {
            let mut t = self.term()?;
            if negate {
                t.coef = -t.coef;
            }
            terms.push(t);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') | Some('-') => negate = self.sign(),
                Some(c) => return Err(self.error(self.pos, format!("unexpected '{c}'"))),
            }
        }
        Ok(terms)
    }

    /// Consume any run of signs; returns true if the net sign is negative.
    fn sign(&mut self) -> bool {
        let mut neg = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    neg = !neg;
                    self.pos += 1
                }
                _ => return neg,
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut t = RawTerm {
            coef: Rational::one(),
            powers: Vec::new(),
        };
        loop {
            self.skip_ws();
            self.factor(&mut t)?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self, t: &mut RawTerm) -> Result<(), ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                self.skip_ws();
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d: BigInt = self
                        .digits()
                        .ok_or_else(|| self.error(at, "expected denominator"))?
                        .parse()
                        .unwrap();
                    if d.is_zero() {
                        return Err(self.error(at, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                t.coef *= Rational::new(num, den);
                Ok(())
            }
            Some('x') | Some('X') => {
                self.pos += 1;
                let at = self.pos;
                let label: usize = self
                    .digits()
                    .ok_or_else(|| self.error(at, "expected variable index after 'x'"))?
                    .parse()
                    .map_err(|_| self.error(at, "variable index too large"))?;
                let index = match self.convention {
                    Convention::Form => label,
                    Convention::Affine => {
                        if label == 0 {
                            return Err(self.error(
                                start,
                                "x0 is reserved for the homogenizing variable in affine input",
                            ));
                        }
                        label - 1
                    }
                };
                self.skip_ws();
                let exp = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    self.digits()
                        .ok_or_else(|| self.error(at, "expected exponent"))?
                        .parse()
                        .map_err(|_| self.error(at, "exponent too large"))?
                } else {
                    1
                };
                t.powers.push((index, exp));
                Ok(())
            }
            Some(c) => Err(self.error(start, format!("unexpected '{c}'"))),
            None => Err(self.error(start, "unexpected end of input")),
        }
    }
}

fn build(terms: Vec<RawTerm>, nvars: Option<usize>) -> Result<SparsePoly, String> {
    let max_index = terms
        .iter()
        .flat_map(|t| t.powers.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) if n < max_index => {
            return Err(format!("variable index exceeds declared count {n}"));
        }
        Some(n) => n,
        None => max_index,
    };
    let pairs = terms.into_iter().map(|t| {
        let mut e = vec![0u32; n];
        for (i, k) in t.powers {
            e[i] += k;
        }
        (Exponent(e), t.coef)
    });
    Ok(SparsePoly::from_terms(n, pairs).expect("exponents sized to n"))
}

/// Parse with an explicit convention; `nvars` pins the variable count.
pub fn parse(
    src: &str,
    convention: Convention,
    nvars: Option<usize>,
) -> Result<SparsePoly, ParseError> {
    let mut p = Parser {
        src,
        pos: 0,
        convention,
    };
    let terms = p.poly()?;
    build(terms, nvars).map_err(|m| p.error(0, m))
}

pub fn parse_affine(src: &str) -> Result<SparsePoly, ParseError> {
    parse(src, Convention::Affine, None)
}

pub fn parse_form(src: &str) -> Result<SparsePoly, ParseError> {
    parse(src, Convention::Form, None)
}

/// Form convention when `x0` occurs anywhere, affine otherwise.
pub fn parse_auto(src: &str) -> Result<SparsePoly, ParseError> {
    let convention = if mentions_x0(src) {
        Convention::Form
    } else {
        Convention::Affine
    };
    parse(src, convention, None)
}

/// The returned convention tells how variable labels map to indices.
pub fn parse_auto_with_convention(src: &str) -> Result<(SparsePoly, Convention), ParseError> {
    let convention = if mentions_x0(src) {
        Convention::Form
    } else {
        Convention::Affine
    };
    parse(src, convention, None).map(|p| (p, convention))
}

fn mentions_x0(src: &str) -> bool {
    let b = src.as_bytes();
    (0..b.len()).any(|i| {
        (b[i] == b'x' || b[i] == b'X')
            && b.get(i + 1) == Some(&b'0')
            && !matches!(b.get(i + 2), Some(c) if c.is_ascii_digit())
    })
}

struct Rendered<'a>(&'a SparsePoly, Convention);

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offset = match self.1 {
            Convention::Affine => 1,
            Convention::Form => 0,
        };
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.0.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_zero() {
                parts.push(rational::to_canonical(&abs));
            }
            for (i, &p) in e.entries().iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(format!("x{}", i + offset)),
                    _ => parts.push(format!("x{}^{}", i + offset, p)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

pub(super) fn render(p: &SparsePoly, convention: Convention) -> String {
    Rendered(p, convention).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    #[test]
    fn parses_motzkin() {
        let g = parse_affine("1 + x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2").unwrap();
        assert_eq!(g.nvars(), 2);
        assert_eq!(g.len(), 4);
        assert_eq!(
            g.coefficient(&Exponent(vec![2, 2])),
            Some(&rational::int(-3))
        );
        assert_eq!(g.to_affine_string(), "1 - 3*x1^2*x2^2 + x1^4*x2^2 + x1^2*x2^4");
    }

    #[test]
    fn fractions_and_signs() {
        let p = parse_affine("-1/2*x1 + 3/4 - - x2*2").unwrap();
        assert_eq!(p.coefficient(&Exponent(vec![1, 0])), Some(&frac(-1, 2)));
        assert_eq!(p.coefficient(&Exponent(vec![0, 0])), Some(&frac(3, 4)));
        assert_eq!(p.coefficient(&Exponent(vec![0, 1])), Some(&frac(2, 1)));
    }

    #[test]
    fn form_convention() {
        let f = parse_auto("x0^6 + x1^4*x2^2 + x1^2*x2^4 - 3*x0^2*x1^2*x2^2").unwrap();
        assert_eq!(f.nvars(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(
            f.to_form_string(),
            "x0^6 - 3*x0^2*x1^2*x2^2 + x1^4*x2^2 + x1^2*x2^4"
        );
        // x10 is not x0
        assert_eq!(parse_auto("x10^2").unwrap().nvars(), 10);
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_affine("1 + x1^").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_affine("1 +\n  2*y").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(parse_affine("x0 + 1").is_err());
        assert!(parse_affine("1/0").is_err());
        assert!(parse_affine("").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        (1usize..4).prop_flat_map(|n| {
            prop::collection::vec(
                (
                    prop::collection::vec(0u32..5, n),
                    -20i64..20,
                    1i64..7,
                ),
                0..6,
            )
            .prop_map(move |ts| {
                SparsePoly::from_terms(
                    n,
                    ts.into_iter().map(|(e, a, b)| (Exponent(e), frac(a, b))),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            let s = p.to_affine_string();
            let q = parse(&s, Convention::Affine, Some(p.nvars())).unwrap();
            prop_assert_eq!(&q, &p);
            let s = p.to_form_string();
            let q = parse(&s, Convention::Form, Some(p.nvars())).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
