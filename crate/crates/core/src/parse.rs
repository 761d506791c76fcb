//! Recursive-descent parsers for polynomials, vector fields and bracket words.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! sum    := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := uint ('/' uint)? | '(' zsum ')' | var ('^' uint)? | 'd' var
//! ```
//!
//! `zsum` is a sum in the symbol `z` with rational coefficients and denotes an
//! element of `Q(zeta_d)`, where `d` comes from the field context. A direction
//! token `dx`, `dy`, `dz` is only accepted by the vector-field parser and must
//! be the last factor of its term.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::generate::BracketWord;
use crate::poly::{Monomial, Poly, VARS};
use crate::scalar::{Field, Scalar};
use crate::vecfield::VecField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

pub fn parse_poly(text: &str, arity: usize, field: Field) -> Result<Poly> {
    let mut p = Parser::new(text, arity, field, false);
    let terms = p.sum()?;
    p.finish()?;
    let mut out = Poly::zero(arity, field);
    for t in terms {
        out.add_term(t.mono, t.coeff);
    }
    Ok(out)
}

pub fn parse_vecfield(text: &str, arity: usize, field: Field) -> Result<VecField> {
    let mut p = Parser::new(text, arity, field, true);
    let terms = p.sum()?;
    p.finish()?;
    let mut coeffs = vec![Poly::zero(arity, field); arity];
    for t in terms {
        match t.dir {
            Some(i) => coeffs[i].add_term(t.mono, t.coeff),
            None if t.coeff.is_zero() => {}
            None => {
                return Err(ParseError {
                    position: t.end,
                    expected: "direction dx, dy or dz".into(),
                    found: p.lexeme_at(t.end),
                }
                .into())
            }
        }
    }
    VecField::new(coeffs)
}

/// Reads the JSON form `{"leaf":..} | {"bracket":[..]} | {"scale":{"s":..,"w":..}}`.
pub fn parse_word(json: &str) -> Result<BracketWord> {
    serde_json::from_str(json).map_err(|e| {
        let position = byte_offset(json, e.line(), e.column());
        ParseError {
            position,
            expected: "bracket word".into(),
            found: e.to_string(),
        }
        .into()
    })
}

pub fn print_word(w: &BracketWord) -> String {
    serde_json::to_string(w).expect("bracket words always serialize")
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

struct Term {
    coeff: Scalar,
    mono: Monomial,
    dir: Option<usize>,
    end: usize,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
    field: Field,
    vector: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, arity: usize, field: Field, vector: bool) -> Parser<'a> {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            arity,
            field,
            vector,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn lexeme_at(&self, pos: usize) -> String {
        match self.src.get(pos..).and_then(|s| s.chars().next()) {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn error(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        ParseError {
            position: self.pos,
            expected: expected.into(),
            found: self.lexeme_at(self.pos),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return Err(self.error("`+`, `-` or end of input"));
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut out = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            out.push(t);
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut coeff = Scalar::one();
        let mut exps = vec![0u32; self.arity];
        let mut dir = None;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    coeff = coeff
                        .try_mul(&Scalar::Rational(r))
                        .expect("rational factor");
                }
                Some(b'(') => {
                    let z = self.cyclotomic()?;
                    coeff = coeff
                        .try_mul(&z)
                        .map_err(|_| self.error("compatible coefficient"))?;
                }
                Some(b'd') if self.vector => {
                    let start = self.pos;
                    self.pos += 1;
                    let i = self.var_index().ok_or_else(|| ParseError {
                        position: start,
                        expected: "direction dx, dy or dz".into(),
                        found: self.lexeme_at(start),
                    })?;
                    dir = Some(i);
                }
                Some(_) => {
                    let i = self.var_index().ok_or_else(|| {
                        let what = if self.vector {
                            "number, `(`, variable or direction"
                        } else {
                            "number, `(` or variable"
                        };
                        self.error(what)
                    })?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.uint()?
                    } else {
                        1
                    };
                    exps[i] = exps[i].saturating_add(e);
                }
                None => {
                    let what = if self.vector {
                        "number, `(`, variable or direction"
                    } else {
                        "number, `(` or variable"
                    };
                    return Err(self.error(what));
                }
            }
            if self.peek() == Some(b'*') {
                if dir.is_some() {
                    return Err(self.error("end of term after direction"));
                }
                self.pos += 1;
            } else {
                break;
            }
        }
        let end = self.pos;
        if self.vector && dir.is_none() && !coeff.is_zero() {
            return Err(ParseError {
                position: end,
                expected: "`*` followed by a direction dx, dy or dz".into(),
                found: self.lexeme_at(end),
            });
        }
        Ok(Term {
            coeff,
            mono: Monomial::new(exps),
            dir,
            end,
        })
    }

    /// Consumes `x`, `y` or `z` and checks it against the arity.
    fn var_index(&mut self) -> Option<usize> {
        let c = *self.bytes.get(self.pos)?;
        let i = VARS.iter().position(|&v| v as u8 == c)?;
        if i >= self.arity {
            return None;
        }
        self.pos += 1;
        Some(i)
    }

    fn uint_digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("unsigned integer"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let digits = self.uint_digits()?;
        digits.parse().map_err(|_| ParseError {
            position: start,
            expected: "exponent below 2^32".into(),
            found: digits.to_string(),
        })
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num: BigInt = self.uint_digits()?.parse().expect("digits");
        if self.peek() != Some(b'/') {
            return Ok(BigRational::from_integer(num));
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let den: BigInt = self.uint_digits()?.parse().expect("digits");
        if den.is_zero() {
            return Err(ParseError {
                position: at,
                expected: "nonzero denominator".into(),
                found: "0".into(),
            });
        }
        Ok(BigRational::new(num, den))
    }

    /// `( zsum )`: a residue class in `Q(zeta_d)`.
    fn cyclotomic(&mut self) -> Result<Scalar, ParseError> {
        let open = self.pos;
        let order = match self.field {
            Field::Cyclotomic(d) => d,
            Field::Rational => {
                return Err(ParseError {
                    position: open,
                    expected: "rational coefficient (no root of unity in this field)".into(),
                    found: "`(`".into(),
                })
            }
        };
        self.pos += 1;
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let (c, k) = self.zterm()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += if negative { -c } else { c };
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("`+`, `-` or `)`")),
            }
            self.pos += 1;
        }
        Ok(Scalar::from_residue(order, coeffs).expect("order validated by field"))
    }

    fn zterm(&mut self) -> Result<(BigRational, usize), ParseError> {
        let mut c = BigRational::one();
        let mut k = 0usize;
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => c *= self.rational()?,
                Some(b'z') => {
                    self.pos += 1;
                    k += if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.uint()? as usize
                    } else {
                        1
                    };
                }
                _ => return Err(self.error("number or `z`")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((c, k));
            }
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(n) => write!(f, "{n}"),
            BracketWord::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            BracketWord::Scale { s, w } => write!(f, "({s})*{w}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn perr(r: Result<impl fmt::Debug>) -> ParseError {
        match r {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn vector_field_examples() {
        let v = parse_vecfield("y^2*dx - 2*x*y*dy", 2, Field::Rational).unwrap();
        assert_eq!(v.to_string(), "y^2*dx - 2*x*y*dy");
        let d10 = parse_vecfield("x^2*dx - 2*x*y*dy", 2, Field::Rational).unwrap();
        assert_eq!(d10, crate::vecfield::gen_dab(1, 0));
    }

    #[test]
    fn cyclotomic_coefficient() {
        let f = Field::Cyclotomic(5);
        let v = parse_vecfield("(1 - z^2)*x*dx", 2, f).unwrap();
        assert_eq!(v.field(), f);
        assert_eq!(v.to_string(), "(1 - z^2)*x*dx");
        let again = parse_vecfield(&v.to_string(), 2, f).unwrap();
        assert_eq!(again, v);
    }

    #[test]
    fn cyclotomic_reduces() {
        let f = Field::Cyclotomic(4);
        let p = parse_poly("(z^2)*x", 1, f).unwrap();
        assert_eq!(p.to_string(), "-x");
    }

    #[test]
    fn cyclotomic_in_rational_context_rejected() {
        let e = perr(parse_poly("(1 + z)*x", 1, Field::Rational));
        assert_eq!(e.position, 0);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_poly("  x ^ 2 *y+3 / 4 ", 2, Field::Rational).unwrap();
        assert_eq!(a.to_string(), "x^2*y + 3/4");
    }

    #[test]
    fn juxtaposition_rejected() {
        let e = perr(parse_poly("2x", 1, Field::Rational));
        assert_eq!(e.position, 1);
        let e = perr(parse_poly("x y", 2, Field::Rational));
        assert_eq!(e.position, 2);
    }

    #[test]
    fn error_positions() {
        assert_eq!(perr(parse_poly("x + ", 1, Field::Rational)).position, 4);
        assert_eq!(perr(parse_poly("x^", 1, Field::Rational)).position, 2);
        assert_eq!(perr(parse_poly("x + y", 1, Field::Rational)).position, 4);
        assert_eq!(perr(parse_poly("1/0", 1, Field::Rational)).position, 2);
        assert_eq!(
            perr(parse_vecfield("x*dx + y", 2, Field::Rational)).position,
            8
        );
        assert_eq!(perr(parse_vecfield("dx*x", 2, Field::Rational)).position, 2);
        assert_eq!(perr(parse_vecfield("x*dw", 2, Field::Rational)).position, 2);
    }

    #[test]
    fn zero_forms() {
        assert!(parse_poly("0", 2, Field::Rational).unwrap().is_zero());
        assert!(parse_vecfield("0", 2, Field::Rational).unwrap().is_zero());
        assert!(parse_poly("x - x", 1, Field::Rational).unwrap().is_zero());
    }

    #[test]
    fn word_json() {
        let w = parse_word(r#"{"bracket":[{"leaf":"p"},{"scale":{"s":"-1/2","w":{"leaf":"q"}}}]}"#)
            .unwrap();
        assert_eq!(w.to_string(), "[p, (-1/2)*q]");
        assert_eq!(parse_word(&print_word(&w)).unwrap(), w);
        let e = perr(parse_word("{\"leaf\": 3}"));
        assert!(e.position <= 11);
    }
}
