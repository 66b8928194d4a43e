//! Expression and direction parsing.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ('+' | '-') factor | base ('^' uint)?
//! base   := var | rational | 'O(' uint ')' | '(' expr ')'
//! ```
//!
//! Variables are `X`, `Y`, `Z`, optionally followed by a level suffix such
//! as `X1`. `O(p)` marks a truncation at total degree `p`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{Rational, Series};

// Monomials printed from any parsed series must parse again.
const MAX_EXPONENT: u32 = MAX_DEGREE;
const MAX_DEGREE: u32 = 512;
const MAX_NESTING: usize = 256;
/// Rough bound on coefficient multiplications for one product.
const MAX_WORK: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

fn degree(s: &Series) -> u64 {
    s.max_degree().unwrap_or(0) as u64
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn uint(&mut self, what: &str) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        match self.digits() {
            Some(d) => d.parse::<u32>().map_err(|_| ParseError { offset: start, message: format!("{what} too large") }),
            None => self.err(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> PResult<Series> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add_series(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub_series(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Series> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            self.check_degree(degree(&acc) + degree(&rhs))?;
            self.check_work(acc.num_terms() as u64 * rhs.num_terms() as u64)?;
            acc = acc.mul_series(&rhs);
        }
        Ok(acc)
    }

    fn check_degree(&self, d: u64) -> PResult<()> {
        if d > MAX_DEGREE as u64 {
            return self.err(format!("total degree exceeds {MAX_DEGREE}"));
        }
        Ok(())
    }

    fn check_work(&self, work: u64) -> PResult<()> {
        if work > MAX_WORK {
            return self.err("expression too large");
        }
        Ok(())
    }

    fn factor(&mut self) -> PResult<Series> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.err("expression nested too deeply");
        }
        let out = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.factor().map(|f| f.neg_series())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.base()?;
                if self.eat(b'^') {
                    let e = self.exponent()?;
                    let d = degree(&base) * e as u64;
                    self.check_degree(d)?;
                    let dense = (d + 1) * (d + 2) / 2;
                    let sparse = (base.num_terms() as u64).saturating_pow(e);
                    self.check_work(dense.min(sparse).saturating_mul(base.num_terms() as u64))?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        };
        self.depth -= 1;
        out
    }

    fn exponent(&mut self) -> PResult<u32> {
        match self.peek() {
            Some(b'(') | Some(b'-') | Some(b'.') => return self.err("integer exponent required"),
            _ => {}
        }
        let e = self.uint("exponent")?;
        if matches!(self.src.get(self.pos), Some(b'.') | Some(b'/')) {
            return self.err("integer exponent required");
        }
        if e > MAX_EXPONENT {
            return self.err(format!("exponent exceeds {MAX_EXPONENT}"));
        }
        Ok(e)
    }

    fn base(&mut self) -> PResult<Series> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c @ (b'X' | b'Y' | b'Z')) => {
                self.pos += 1;
                // level suffix
                self.digits();
                Ok(Series::var((c - b'X') as usize))
            }
            Some(b'O') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return self.err("expected '(' after O");
                }
                let p = self.uint("truncation degree")?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(Series::zero().truncate(p))
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn rational(&mut self) -> PResult<Series> {
        let num: BigInt = self.digits().unwrap().parse().unwrap();
        let mut value = Rational::from_integer(num);
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let start = self.pos;
            let Some(d) = self.digits() else {
                return self.err("expected denominator");
            };
            let den: BigInt = d.parse().unwrap();
            if den.is_zero() {
                return Err(ParseError { offset: start, message: "zero denominator".into() });
            }
            value /= Rational::from_integer(den);
        }
        if self.src.get(self.pos) == Some(&b'.') {
            return self.err("decimal literals are not supported");
        }
        Ok(Series::constant(value))
    }
}

/// Parses a polynomial expression into an exact series (or a truncated one
/// when an `O(p)` term is present).
pub fn parse_expression(text: &str) -> Result<Series, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let s = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(s)
}

/// Parses `a,b,c` with each entry an integer or `p/q`.
pub fn parse_direction(text: &str) -> Result<[Rational; 3], ParseError> {
    let mut out = Vec::with_capacity(3);
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let lead = part.len() - part.trim_start().len();
        let (neg, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, trimmed),
        };
        let mut p = Parser { src: body.as_bytes(), pos: 0, depth: 0 };
        let at = offset + lead + usize::from(neg);
        let value = match p.peek() {
            Some(c) if c.is_ascii_digit() => p.rational().map_err(|e| ParseError { offset: at + e.offset, ..e })?,
            _ => return Err(ParseError { offset: at, message: "expected a rational coordinate".into() }),
        };
        if p.peek().is_some() {
            return Err(ParseError { offset: at + p.pos, message: "unexpected trailing input".into() });
        }
        let c = value.constant_term();
        out.push(if neg { -c } else { c });
        offset += part.len() + 1;
    }
    let n = out.len();
    out.try_into()
        .map_err(|_| ParseError { offset: text.len(), message: format!("expected 3 coordinates, found {n}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{ratio, Precision};

    #[test]
    fn flagship_roundtrip() {
        let s = parse_expression("Z^2 - (Y^2 - X^3)^2").unwrap();
        assert_eq!(s.to_string(), "Z^2 - Y^4 + 2*X^3*Y^2 - X^6");
        assert_eq!(parse_expression(&s.to_string()).unwrap(), s);
        let t = parse_expression("Z^2 + 2*X*Z + X^2 - Y^3").unwrap();
        assert_eq!(t.num_terms(), 4);
    }

    #[test]
    fn rejects_bad_exponent() {
        let e = parse_expression("Z^2 - X^(1/2)").unwrap_err();
        assert_eq!(e.message, "integer exponent required");
        assert_eq!(e.offset, 8);
        assert!(parse_expression("X^-1").is_err());
        assert!(parse_expression("X^1000").is_err());
        assert!(parse_expression("2^4000000000").is_err());
    }

    #[test]
    fn expanded_powers_reparse() {
        let s = parse_expression("(X^3 - Y^21)^4").unwrap();
        assert_eq!(parse_expression(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn syntax_errors_have_offsets() {
        assert_eq!(parse_expression("X + ").unwrap_err().offset, 4);
        assert_eq!(parse_expression("2X").unwrap_err().message, "unexpected trailing input");
        assert!(parse_expression("(X").is_err());
        assert!(parse_expression("").is_err());
        assert!(parse_expression("1/0").is_err());
    }

    #[test]
    fn extras() {
        let s = parse_expression("-1/2*X1 + Y1^2 + O(5)").unwrap();
        assert_eq!(s.precision(), Precision::Degree(5));
        assert_eq!(s.to_string(), "-1/2*X + Y^2 + O(5)");
    }

    #[test]
    fn directions() {
        assert_eq!(parse_direction("1,1/2,0").unwrap(), [ratio(1, 1), ratio(1, 2), ratio(0, 1)]);
        assert_eq!(parse_direction(" -3 , 0,2").unwrap()[0], ratio(-3, 1));
        assert!(parse_direction("1,0").is_err());
        assert!(parse_direction("1,a,0").is_err());
    }
}
