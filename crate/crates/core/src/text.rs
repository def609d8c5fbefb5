//! Polynomial text grammar shared by the CLI and the JSON artifacts.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/'|<implicit>) factor)*
//! factor := atom ['^' uint]
//! atom   := number | var | '(' expr ')'
//! number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! var    := 'x' | 'X' | 'z' | 'w' | 'T'
//! ```
//!
//! Decimal literals become exact rationals by place value, so `0.1` is
//! `1/10`. Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::algebra::RatPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

const VARIABLES: &[u8] = b"xXzwT";

pub fn parse_polynomial(text: &str) -> Result<RatPoly, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<RatPoly, SyntaxError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatPoly, SyntaxError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.factor()?;
                    match d.degree() {
                        Some(0) => acc = acc.scale(&d.coeff(0).recip()),
                        _ => {
                            return Err(SyntaxError {
                                offset: at,
                                message: "division by a non-constant or zero".into(),
                            })
                        }
                    }
                }
                Some(c) if VARIABLES.contains(&c) || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatPoly, SyntaxError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u64 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly, SyntaxError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if VARIABLES.contains(&c) => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(RatPoly::constant(self.number()?)),
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn uint(&mut self) -> Result<BigInt, SyntaxError> {
        let at = self.pos;
        let ds = self.digits();
        if ds.is_empty() {
            self.pos = at;
            return Err(self.error("expected a nonnegative integer"));
        }
        Ok(parse_digits(ds))
    }

    fn number(&mut self) -> Result<BigRational, SyntaxError> {
        let start = self.pos;
        let int_part = parse_digits(self.digits());
        let mut value = BigRational::from_integer(int_part);
        let mut had_digits = self.pos > start;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac = self.digits().to_vec();
            had_digits |= !frac.is_empty();
            if !frac.is_empty() {
                let scale = BigInt::from(10u32).pow(frac.len() as u32);
                value += BigRational::new(parse_digits(&frac), scale);
            }
        }
        if !had_digits {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.pos += 1;
            let neg = match self.peek() {
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
            let e: u32 = self
                .uint()?
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            let scale = BigRational::from_integer(BigInt::from(10u32).pow(e));
            value = if neg { value / scale } else { value * scale };
        }
        Ok(value)
    }
}

fn parse_digits(ds: &[u8]) -> BigInt {
    if ds.is_empty() {
        return BigInt::zero();
    }
    BigInt::parse_bytes(ds, 10).unwrap_or_else(BigInt::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn documented_examples() {
        let p = parse_polynomial("x^2 - 1/3*x + 5").unwrap();
        assert_eq!(p.coeffs(), &[q(5, 1), q(-1, 3), q(1, 1)]);
        assert_eq!(parse_polynomial("x").unwrap().coeffs(), &[q(0, 1), q(1, 1)]);
        let err = parse_polynomial("x^^2").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_polynomial("x - 0.333333").unwrap();
        assert_eq!(p.coeff(0), q(-333333, 1000000));
        let p = parse_polynomial("2.5e-1*x").unwrap();
        assert_eq!(p.coeff(1), q(1, 4));
    }

    #[test]
    fn products_and_powers() {
        let p = parse_polynomial("(x - 1/2)^2").unwrap();
        assert_eq!(p.coeffs(), &[q(1, 4), q(-1, 1), q(1, 1)]);
        let p = parse_polynomial("2x(x+1)").unwrap();
        assert_eq!(p.coeffs(), &[q(0, 1), q(2, 1), q(2, 1)]);
        let p = parse_polynomial("-X^3 + x/4").unwrap();
        assert_eq!(p.coeffs(), &[q(0, 1), q(1, 4), q(0, 1), q(-1, 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x +").is_err());
        assert_eq!(parse_polynomial("x / x").unwrap_err().offset, 4);
        assert_eq!(parse_polynomial("(x").unwrap_err().offset, 2);
        assert_eq!(parse_polynomial("x y").unwrap_err().offset, 2);
    }

    #[test]
    fn display_reparses() {
        for s in ["x^5 - 7/3*x^2 + 1", "-x", "0", "12", "x^2 + 1/9*x - 4"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }
}
