//! Small infix reader for polynomials, used by fixtures and the CLI.
//!
//! Grammar: sums and differences of products, `^` with a non-negative integer
//! exponent, parentheses, integer or decimal literals, and division by
//! nonzero constants only.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poly, Rational, Symbol};
use crate::error::ParseError;

impl FromStr for Poly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Parses a decimal or fraction literal exactly, e.g. `0.1`, `-3`, `2/3`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let p: Poly = s.parse()?;
    p.as_constant().ok_or_else(|| ParseError {
        input: s.to_string(),
        position: 0,
        message: "expected a numeric constant".into(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            input: String::from_utf8_lossy(self.src).into_owned(),
            position: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            if c == b'+' {
                acc += &rhs;
            } else {
                acc -= &rhs;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let d = rhs
                    .as_constant()
                    .filter(|d| !d.is_zero())
                    .ok_or_else(|| self.error("division only by nonzero constants"))?;
                acc = acc.scale(&d.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("expected integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Poly::var(Symbol::parse(name)))
            }
            _ => Err(self.error("expected a number, symbol or '('")),
        }
    }

    fn number(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let mut value = if int_part.is_empty() {
            Rational::zero()
        } else {
            Rational::from_integer(int_part.parse::<BigInt>().unwrap())
        };
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let fstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let frac = std::str::from_utf8(&self.src[fstart..self.pos]).unwrap();
            if int_part.is_empty() && frac.is_empty() {
                return Err(self.error("malformed number"));
            }
            if !frac.is_empty() {
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                value += Rational::new(frac.parse::<BigInt>().unwrap(), scale);
            }
        }
        let exp_follows = matches!(self.src.get(self.pos), Some(b'e' | b'E'))
            && match self.src.get(self.pos + 1) {
                Some(b'+' | b'-') => self.src.get(self.pos + 2).is_some_and(u8::is_ascii_digit),
                Some(d) => d.is_ascii_digit(),
                None => false,
            };
        if exp_follows {
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
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
            let estart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: usize = std::str::from_utf8(&self.src[estart..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("malformed exponent"))?;
            let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), e));
            value = if neg { value / scale } else { value * scale };
        }
        Ok(Poly::constant(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_are_exact() {
        assert_eq!(
            parse_rational("0.1").unwrap(),
            Rational::new(1.into(), 10.into())
        );
        assert_eq!(
            parse_rational("-2/3").unwrap(),
            Rational::new((-2).into(), 3.into())
        );
        assert_eq!(
            parse_rational("2.5e-1").unwrap(),
            Rational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn rejects_division_by_symbol() {
        assert!("x/t".parse::<Poly>().is_err());
        assert!("x +".parse::<Poly>().is_err());
        assert!("(x".parse::<Poly>().is_err());
    }

    #[test]
    fn reads_jets_and_parameters() {
        let p: Poly = "w_xxx - 6*w*w_x + a5/3".parse().unwrap();
        assert!(p.contains(&Symbol::w(3, 0)));
        assert!(p.contains(&Symbol::param("a5")));
    }
}
