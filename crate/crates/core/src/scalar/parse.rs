//! Recursive-descent parser for scalar expressions.
//!
//! Accepts the canonical rendering plus ordinary arithmetic: `+ - * /`,
//! parentheses, rational literals, the symbols `q`, `v` (= q^(1/2)) and
//! `k` (= q - q^(-1)), and powers `x^n`, `x^(n)`, `x^(n/2)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Scalar;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

pub(super) fn parse(s: &str) -> Result<Scalar> {
    let mut p = Parser {
        src: s,
        chars: s
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            reason: format!("{} at offset {}", reason, self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc * self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e2 = if self.eat('(') {
            let e = self.exponent(true)?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            e
        } else {
            self.exponent(false)?
        };
        if e2 % 2 == 0 {
            base.pow(e2 / 2)
        } else if base == Scalar::q() {
            Ok(Scalar::v_pow(e2))
        } else {
            Err(self.err("half-integer exponent needs base q"))
        }
    }

    /// Exponent as twice its value.
    fn exponent(&mut self, allow_half: bool) -> Result<i32> {
        let neg = self.eat('-');
        let n = self.integer()?;
        let n: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        let e2 = if allow_half && self.eat('/') {
            if self.integer()? != BigInt::from(2) {
                return Err(self.err("only /2 exponents are supported"));
            }
            n
        } else {
            2 * n
        };
        Ok(if neg { -e2 } else { e2 })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some('q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some('v') => {
                self.pos += 1;
                Ok(Scalar::v_pow(1))
            }
            Some('k') => {
                self.pos += 1;
                Ok(Scalar::k())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parses_half_powers() {
        assert_eq!(parse("q^(3/2)").unwrap(), Scalar::v_pow(3));
        assert_eq!(parse("q^(-1/2)").unwrap(), Scalar::v_pow(-1));
        assert_eq!(parse("v^3").unwrap(), Scalar::v_pow(3));
    }

    #[test]
    fn parses_rational_coefficients() {
        let s = parse("-3/2*q^(2) + 1").unwrap();
        let expect = Scalar::from_rational(rat(-3, 2)) * Scalar::q_pow(2) + Scalar::one();
        assert_eq!(s, expect);
    }

    #[test]
    fn unicode_minus() {
        assert_eq!(parse("q \u{2212} q^(-1)").unwrap(), Scalar::k());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("q +").is_err());
        assert!(parse("x").is_err());
        assert!(parse("(q").is_err());
        assert!(parse("1/0").is_err());
    }
}
