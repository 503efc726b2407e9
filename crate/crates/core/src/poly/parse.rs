use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

use super::{Polynomial, Ring};

/// Parses a polynomial over the coefficient field of `ring`.
///
/// Accepts `+ - * ^`, parentheses, integer and `a/b` coefficients, and
/// implicit multiplication (`3x^2y`). Division is only allowed by nonzero
/// numeric constants.
pub fn parse_polynomial(ring: &Ring, input: &str) -> Result<Polynomial> {
    let tokens = tokenize(input)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        input,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let chars = input.chars().collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character `{c}` in `{input}`"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in polynomial `{}`", self.input.trim()))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat_op('-') {
            self.term()?.neg()
        } else {
            self.eat_op('+');
            self.term()?
        };
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.power()?)?;
            } else if self.eat_op('/') {
                let den = self.power()?;
                if !den.is_constant() || den.is_zero() {
                    return Err(self.error("division by a non-constant or zero"));
                }
                let inv = self.ring.field().inv(&den.constant_coefficient())?;
                acc = acc.scale(&inv)?;
            } else if matches!(
                self.peek(),
                Some(Token::Ident(_)) | Some(Token::Op('(')) | Some(Token::Num(_))
            ) {
                acc = acc.mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
                    base.pow(e)
                }
                _ => Err(self.error("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let v = self
                    .ring
                    .field()
                    .from_rational(&BigRational::from_integer(n))?;
                Ok(Polynomial::constant(self.ring, v))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Polynomial::var_named(self.ring, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.error("missing `)`"));
                }
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(t) => Err(self.error(&format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::poly::{MonomialOrder, PolyRing};

    #[test]
    fn accepts_implicit_products_and_fractions() {
        let r = PolyRing::new(Field::rationals(), &["x", "y"], MonomialOrder::GrevLex);
        let a = parse_polynomial(&r, "3x^2y - 1/2").unwrap();
        let b = parse_polynomial(&r, "3*x^2*y - 1/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "3*x^2*y - 1/2");
        let c = parse_polynomial(&r, "-x^2").unwrap();
        assert_eq!(c.to_string(), "-x^2");
    }

    #[test]
    fn reduces_coefficients_mod_p() {
        let r = PolyRing::new(Field::prime(3).unwrap(), &["x"], MonomialOrder::GrevLex);
        let p = parse_polynomial(&r, "x^2 - 1").unwrap();
        assert_eq!(p.to_string(), "x^2 + 2");
        let half = parse_polynomial(&r, "1/2").unwrap();
        assert_eq!(half.to_string(), "2");
    }

    #[test]
    fn rejects_bad_input() {
        let r = PolyRing::new(Field::rationals(), &["x"], MonomialOrder::GrevLex);
        for bad in ["x +", "z", "x/x", "(x", "x^y", "x $ 1", "1/0"] {
            assert!(parse_polynomial(&r, bad).is_err(), "{bad}");
        }
    }
}
