//! Polynomial expressions in `x, y, z` with rational coefficients.
//!
//! Grammar (usual precedence, `^` binds tightest):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*        juxtaposition allowed before a variable or '('
//! factor := ('+'|'-') factor | atom ['^' uint]
//! atom   := uint ['/' uint] | 'x' | 'y' | 'z' | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::Rat;
use crate::polyring::{HomogeneousPoly, Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("polynomial is not homogeneous: terms of degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<u32> },
}

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1000;

type Poly = BTreeMap<Monomial, Rat>;

fn constant(c: Rat) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(Monomial::one(), c);
    }
    p
}

fn add_into(acc: &mut Poly, other: Poly, sign: i32) {
    for (m, c) in other {
        let entry = acc.entry(m).or_insert_with(Rat::zero);
        if sign < 0 {
            *entry -= c;
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            acc.remove(&m);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let entry = out.entry(m).or_insert_with(Rat::zero);
            *entry += ca * cb;
            if entry.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

fn pow(base: &Poly, mut e: u32) -> Poly {
    let mut acc = constant(Rat::one());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b);
        }
    }
    acc
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError { pos: self.pos, message: message.into() })
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

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::new();
        let mut sign = 1;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, sign);
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = mul(&acc, &self.factor()?);
                }
                Some(b'x' | b'y' | b'z' | b'(') => acc = mul(&acc, &self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'-') {
            let mut p = self.factor()?;
            p.values_mut().for_each(|c| *c = -c.clone());
            return Ok(p);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.uint()?;
            let e = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError::SyntaxError { pos: at, message: format!("exponent above {MAX_EXPONENT}") })?;
            return Ok(pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => Var::Z,
                };
                Ok([(Monomial::var(v), Rat::one())].into_iter().collect())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError::SyntaxError { pos: at, message: "zero denominator".into() });
                    }
                    den
                } else {
                    BigInt::one()
                };
                Ok(constant(Rat::new(num, den)))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and expands `text`; the zero polynomial gets degree 0.
pub fn parse_poly(text: &str) -> Result<HomogeneousPoly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut degrees: Vec<u32> = poly.keys().map(Monomial::degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    match degrees.as_slice() {
        [] => Ok(HomogeneousPoly::zero(0)),
        [d] => Ok(HomogeneousPoly::from_terms(*d, poly).expect("single degree")),
        _ => Err(ParseError::NotHomogeneous { degrees }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat_frac;

    #[test]
    fn zariski_expansion() {
        let p = parse_poly("(x^2+y^2)^3+(y^3+z^3)^2").unwrap();
        assert_eq!(p.degree(), 6);
        // 4 + 3 terms with the two y^6 merged
        assert_eq!(p.num_terms(), 6);
        assert_eq!(p.to_string(), "x^6+3*x^4*y^2+3*x^2*y^4+2*y^6+2*y^3*z^3+z^6");
    }

    #[test]
    fn not_homogeneous() {
        assert_eq!(parse_poly("x^2 + y"), Err(ParseError::NotHomogeneous { degrees: vec![1, 2] }));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly("3/2*x^3 - x*y*z").unwrap();
        assert_eq!(p.coeff(&Monomial::new(3, 0, 0)), rat_frac(3, 2));
        assert_eq!(p.coeff(&Monomial::new(1, 1, 1)), rat_frac(-1, 1));
        assert_eq!(p.to_string(), "3/2*x^3-x*y*z");
    }

    #[test]
    fn juxtaposition() {
        let a = parse_poly("(xz-y^2)^3-x^2*y^4").unwrap();
        let b = parse_poly("(x*z-y^2)^3-x^2*y^4").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("2x(y+z)").unwrap(), parse_poly("2*x*y+2*x*z").unwrap());
        assert_eq!(parse_poly("(x+y)(x-y)").unwrap(), parse_poly("x^2-y^2").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse_poly("x^2 + * y").unwrap_err(), ParseError::SyntaxError { pos: 6, message: "unexpected '*'".into() });
        assert!(matches!(parse_poly("(x+y"), Err(ParseError::SyntaxError { pos: 4, .. })));
        assert!(matches!(parse_poly("x w"), Err(ParseError::SyntaxError { pos: 2, .. })));
        assert!(matches!(parse_poly("x/0"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::SyntaxError { pos: 0, .. })));
    }

    #[test]
    fn cancellation_and_zero() {
        assert!(parse_poly("x-x").unwrap().is_zero());
        assert_eq!(parse_poly("-(x-y)^2").unwrap().to_string(), "-x^2+2*x*y-y^2");
    }
}
