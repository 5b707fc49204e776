//! Text grammar for polynomials:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := [rational ['*']] factor ('*' factor)*  |  rational
//! factor   := name ['^' uint]
//! rational := int ['/' uint]
//! ```
//!
//! A leading sign is accepted on the first term. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Algebra, Polynomial, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.text))
    }

    fn uint(&mut self) -> Result<BigInt> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error("expected an unsigned integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }
}

pub(crate) fn parse_polynomial(algebra: &Algebra, text: &str) -> Result<Polynomial> {
    let mut cur = Cursor { text, pos: 0 };
    let mut out = Polynomial::zero();
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        first = false;
        let term = parse_term(algebra, &mut cur)?;
        if negative {
            out -= &term;
        } else {
            out += &term;
        }
        if cur.peek().is_none() {
            return Ok(out);
        }
    }
    match cur.peek() {
        None => Ok(out),
        Some(c) => Err(cur.error(&format!("unexpected `{c}`"))),
    }
}

fn parse_term(algebra: &Algebra, cur: &mut Cursor<'_>) -> Result<Polynomial> {
    let mut coeff = Rational::one();
    let mut expect_factor = true;
    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        let num = cur.uint()?;
        let den = if cur.eat('/') { cur.uint()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(cur.error("zero denominator"));
        }
        coeff = Rational::new(num, den);
        expect_factor = cur.eat('*');
        if !expect_factor && !matches!(cur.peek(), Some(c) if is_name_start(c)) {
            return Ok(Polynomial::constant(coeff));
        }
    }
    let mut term = Polynomial::constant(coeff);
    loop {
        let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() || !name.starts_with(is_name_start) {
            if expect_factor {
                return Err(cur.error("expected a generator name"));
            }
            break;
        }
        let index = algebra
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let exponent: u32 = if cur.eat('^') {
            let e = cur.uint()?;
            u32::try_from(e).map_err(|_| cur.error("exponent too large"))?
        } else {
            1
        };
        let factor = algebra.pow(&Polynomial::generator(index), exponent);
        term = algebra.mul(&term, &factor);
        if !cur.eat('*') {
            break;
        }
        expect_factor = true;
    }
    Ok(term)
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}
