//! Recursive-descent parser for coefficient expressions:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | base ('^' uint)?
//! base     := rational | name | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. A leading `-` negates the following factor,
//! so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::{CoeffError, Poly, RatFunc, Rational};

pub fn poly_parse(text: &str, variables: &[String]) -> Result<RatFunc, CoeffError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: variables };
    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.syntax(&format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> CoeffError {
        CoeffError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let op_pos = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                let inv = rhs.inverse().map_err(|_| CoeffError::DivisionByZero { position: op_pos })?;
                &acc * &inv
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, CoeffError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.uint()?;
            let exp: u32 = exp.try_into().map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatFunc, CoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.name(),
            Some(c) => Err(self.syntax(&format!("unexpected `{}`", c as char))),
            None => Err(self.syntax("unexpected end of expression")),
        }
    }

    fn rational(&mut self) -> Result<RatFunc, CoeffError> {
        let num = self.uint()?;
        // A literal fraction is one base, so `2/3^2` is `(2/3)^2`.
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                let den_pos = self.pos;
                let den = self.uint()?;
                if den == BigInt::from(0) {
                    return Err(CoeffError::DivisionByZero { position: den_pos });
                }
                return Ok(RatFunc::from_rational(Rational::new(num, den)));
            }
            self.pos = save;
        }
        Ok(RatFunc::from_rational(Rational::from_integer(num)))
    }

    fn uint(&mut self) -> Result<BigInt, CoeffError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn name(&mut self) -> Result<RatFunc, CoeffError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
        match self.vars.iter().position(|v| v == name) {
            Some(index) => Ok(RatFunc::from_poly(Poly::var(index))),
            None => Err(CoeffError::UnknownVariable { name: name.to_string(), position: start }),
        }
    }
}
