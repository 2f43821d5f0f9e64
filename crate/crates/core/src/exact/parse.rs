//! Text syntax for polynomials: rational coefficients, named variables,
//! `+ - * ^` and parentheses, e.g. `"y^2*z - 3/2*x^3"`.

use num_bigint::BigInt;
use num_traits::One;

use super::poly::MultiPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        vars,
    };
    if p.chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let k: u32 = s.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Scalar::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Scalar::from_integer(d);
                }
                Ok(self.zero().constant_like(value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => {
                        let mut m = [0; 3];
                        m[i] = 1;
                        Ok(self.zero().monomial_like(m, Scalar::one()))
                    }
                    None => Err(Error::Parse(format!("unknown variable {name:?}"))),
                }
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::ratio;

    #[test]
    fn parses_rational_coefficients() {
        let f = parse_poly("3/2*x^2 - y", &["x", "y"]).unwrap();
        assert_eq!(f.coeff(&[2, 0, 0]), ratio(3, 2));
        assert_eq!(f.coeff(&[0, 1, 0]), ratio(-1, 1));
    }

    #[test]
    fn round_trips_display() {
        let f = parse_poly("y^2*z - x^3 - x^2*z", &["x", "y", "z"]).unwrap();
        let g = parse_poly(&f.to_string(), &["x", "y", "z"]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x^", &["x", "y"]).is_err());
        assert!(parse_poly("w + 1", &["x", "y"]).is_err());
        assert!(parse_poly("(x + y", &["x", "y"]).is_err());
        assert!(parse_poly("", &["x", "y"]).is_err());
    }
}
