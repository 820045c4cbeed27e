//! Reader for the printed form of rational functions.
//!
//! Grammar: `+ - * / ^`, parentheses, integer literals, `N/Mi` and `Ni`
//! imaginary literals, and the names `s`, `t`, `w`, `x`, `i`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

pub fn parse_rational(text: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: String::from(message),
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

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| Error::Parse {
                        column: at + 1,
                        message: String::from("division by zero"),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ => false,
            };
            let at = self.pos;
            let e = self.integer()?;
            let e: i32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| Error::Parse {
                column: at + 1,
                message: String::from("zero to a negative power"),
            });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| self.err("integer out of range"))
    }

    fn big_integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(b's') => self.name(RationalFunction::s()),
            Some(b't') => self.name(RationalFunction::t()),
            Some(b'w') => self.name(RationalFunction::w()),
            Some(b'x') => self.name(RationalFunction::x()),
            Some(b'i') => self.name(RationalFunction::i()),
            Some(c) => Err(self.err(&format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn name(&mut self, v: RationalFunction) -> Result<RationalFunction> {
        self.pos += 1;
        if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            return Err(self.err("unknown identifier"));
        }
        Ok(v)
    }

    /// `N`, `Ni`, or the tight forms `N/M` and `N/Mi` (no spaces).
    fn number(&mut self) -> Result<RationalFunction> {
        let n = self.big_integer()?;
        let mut value = BigRational::from_integer(n);
        let save = self.pos;
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let d = self.big_integer()?;
            if d.is_zero() {
                self.pos = save;
            } else {
                value /= BigRational::from_integer(d);
            }
        }
        let imaginary = self.src.get(self.pos) == Some(&b'i')
            && !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric());
        if imaginary {
            self.pos += 1;
            return Ok(RationalFunction::constant(GaussianRational::new(
                BigRational::zero(),
                value,
            )));
        }
        Ok(RationalFunction::constant(GaussianRational::new(value, BigRational::zero())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn basic_forms() {
        let v = parse_rational("1/(w*x)").unwrap();
        assert_eq!(v.to_string(), "1/(w*x)");
        let t = parse_rational("s^2").unwrap();
        assert_eq!(t, RationalFunction::t());
        let w_inv = parse_rational("w^-1").unwrap();
        assert_eq!(w_inv, RationalFunction::w().inv().unwrap());
    }

    #[test]
    fn imaginary_literals() {
        let a = parse_rational("(1/2+3/4i)*w").unwrap();
        let b = parse_rational("w/2 + 3*i*w/4").unwrap();
        assert!(a.rf_equals(&b));
        assert_eq!(parse_rational("i*i").unwrap(), RationalFunction::from_int(-1));
    }

    #[test]
    fn errors_carry_columns() {
        match parse_rational("w + * x") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("y").is_err());
        assert!(parse_rational("(w").is_err());
    }

    #[test]
    fn round_trip_of_printed_values() {
        for src in [
            "(t*w^2 - 1)/(w*(1 - t))",
            "(w^2 - t)/(w - w*t)",
            "(1+i)*s^3 - 2/3*x",
            "-t/(w*(t + 1))",
        ] {
            let v = parse_rational(src).unwrap();
            let back = parse_rational(&v.to_string()).unwrap();
            assert_eq!(v, back, "{src} -> {v}");
        }
    }
}
