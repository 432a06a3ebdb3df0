//! Text form of expressions.
//!
//! Grammar: sums and differences of products and quotients of factors; a
//! factor is an unsigned integer, a variable token `[A-Za-z][A-Za-z0-9_,]*`,
//! or a parenthesized expression, optionally raised to an integer power.
//! Printing a canonical `RationalFunction` and parsing it back yields the same
//! value.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::AlgebraError;
use crate::poly::LaurentPoly;
use crate::rational::RationalFunction;

pub fn parse(s: &str) -> Result<RationalFunction, AlgebraError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(r)
}

/// Parse an expression whose denominator is a monomial.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, AlgebraError> {
    let r = parse(s)?;
    r.as_laurent().ok_or_else(|| AlgebraError::NotLaurent(s.to_string()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<RationalFunction, AlgebraError> {
        let mut acc = self.term()?;
        loop {
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

    fn term(&mut self) -> Result<RationalFunction, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| AlgebraError::Parse {
                        offset: at,
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, AlgebraError> {
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

    fn power(&mut self) -> Result<RationalFunction, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        let at = self.pos;
        base.pow(e).map_err(|_| AlgebraError::Parse { offset: at, message: "zero to a negative power".into() })
    }

    fn exponent(&mut self) -> Result<i32, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.exponent()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                digits.parse::<i32>().map_err(|_| self.error("exponent out of range"))
            }
            _ => Err(self.error("expected integer exponent")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RationalFunction, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(RationalFunction::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b',' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii token");
                Ok(RationalFunction::var(name))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_may_contain_commas() {
        let r = parse("p1,3/p2,3 + z1,2^-1").unwrap();
        assert!(r.contains_var("p1,3"));
        assert!(r.contains_var("z1,2"));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("1/2*u").unwrap(), parse("u/2").unwrap());
        assert_eq!(parse("x^(-2)").unwrap(), parse("1/x^2").unwrap());
        assert_eq!(parse("a - b - c").unwrap(), parse("a - (b + c)").unwrap());
    }

    #[test]
    fn round_trip() {
        for s in [
            "v/((u*v - 1)*z0)",
            "-3/7*u^2*v + 2",
            "(x + y)/(2*x*y - 3)",
            "q*p2,4/p1,2 + p1,3/p2,3",
            "-u/z",
            "1/(u^2*v)",
        ] {
            let r = parse(s).unwrap();
            assert_eq!(parse(&r.to_string()).unwrap(), r, "{s} -> {r}");
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse("u + "), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse("u / 0"), Err(AlgebraError::Parse { offset: 3, .. })));
        assert!(matches!(parse("u ) "), Err(AlgebraError::Parse { offset: 2, .. })));
        assert!(parse_poly("1/(u + 1)").is_err());
    }
}
