use super::Scalar;
use crate::error::{CqgError, ParseErrorKind, Pos, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

/// Parser for scalar expressions in `q` and `i`: `+ - * / ^`, juxtaposition as
/// multiplication, integer exponents (possibly negative) and parentheses.
pub(crate) struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> ScalarParser<'a> {
    /// `line`/`col0` locate the first byte of `src` in a larger document.
    pub fn new(src: &'a str, line: usize, col0: usize) -> Self {
        ScalarParser { src: src.as_bytes(), pos: 0, line, col0 }
    }

    fn err(&self, msg: impl Into<String>) -> CqgError {
        CqgError::Parse {
            kind: ParseErrorKind::Syntax,
            pos: Pos { line: self.line, col: self.col0 + self.pos },
            msg: msg.into(),
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

    pub fn parse_all(mut self) -> Result<Scalar> {
        let s = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected `{}`", c as char)));
        }
        Ok(s)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    acc = acc.checked_div(&d).map_err(|_| {
                        self.pos = at;
                        self.err("division by zero")
                    })?;
                }
                Some(c) if c == b'(' || c == b'q' || c == b'i' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let k: i32 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("exponent too large"))?;
        base.pow(if neg { -k } else { k }).map_err(|_| self.err("zero to a negative power"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n = BigInt::from_str(std::str::from_utf8(&self.src[start..self.pos]).unwrap()).unwrap();
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

impl FromStr for Scalar {
    type Err = CqgError;

    fn from_str(s: &str) -> Result<Scalar> {
        ScalarParser::new(s, 1, 1).parse_all()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips() {
        let q = Scalar::q();
        let samples = [
            Scalar::one().checked_div(&(&Scalar::one() + &q.pow(2).unwrap())).unwrap(),
            q.pow(-1).unwrap(),
            -q.clone(),
            Scalar::from_ratio(3, 2) * q.pow(2).unwrap(),
            &Scalar::i() * &Scalar::from_int(2),
            (&Scalar::one() + &q).checked_div(&q).unwrap(),
            Scalar::from_ratio(-1, 2) + Scalar::i().checked_div(&Scalar::from_int(2)).unwrap(),
        ];
        for s in samples {
            let back: Scalar = s.to_string().parse().unwrap();
            assert_eq!(back, s, "{}", s);
        }
    }

    #[test]
    fn syntax_errors_have_columns() {
        match "1 + * q".parse::<Scalar>() {
            Err(CqgError::Parse { pos, .. }) => assert_eq!(pos.col, 5),
            other => panic!("{:?}", other),
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("q^".parse::<Scalar>().is_err());
    }
}
