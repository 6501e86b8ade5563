//! Reader for formulas written the way they appear in print: single-letter
//! variables, implicit multiplication, `^` for integer powers and `/` by
//! constants. `10abf-5ag^2+(g+1)^3/60` is a valid input.

use num_traits::Zero;

use super::multipoly::{MultiPoly, Var};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: Vec<(usize, char)>,
    i: usize,
    _text: &'a str,
}

pub fn parse(text: &str) -> Result<MultiPoly, ParseError> {
    let src = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
        .collect();
    let mut p = Parser {
        src,
        i: 0,
        _text: text,
    };
    let e = p.expr()?;
    if p.i != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src.get(self.i).map(|x| x.1)
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.src.get(self.i).map_or(usize::MAX, |x| x.0),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn starts_factor(c: char) -> bool {
        c.is_ascii_digit() || c == '(' || Var::from_char(c).is_some()
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.i += 1;
                    let f = self.power()?;
                    let c = f
                        .to_univariate(Var::X)
                        .filter(|u| u.deg() == 0 && !u.is_zero())
                        .ok_or_else(|| self.err("can only divide by a nonzero constant"))?;
                    acc = acc.scale(&c.coeff(0).recip());
                }
                Some(c) if Self::starts_factor(c) => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let n = self.uint()?;
            let n = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        let start = self.i;
        let mut v: u64 = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as u64 - '0' as u64))
                .ok_or_else(|| self.err("integer overflow"))?;
            self.i += 1;
        }
        if self.i == start {
            return Err(self.err("expected an integer"));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut v = Rational::zero();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                    v = v * int(10) + int(c as i64 - '0' as i64);
                    self.i += 1;
                }
                Ok(MultiPoly::constant(v))
            }
            Some(c) => match Var::from_char(c) {
                Some(v) => {
                    self.i += 1;
                    Ok(MultiPoly::var(v))
                }
                None => Err(self.err("unexpected character")),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}
