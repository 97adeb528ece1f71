//! Text grammar for scalars.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | symbol | '(' expr ')'
//! ```
//!
//! Symbols are `α β γ δ` (or `alpha beta gamma delta`), `s`, quartic
//! coefficient symbols `cABCD` with exponent digits summing to 4, lift
//! unknowns `phiJ_I` / `phiJ_mI`, and free symbols `symN`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Var};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.skip_ws();
            let Some(n) = self.integer() else {
                return self.err("expected integer exponent");
            };
            let e: i32 = match i32::try_from(n) {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent too large"),
            };
            let at = self.pos;
            return base
                .pow(if neg { -e } else { e })
                .map_err(|_| Error::Parse {
                    pos: at,
                    msg: "zero raised to a negative power".into(),
                });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(v);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Scalar::big(self.integer().unwrap())),
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                let name = &self.src[start..self.pos];
                match Var::from_name(name) {
                    Some(v) => Ok(Scalar::var(v)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown symbol '{name}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_scalar(s: &str) -> Result<Scalar> {
    let mut p = Parser { src: s, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return p.err("trailing input");
    }
    Ok(v)
}
