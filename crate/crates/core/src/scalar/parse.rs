use num_bigint::BigInt;
use thiserror::Error;

use super::{RatFunc, Rational};

/// Scalar expression grammar:
///
/// ```text
/// expr     := ['-'] term (('+'|'-') term)*
/// term     := factor (('*'|'/') factor)*
/// factor   := rational | 'q' ['^' signed-int] | '(' expr ')'
/// rational := int ['/' posint]
/// ```
///
/// Division binds like multiplication, which subsumes the `int '/' posint`
/// rational literals and allows reduced rational functions such as
/// `2*q^2/(-1 + q^2)` to round-trip through printing.
pub fn parse_scalar(text: &str) -> Result<RatFunc, ScalarParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let value = p.expr()?;
    p.expect_eof()?;
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scalar parse error at column {col}: {msg}")]
pub struct ScalarParseError {
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, ScalarParseError> {
    Err(ScalarParseError {
        col,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    QPower(i64),
    Eof,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            b'/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            b'(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((col, Tok::Int(n)));
            }
            b'q' => {
                i += 1;
                let mut exp: i64 = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let mut sign = 1i64;
                    if i < bytes.len() && bytes[i] == b'-' {
                        sign = -1;
                        i += 1;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return err(i + 1, "expected integer exponent after '^'");
                    }
                    let mag: i64 = text[start..i]
                        .parse()
                        .map_err(|_| ScalarParseError {
                            col: start + 1,
                            msg: "exponent out of range".into(),
                        })?;
                    exp = sign * mag;
                }
                out.push((col, Tok::QPower(exp)));
            }
            c => return err(col, format!("unexpected character '{}'", c as char)),
        }
    }
    out.push((bytes.len() + 1, Tok::Eof));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].1
    }

    fn col(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].1.clone();
        self.pos += 1;
        t
    }

    fn expect_eof(&self) -> Result<(), ScalarParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            err(self.col(), "trailing input after expression")
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarParseError> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ScalarParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    let col = self.col();
                    self.bump();
                    let f = self.factor()?;
                    if f.is_zero() {
                        return err(col, "division by zero");
                    }
                    acc = &acc / &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ScalarParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Int(n) => Ok(RatFunc::from_rational(Rational::from(n))),
            Tok::QPower(e) => Ok(RatFunc::q_power(e)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    return err(col, "unclosed parenthesis");
                }
                Ok(inner)
            }
            _ => err(col, "expected rational, q-power or parenthesized expression"),
        }
    }
}

impl std::str::FromStr for RatFunc {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}
