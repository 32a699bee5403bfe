//! Parser for linear combinations of tensor words:
//! `E1*E1*E2 - (q + q^-1)*E1*E2*E1 + E2*E1*E1`. Scalar factors follow the
//! scalar expression grammar; every other `*`-joined atom must be a
//! generator name of the spec.

use num_bigint::BigInt;
use thiserror::Error;

use crate::nichols::GradedElement;
use crate::scalar::{Rational, Scalar};
use crate::tensorspace::{BraidingSpec, TensorVector, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementParseError {
    #[error("element parse error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown generator '{name}' at column {col}")]
    UnknownName { col: usize, name: String },
}

fn syntax<T>(col: usize, msg: impl Into<String>) -> Result<T, ElementParseError> {
    Err(ElementParseError::Syntax {
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
    Name(String),
    Eof,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ElementParseError> {
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
                out.push((col, Tok::Int(text[start..i].parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let ident = &text[start..i];
                if ident == "q" {
                    // bare variable or q^exponent
                    let mut exp = 1i64;
                    if i < bytes.len() && bytes[i] == b'^' {
                        i += 1;
                        let mut sign = 1i64;
                        if i < bytes.len() && bytes[i] == b'-' {
                            sign = -1;
                            i += 1;
                        }
                        let dstart = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if dstart == i {
                            return syntax(i + 1, "expected integer exponent after '^'");
                        }
                        exp = sign
                            * text[dstart..i].parse::<i64>().map_err(|_| {
                                ElementParseError::Syntax {
                                    col: dstart + 1,
                                    msg: "exponent out of range".into(),
                                }
                            })?;
                    }
                    out.push((col, Tok::QPower(exp)));
                } else {
                    out.push((col, Tok::Name(ident.to_string())));
                }
            }
            c => return syntax(col, format!("unexpected character '{}'", c as char)),
        }
    }
    out.push((bytes.len() + 1, Tok::Eof));
    Ok(out)
}

/// Parse an element expression against a braiding spec. Terms of different
/// total degrees are collected into a graded element.
pub fn parse_element(
    text: &str,
    spec: &BraidingSpec,
) -> Result<GradedElement, ElementParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        spec,
    };
    p.element()
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    spec: &'a BraidingSpec,
}

impl Parser<'_> {
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

    fn element(&mut self) -> Result<GradedElement, ElementParseError> {
        let mut out = GradedElement::zero();
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let (word, coeff) = self.term()?;
            let coeff = if negate { -&coeff } else { coeff };
            out.add_vector(&TensorVector::from_terms([(word, coeff)]));
            match self.bump() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::Eof => return Ok(out),
                _ => {
                    return syntax(
                        self.tokens[self.pos - 1].0,
                        "expected '+', '-' or end of element",
                    )
                }
            }
        }
    }

    /// One product term: scalar factors interleaved with generator names.
    fn term(&mut self) -> Result<(Word, Scalar), ElementParseError> {
        let mut coeff = Scalar::one();
        let mut letters: Vec<u8> = Vec::new();
        loop {
            let col = self.col();
            match self.bump() {
                Tok::Int(n) => coeff = &coeff * &Scalar::from_rational(Rational::from(n)),
                Tok::QPower(e) => coeff = &coeff * &Scalar::q_power(e),
                Tok::LParen => {
                    let inner = self.scalar_expr()?;
                    if self.bump() != Tok::RParen {
                        return syntax(col, "unclosed parenthesis");
                    }
                    coeff = &coeff * &inner;
                }
                Tok::Name(name) => match self.spec.name_index(&name) {
                    Some(letter) => letters.push(letter),
                    None => return Err(ElementParseError::UnknownName { col, name }),
                },
                _ => return syntax(col, "expected scalar factor or generator name"),
            }
            let mut next_atom = false;
            loop {
                match self.peek() {
                    Tok::Star => {
                        self.bump();
                        next_atom = true;
                        break;
                    }
                    Tok::Slash => {
                        let col = self.col();
                        self.bump();
                        // division only applies to scalar factors
                        let divisor = match self.bump() {
                            Tok::Int(n) => Scalar::from_rational(Rational::from(n)),
                            Tok::QPower(e) => Scalar::q_power(e),
                            Tok::LParen => {
                                let inner = self.scalar_expr()?;
                                if self.bump() != Tok::RParen {
                                    return syntax(col, "unclosed parenthesis");
                                }
                                inner
                            }
                            _ => return syntax(col, "expected scalar divisor after '/'"),
                        };
                        if divisor.is_zero() {
                            return syntax(col, "division by zero");
                        }
                        coeff = &coeff / &divisor;
                    }
                    _ => break,
                }
            }
            if !next_atom {
                break;
            }
        }
        if letters.is_empty() && coeff.is_zero() {
            return Ok((Word::empty(), Scalar::zero()));
        }
        Ok((Word::new(letters), coeff))
    }

    /// Pure scalar expression (inside parentheses): no generator names.
    fn scalar_expr(&mut self) -> Result<Scalar, ElementParseError> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        let mut acc = self.scalar_term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.scalar_term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.scalar_term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_term(&mut self) -> Result<Scalar, ElementParseError> {
        let mut acc = self.scalar_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.scalar_factor()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    let col = self.col();
                    self.bump();
                    let f = self.scalar_factor()?;
                    if f.is_zero() {
                        return syntax(col, "division by zero");
                    }
                    acc = &acc / &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_factor(&mut self) -> Result<Scalar, ElementParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Int(n) => Ok(Scalar::from_rational(Rational::from(n))),
            Tok::QPower(e) => Ok(Scalar::q_power(e)),
            Tok::LParen => {
                let inner = self.scalar_expr()?;
                if self.bump() != Tok::RParen {
                    return syntax(col, "unclosed parenthesis");
                }
                Ok(inner)
            }
            Tok::Name(name) => syntax(col, format!("generator '{name}' inside scalar expression")),
            _ => syntax(col, "expected scalar factor"),
        }
    }
}
