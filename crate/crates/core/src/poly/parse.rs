//! Text syntax for polynomials: variables `z1..zn`, parameter `e`, integer
//! literals, `+ - * / ^` and parentheses. Juxtaposition is rejected and `/`
//! only accepts a nonzero constant divisor.

use num_bigint::BigInt;

use super::coeff::{Rational, Ring};
use super::eps::EpsPoly;
use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Eps,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
}

fn lex(input: &str, nvars: usize) -> Result<Vec<(usize, Tok)>> {
    let err = |at: usize, message: String| Error::Parse {
        input: input.to_string(),
        position: at,
        message,
    };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = if word == "e" {
                    Tok::Eps
                } else if let Some(idx) = word.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
                    if idx == 0 || idx > nvars {
                        return Err(err(
                            start,
                            format!("variable {word} outside z1..z{nvars}"),
                        ));
                    }
                    Tok::Var(idx - 1)
                } else {
                    return Err(err(start, format!("unknown identifier `{word}`")));
                };
                out.push((start, tok));
                continue;
            }
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        let position = self
            .toks
            .get(self.pos)
            .map_or(self.input.len(), |(p, _)| *p);
        Error::Parse {
            input: self.input.to_string(),
            position,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly<EpsPoly>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<EpsPoly>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    let c = constant_value(&d).ok_or_else(|| {
                        self.err("division is only allowed by a nonzero rational constant")
                    })?;
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&EpsPoly::constant(c.recip()));
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Eps | Tok::LParen) => {
                    return Err(self.err("juxtaposition is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<EpsPoly>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly<EpsPoly>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.err("exponent must be a nonnegative integer literal"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly<EpsPoly>> {
        let n = self.nvars;
        match self.bump() {
            Some(Tok::Num(v)) => Ok(MultiPoly::constant(
                n,
                EpsPoly::constant(Rational::from_integer(v)),
            )),
            Some(Tok::Var(i)) => Ok(MultiPoly::monomial(n, Monomial::var(i), EpsPoly::one())),
            Some(Tok::Eps) => Ok(MultiPoly::constant(n, EpsPoly::eps())),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("expected `)`"))
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, variable or `(`"))
            }
        }
    }
}

fn constant_value(p: &MultiPoly<EpsPoly>) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.num_terms() != 1 || !p.is_constant() {
        return None;
    }
    let c = &p.terms()[0].1;
    (c.degree() == Some(0)).then(|| c.constant_term())
}

/// Parse a polynomial in `z1..z{nvars}` whose coefficients may involve `e`.
pub fn parse_eps_poly(input: &str, nvars: usize) -> Result<MultiPoly<EpsPoly>> {
    let toks = lex(input, nvars)?;
    let mut p = Parser {
        input,
        toks,
        pos: 0,
        nvars,
    };
    if p.toks.is_empty() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        if matches!(p.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Eps | Tok::LParen)) {
            return Err(p.err("juxtaposition is not allowed; use `*`"));
        }
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parse a polynomial with rational coefficients; rejects any occurrence of `e`.
pub fn parse_poly(input: &str, nvars: usize) -> Result<MultiPoly<Rational>> {
    let p = parse_eps_poly(input, nvars)?;
    if p.eps_degree() > 0 {
        return Err(Error::Parse {
            input: input.to_string(),
            position: input.find('e').unwrap_or(0),
            message: "the parameter `e` is not allowed here".to_string(),
        });
    }
    Ok(p.set_eps_zero())
}

/// Parse a univariate polynomial in `e` (a point coordinate).
pub fn parse_eps_scalar(input: &str) -> Result<EpsPoly> {
    let p = parse_eps_poly(input, 0)?;
    Ok(p.terms().first().map(|(_, c)| c.clone()).unwrap_or_default())
}

/// Largest `k` such that `z{k}` occurs in `input`; used to infer the ring size.
pub fn max_variable_index(input: &str) -> usize {
    let bytes = input.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'z' && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric()) {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = input[i + 1..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}
