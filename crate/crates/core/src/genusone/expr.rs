//! Parser for rational-function expressions over `F4` such as
//! `t^2(t+1)^2(t^2+t+1)`, `ϱt^4` or `1/t^3`.
//!
//! Integer literals are read modulo 2; `ϱ`, `r` and `rho` denote the
//! generator of `F4`; Unicode superscript exponents are accepted.

use super::f4::F4;
use super::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Rho,
    T,
    Plus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '·' => {}
            '+' | '-' => out.push(Tok::Plus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            't' => out.push(Tok::T),
            'ϱ' | 'ρ' => out.push(Tok::Rho),
            'r' => {
                if chars[i..].starts_with(&['r', 'h', 'o']) {
                    i += 2;
                }
                out.push(Tok::Rho);
            }
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(
                    text.parse().map_err(|_| format!("bad number {text}"))?,
                ));
            }
            _ => {
                if let Some(d) = superscript_digit(c) {
                    let mut n = d as u64;
                    while i + 1 < chars.len() {
                        match superscript_digit(chars[i + 1]) {
                            Some(d) => {
                                n = n * 10 + d as u64;
                                i += 1;
                            }
                            None => break,
                        }
                    }
                    out.push(Tok::Caret);
                    out.push(Tok::Num(n));
                } else {
                    return Err(format!("unexpected character {c:?} in {s:?}"));
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

fn superscript_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).map(|p| p as u32)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFn, String> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            acc = &acc + &self.term()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = &acc / &d;
                }
                Some(Tok::Num(_) | Tok::Rho | Tok::T | Tok::LParen) => {
                    acc = &acc * &self.power()?
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFn, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    Ok(base.pow(u32::try_from(n).map_err(|_| "exponent too large")?))
                }
                other => Err(format!("expected exponent, found {other:?}")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFn, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFn::from(if n % 2 == 1 { F4::ONE } else { F4::ZERO })),
            Some(Tok::Rho) => Ok(RatFn::from(F4::RHO)),
            Some(Tok::T) => Ok(RatFn::t()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(format!("expected ')', found {other:?}")),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parse an expression into a rational function.
pub fn parse_ratfn(s: &str) -> Result<RatFn, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in {s:?}"));
    }
    Ok(e)
}

/// Parse an expression that must be a polynomial.
pub fn parse_poly(s: &str) -> Result<super::poly::Poly, String> {
    let r = parse_ratfn(s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| format!("{s:?} is not a polynomial"))
}
