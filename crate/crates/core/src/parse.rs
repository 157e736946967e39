//! A small expression syntax for elements, e.g. `q^2*p - e1*e2/2 + i*(q+p)`.
//!
//! Factors multiply left to right with the graded product, so the order of
//! odd generators matters: `e2*e1` is `-e1*e2`. The token `i` is the
//! imaginary unit unless the basis has a generator named `i`.

use std::sync::Arc;

use crate::basis::GeneratorBasis;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Coeff};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    basis: &'a Arc<GeneratorBasis>,
}

impl<S: Coeff> Element<S> {
    /// Parses an expression over `basis`.
    pub fn parse(basis: &Arc<GeneratorBasis>, src: &str) -> Result<Self> {
        let mut p = Parser {
            toks: tokenize(src)?,
            pos: 0,
            basis,
        };
        if p.toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let e = p.expr::<S>()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(e)
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr<S: Coeff>(&mut self) -> Result<Element<S>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term::<S>()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<S: Coeff>(&mut self) -> Result<Element<S>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d: Element<S> = self.power()?;
                    let c = d.constant_term();
                    if d.max_degree().unwrap_or(0) > 0 || c.is_zero() {
                        return Err(Error::Parse("can only divide by a nonzero constant".into()));
                    }
                    acc = acc.scale(&(S::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<S: Coeff>(&mut self) -> Result<Element<S>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom<S: Coeff>(&mut self) -> Result<Element<S>> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let r = parse_rational(&n)?;
                Ok(Element::constant(self.basis, S::from_rational(&r, &num_traits::Zero::zero())))
            }
            Some(Tok::Ident(name)) => {
                if let Ok(i) = self.basis.index(&name) {
                    Ok(Element::generator(self.basis, i))
                } else if name == "i" {
                    Ok(Element::constant(self.basis, S::i()))
                } else {
                    Err(Error::UnknownGenerator(name))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(Tok::Minus) => Ok(-&self.power::<S>()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Parity;
    use crate::scalar::{q, Exact};

    #[test]
    fn parses_polynomials() {
        let b = GeneratorBasis::new([
            ("q", Parity::Even),
            ("p", Parity::Even),
            ("e1", Parity::Odd),
            ("e2", Parity::Odd),
        ])
        .unwrap();
        let qq: Element<Exact> = Element::var(&b, "q").unwrap();
        let p: Element<Exact> = Element::var(&b, "p").unwrap();
        let a: Element<Exact> = Element::parse(&b, "q^2*p - 1/2").unwrap();
        assert_eq!(a, &(&(&qq * &qq) * &p) - &Element::constant(&b, q(1, 2)));
        let e: Element<Exact> = Element::parse(&b, "e2*e1 + e1*e2").unwrap();
        assert!(e.is_zero());
        let c: Element<Exact> = Element::parse(&b, "i*(q+p)").unwrap();
        assert_eq!(c, (&qq + &p).scale(&Exact::i()));
        let d: Element<Exact> = Element::parse(&b, "0.5*q").unwrap();
        assert_eq!(d, qq.scale(&q(1, 2)));
        assert!(Element::<Exact>::parse(&b, "x").is_err());
        assert!(Element::<Exact>::parse(&b, "q +").is_err());
        assert!(Element::<Exact>::parse(&b, "").is_err());
        let f: Element<Exact> = Element::parse(&b, "q*p/4 - 3*i/2").unwrap();
        assert_eq!(f, &(&qq * &p).scale(&q(1, 4)) - &Element::constant(&b, Exact::i() * q(3, 2)));
        assert!(Element::<Exact>::parse(&b, "q/p").is_err());
        assert!(Element::<Exact>::parse(&b, "q/0").is_err());
    }
}
