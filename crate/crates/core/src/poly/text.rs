//! Canonical text syntax.
//!
//! Polynomials: `3/2*x1^2*x2 - x3 + 1`. Multiplication is always explicit and
//! `/` may only appear inside a rational literal.
//!
//! Ideal files:
//!
//! ```text
//! ring x, y : dp;
//! ideal: x^2 - 1, y^2 - 3*y + 2;
//! ```
//!
//! `//` and `#` start comments running to the end of the line.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeffs::{Coeffs, Qq};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Ideal, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::numth::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    Colon,
    Semi,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    offset: usize,
}

fn location(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = location(src, offset);
    Error::Parse { line, column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, offset: start });
            i += 1;
        } else if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().unwrap();
            out.push(Spanned { tok: Tok::Num(n), offset: start });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(src[start..i].to_string()), offset: start });
        } else {
            let ch = src[start..].chars().next().unwrap();
            return Err(error_at(src, start, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser { src, toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.offset)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        error_at(self.src, self.offset(), message)
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Num(n)) => format!("'{n}'"),
            Some(t) => format!("{t:?}"),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {}", self.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}, found {}", self.describe()))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err(format!("expected exponent, found {}", self.describe()))),
        }
    }

    fn factor(&mut self, ring: &PolyRing<Qq>, coeff: &mut Rational, exps: &mut [u32]) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Num(_)) => return Err(self.err("zero denominator")),
                        _ => return Err(self.err("expected denominator after '/'")),
                    }
                }
                *coeff *= value;
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                let var = ring
                    .var_index(&name)
                    .ok_or_else(|| error_at(self.src, at, format!("unknown variable '{name}'")))?;
                let e = if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    self.small_int()?
                } else {
                    1
                };
                exps[var] = exps[var].checked_add(e).ok_or(Error::ExponentOverflow)?;
            }
            _ => return Err(self.err(format!("expected number or variable, found {}", self.describe()))),
        }
        Ok(())
    }

    fn polynomial(&mut self, ring: &PolyRing<Qq>) -> Result<Poly<Rational>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; ring.nvars()];
            self.factor(ring, &mut coeff, &mut exps)?;
            while self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                self.factor(ring, &mut coeff, &mut exps)?;
            }
            if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_))) {
                return Err(self.err("expected '*' (multiplication must be explicit)"));
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(ring.from_terms(terms))
    }
}

/// Parses a polynomial over ℚ in the given ring.
pub fn parse_poly(ring: &PolyRing<Qq>, src: &str) -> Result<Poly<Rational>> {
    let mut p = Parser::new(src)?;
    let f = p.polynomial(ring)?;
    if p.peek().is_some() {
        return Err(p.err(format!("unexpected {}", p.describe())));
    }
    Ok(f)
}

/// Parses an ideal file. `ordering` overrides the declared ordering.
pub fn parse_ideal_file(src: &str, ordering: Option<MonomialOrder>) -> Result<Ideal<Qq>> {
    let mut p = Parser::new(src)?;
    match p.peek() {
        Some(Tok::Ident(s)) if s == "ring" => p.pos += 1,
        _ => return Err(p.err(format!("expected 'ring' declaration, found {}", p.describe()))),
    }
    let mut names = vec![p.ident("variable name")?];
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        let at = p.offset();
        let name = p.ident("variable name")?;
        if names.contains(&name) || name == "ring" || name == "ideal" {
            return Err(error_at(src, at, format!("invalid or duplicate variable '{name}'")));
        }
        names.push(name);
    }
    p.expect(Tok::Colon, "':'")?;
    let at = p.offset();
    let order_name = p.ident("ordering name")?;
    let declared = MonomialOrder::from_name(&order_name)
        .ok_or_else(|| error_at(src, at, format!("unknown ordering '{order_name}' (expected dp or lp)")))?;
    p.expect(Tok::Semi, "';'")?;
    let ring = PolyRing::new(&names, ordering.unwrap_or(declared), Qq);

    match p.peek() {
        Some(Tok::Ident(s)) if s == "ideal" => p.pos += 1,
        _ => return Err(p.err(format!("expected 'ideal', found {}", p.describe()))),
    }
    p.expect(Tok::Colon, "':'")?;
    let mut gens = Vec::new();
    loop {
        let at = p.offset();
        let f = p.polynomial(&ring)?;
        if f.is_zero() {
            return Err(error_at(src, at, "zero generator"));
        }
        gens.push(f);
        match p.peek() {
            Some(Tok::Comma) => p.pos += 1,
            _ => break,
        }
    }
    p.expect(Tok::Semi, "';' after the generator list")?;
    if p.peek().is_some() {
        return Err(p.err(format!("unexpected {} after the ideal", p.describe())));
    }
    Ok(Ideal::new(ring, gens))
}

/// Canonical text of a polynomial (`0` for the zero polynomial).
pub fn format_poly<C: Coeffs>(ring: &PolyRing<C>, f: &Poly<C::Elem>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let k = ring.coeffs();
    let mut out = String::new();
    for (i, (m, c)) in f.terms().iter().enumerate() {
        let (negative, abs) = k.display(c);
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let unit = abs == "1";
        let mut parts = Vec::new();
        if !unit || m.is_one() {
            parts.push(abs);
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.vars()[v].clone()),
                _ => parts.push(format!("{}^{}", ring.vars()[v], e)),
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

/// Ideal file text that parses back to the same ideal.
pub fn format_ideal_file<C: Coeffs>(ideal: &Ideal<C>) -> String {
    let ring = ideal.ring();
    let mut out = String::new();
    let _ = writeln!(out, "ring {} : {};", ring.vars().join(", "), ring.order().name());
    let gens: Vec<String> = ideal.generators().iter().map(|g| format_poly(ring, g)).collect();
    let _ = writeln!(out, "ideal: {};", gens.join(", "));
    out
}
