//! Polynomial literals: `c*x^e*y^f + ...`, with `-`, parentheses, and
//! implicit multiplication (`2x`). Exponents must be non-negative integers.

use std::sync::Arc;

use super::field::CoeffRing;
use super::poly::MultiPoly;
use super::PolyError;

const MAX_EXPONENT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' | '\u{2212}' => out.push((start, Tok::Minus)),
            '*' | '\u{b7}' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit
                    .parse::<i64>()
                    .map_err(|_| PolyError::Parse { pos: start, msg: format!("integer literal {lit} out of range") })?;
                out.push((start, Tok::Num(v)));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(PolyError::Parse { pos: start, msg: format!("unexpected character {other:?}") }),
        }
        i += 1;
    }
    Ok(out)
}

/// Semantic actions for the literal grammar, so that polynomials and chart
/// elements share one parser.
pub trait ExprBuilder {
    type Out: Clone;
    fn constant(&self, v: i64) -> Self::Out;
    fn ident(&self, name: &str) -> Result<Self::Out, PolyError>;
    fn add(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn sub(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn mul(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn neg(&self, a: &Self::Out) -> Self::Out;
    /// `a^e`; `pos` locates the exponent for error messages.
    fn pow(&self, a: &Self::Out, e: i64, pos: usize) -> Result<Self::Out, PolyError>;
}

struct PolyBuilder<'a, R: CoeffRing> {
    ring: &'a R,
    vars: &'a Arc<[String]>,
}

impl<R: CoeffRing> ExprBuilder for PolyBuilder<'_, R> {
    type Out = MultiPoly<R>;

    fn constant(&self, v: i64) -> MultiPoly<R> {
        MultiPoly::constant(self.ring.clone(), self.vars.clone(), self.ring.from_i64(v))
    }
    fn ident(&self, name: &str) -> Result<MultiPoly<R>, PolyError> {
        MultiPoly::var_named(self.ring.clone(), self.vars.clone(), name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
    fn add(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.add(b)
    }
    fn sub(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.sub(b)
    }
    fn mul(&self, a: &MultiPoly<R>, b: &MultiPoly<R>) -> MultiPoly<R> {
        a.mul(b)
    }
    fn neg(&self, a: &MultiPoly<R>) -> MultiPoly<R> {
        a.neg()
    }
    fn pow(&self, a: &MultiPoly<R>, e: i64, pos: usize) -> Result<MultiPoly<R>, PolyError> {
        if e < 0 {
            return Err(PolyError::NegativeExponent { pos });
        }
        Ok(a.pow(e as u64))
    }
}

struct Parser<'a, B: ExprBuilder> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    b: &'a B,
    end: usize,
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.offset(), msg: msg.into() }
    }

    fn expr(&mut self) -> Result<B::Out, PolyError> {
        let mut acc: Option<B::Out> = None;
        let mut sign = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = Some(match (acc, sign) {
                (None, false) => t,
                (None, true) => self.b.neg(&t),
                (Some(a), false) => self.b.add(&a, &t),
                (Some(a), true) => self.b.sub(&a, &t),
            });
            match self.peek() {
                Some(Tok::Plus) => sign = false,
                Some(Tok::Minus) => sign = true,
                _ => return Ok(acc.expect("at least one term")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<B::Out, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.b.mul(&acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = self.b.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, PolyError> {
        let pos = self.offset();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek().cloned() {
            Some(Tok::Num(e)) => e,
            _ => return Err(self.err("expected exponent")),
        };
        self.pos += 1;
        if e as u64 > MAX_EXPONENT {
            return Err(PolyError::Parse { pos, msg: format!("exponent {e} too large") });
        }
        Ok(if neg { -e } else { e })
    }

    fn power(&mut self) -> Result<B::Out, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let pos = self.offset();
        let e = if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let e = self.exponent()?;
            if self.peek() != Some(&Tok::RParen) {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            e
        } else {
            self.exponent()?
        };
        self.b.pow(&base, e, pos)
    }

    fn atom(&mut self) -> Result<B::Out, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(self.b.constant(v))
            }
            Some(Tok::Ident(name)) => {
                let p = self.b.ident(&name)?;
                self.pos += 1;
                Ok(p)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                let f = self.power()?;
                Ok(self.b.neg(&f))
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a literal with custom semantic actions.
pub fn parse_with<B: ExprBuilder>(builder: &B, s: &str) -> Result<B::Out, PolyError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, b: builder, end: s.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse a polynomial over the given variables.
pub fn parse_poly<R: CoeffRing>(ring: R, vars: Arc<[String]>, s: &str) -> Result<MultiPoly<R>, PolyError> {
    parse_with(&PolyBuilder { ring: &ring, vars: &vars }, s)
}

/// Identifiers in `s`, ordered by alphabetic prefix and then numeric suffix.
pub fn identifiers(s: &str) -> Result<Vec<String>, PolyError> {
    let mut names: Vec<String> = lex(s)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(n) => Some(n),
            _ => None,
        })
        .collect();
    names.sort_by_key(|a| natural_key(a));
    names.dedup();
    Ok(names)
}

fn natural_key(s: &str) -> (String, u64, String) {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (head, tail) = s.split_at(split);
    let num = tail.parse::<u64>().unwrap_or(u64::MAX);
    (head.to_string(), num, tail.to_string())
}

/// Parse with variables inferred from the literal itself.
pub fn parse_poly_infer<R: CoeffRing>(ring: R, s: &str) -> Result<MultiPoly<R>, PolyError> {
    let vars: Arc<[String]> = identifiers(s)?.into();
    parse_poly(ring, vars, s)
}
