//! Text input for potentials, relations and matrices.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | power)*     juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'x' | 'y' | 'w0'..'w6' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Each `x` or `y` is its own factor, so `xy^2` is `x·y²`. Products are
//! noncommutative and every square root lands in one shared tower.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::ncpoly::{basis, Gl2, Letter, NcPoly};
use crate::scalars::{FieldTower, RootContext, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Letter(Letter),
    Basis(usize),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            'x' => Some(Tok::Letter(Letter::X)),
            'y' => Some(Tok::Letter(Letter::Y)),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(src[start..i].parse().expect("digits")), start));
        } else if c == 'w' && i + 1 < b.len() && b[i + 1].is_ascii_digit() {
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = src[start + 1..i].parse().unwrap_or(usize::MAX);
            if k > 6 {
                return Err(parse_error(
                    start,
                    format!("unknown basis element {}", &src[start..i]),
                ));
            }
            out.push((Tok::Basis(k), start));
        } else if src[i..].starts_with("sqrt") {
            out.push((Tok::Sqrt, start));
            i += 4;
        } else {
            return Err(parse_error(start, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// A possibly inhomogeneous element, by degree, remembering where each
/// degree first appeared.
#[derive(Clone, Debug)]
struct Value {
    parts: BTreeMap<usize, (NcPoly, usize)>,
}

impl Value {
    fn scalar(s: Scalar, pos: usize) -> Value {
        Value::single(NcPoly::constant(s), pos)
    }

    fn single(p: NcPoly, pos: usize) -> Value {
        let mut parts = BTreeMap::new();
        parts.insert(p.degree(), (p, pos));
        Value { parts }
    }

    fn add(mut self, o: Value) -> Result<Value> {
        for (d, (p, pos)) in o.parts {
            match self.parts.remove(&d) {
                Some((q, qpos)) => {
                    self.parts.insert(d, (q.try_add(&p)?, qpos));
                }
                None => {
                    self.parts.insert(d, (p, pos));
                }
            }
        }
        Ok(self)
    }

    fn neg(self) -> Value {
        Value {
            parts: self
                .parts
                .into_iter()
                .map(|(d, (p, pos))| (d, (p.neg(), pos)))
                .collect(),
        }
    }

    fn mul(&self, o: &Value) -> Result<Value> {
        let mut out: Option<Value> = None;
        for (p, pos) in self.parts.values() {
            for (q, _) in o.parts.values() {
                let v = Value::single(try_mul(p, q)?, *pos);
                out = Some(match out {
                    Some(acc) => acc.add(v)?,
                    None => v,
                });
            }
        }
        Ok(out.expect("values are never empty"))
    }

    /// The scalar this value denotes, when it has degree 0 only.
    fn as_scalar(&self) -> Option<Scalar> {
        let mut nonzero = self.parts.iter().filter(|(_, (p, _))| !p.is_zero());
        match nonzero.next() {
            None => Some(Scalar::zero()),
            Some((0, (p, _))) if nonzero.next().is_none() => Some(p.coeffs()[0].clone()),
            _ => None,
        }
    }
}

fn try_mul(p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
    // the coefficient product panics on incompatible towers
    if let (Some(a), Some(b)) = (
        p.coeffs().iter().find(|c| !c.is_zero()),
        q.coeffs().iter().find(|c| !c.is_zero()),
    ) {
        a.tower().unify(b.tower())?;
    }
    Ok(p.mul(q))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    ctx: &'a mut RootContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            Err(parse_error(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    v = v.add(self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    v = v.add(self.term()?.neg())?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Letter(_) | Tok::Basis(_) | Tok::Sqrt | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Value> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    v = v.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    let s = d
                        .as_scalar()
                        .ok_or_else(|| parse_error(pos, "division by a non-scalar"))?;
                    let inv = s
                        .try_inv()
                        .map_err(|_| parse_error(pos, "division by zero"))?;
                    v = v.mul(&Value::scalar(inv, pos))?;
                }
                _ if self.starts_atom() => v = v.mul(&self.power()?)?,
                _ => return Ok(v),
            }
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let e = match self.peek() {
            Some(Tok::Num(n)) => {
                u32::try_from(n.clone()).map_err(|_| parse_error(pos, "exponent too large"))?
            }
            _ => return Err(parse_error(pos, "expected an integer exponent")),
        };
        self.at += 1;
        if e > 64 {
            return Err(parse_error(pos, "exponent too large"));
        }
        let mut acc = Value::scalar(Scalar::one(), pos);
        for _ in 0..e {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn atom(&mut self) -> Result<Value> {
        let pos = self.pos();
        let Some(t) = self.peek().cloned() else {
            return Err(parse_error(pos, "unexpected end of input"));
        };
        self.at += 1;
        match t {
            Tok::Num(n) => Ok(Value::scalar(
                Scalar::from_rational(Rational::from_integer(n)),
                pos,
            )),
            Tok::Letter(l) => Ok(Value::single(NcPoly::letter(l), pos)),
            Tok::Basis(k) => Ok(Value::single(basis(k), pos)),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            Tok::Sqrt => {
                self.expect(Tok::LParen, "'(' after sqrt")?;
                let inner = self.pos();
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                let r = v
                    .as_scalar()
                    .ok_or_else(|| parse_error(inner, "sqrt of a non-scalar"))?;
                if r.is_zero() {
                    return Ok(Value::scalar(Scalar::zero(), pos));
                }
                let s = self.ctx.sqrt(&r)?;
                Ok(Value::scalar(s, pos))
            }
            _ => Err(parse_error(
                pos,
                "expected a number, x, y, w0..w6, sqrt or '('",
            )),
        }
    }
}

/// Parses with roots adjoined into `ctx`.
pub struct Reader {
    ctx: RootContext,
}

impl Default for Reader {
    fn default() -> Self {
        Reader::new(FieldTower::rationals().limit())
    }
}

impl Reader {
    pub fn new(tower_depth: usize) -> Reader {
        Reader {
            ctx: RootContext::new(FieldTower::with_limit(tower_depth)),
        }
    }

    pub fn context(&self) -> &RootContext {
        &self.ctx
    }

    /// The shared context, for computations that should extend the same tower.
    pub fn context_mut(&mut self) -> &mut RootContext {
        &mut self.ctx
    }

    fn value(&mut self, src: &str) -> Result<Value> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            at: 0,
            end: src.len(),
            ctx: &mut self.ctx,
        };
        let v = p.expr()?;
        if p.at != p.toks.len() {
            return Err(parse_error(p.pos(), "unexpected trailing input"));
        }
        Ok(v)
    }

    pub fn homogeneous(&mut self, src: &str, degree: usize) -> Result<NcPoly> {
        let v = self.value(src)?;
        let mut out = NcPoly::zero(degree);
        for (d, (p, pos)) in v.parts {
            if p.is_zero() {
                continue;
            }
            if d != degree {
                return Err(Error::NonHomogeneous {
                    expected: degree,
                    found: d,
                    pos,
                });
            }
            out = out.try_add(&p)?;
        }
        Ok(out)
    }

    pub fn scalar(&mut self, src: &str) -> Result<Scalar> {
        Ok(self.homogeneous(src, 0)?.coeffs()[0].clone())
    }

    /// `[[a, b], [c, d]]`, read as [`Gl2::new`]`(a, b, c, d)`.
    pub fn matrix(&mut self, src: &str) -> Result<Gl2> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            at: 0,
            end: src.len(),
            ctx: &mut self.ctx,
        };
        let mut entries = Vec::new();
        p.expect(Tok::LBracket, "'['")?;
        for row in 0..2 {
            if row > 0 {
                p.expect(Tok::Comma, "','")?;
            }
            p.expect(Tok::LBracket, "'['")?;
            for col in 0..2 {
                if col > 0 {
                    p.expect(Tok::Comma, "','")?;
                }
                let pos = p.pos();
                let v = p.expr()?;
                entries.push(
                    v.as_scalar()
                        .ok_or_else(|| parse_error(pos, "matrix entries must be scalars"))?,
                );
            }
            p.expect(Tok::RBracket, "']'")?;
        }
        p.expect(Tok::RBracket, "']'")?;
        if p.at != p.toks.len() {
            return Err(parse_error(p.pos(), "unexpected trailing input"));
        }
        let [a, b, c, d]: [Scalar; 4] = entries.try_into().expect("four entries");
        for s in [&b, &c, &d] {
            a.tower().unify(s.tower())?;
        }
        Ok(Gl2::new(a, b, c, d))
    }
}

pub fn parse_potential(src: &str) -> Result<NcPoly> {
    Reader::default().homogeneous(src, 4)
}

pub fn parse_homogeneous(src: &str, degree: usize) -> Result<NcPoly> {
    Reader::default().homogeneous(src, degree)
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    Reader::default().scalar(src)
}

pub fn parse_matrix(src: &str) -> Result<Gl2> {
    Reader::default().matrix(src)
}
