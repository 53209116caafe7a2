//! Equation parsing and canonical text formatting.
//!
//! Grammar (EBNF, also documented in the README):
//!
//! ```text
//! equation := expr [ "=" expr ]
//! expr     := term { ("+" | "-") term }
//! term     := unary { ("*" | "/") unary | unary }   (adjacency = multiplication)
//! unary    := ("+" | "-") unary | power
//! power    := atom [ "^" integer ]
//! atom     := number | variable | "(" expr ")"
//! ```
//!
//! Variables are either `x, y, z` or `x1..xn`; the two schemes cannot be
//! mixed. Division is only allowed by nonzero constant subexpressions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rat};

/// A validated implicit surface `F = 0` of total degree 1 or 2 with integer
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricSurface {
    f: Polynomial,
    nvars: usize,
}

impl QuadricSurface {
    /// Wrap a polynomial, clearing coefficient denominators. The sign and
    /// integer content are kept as given; use [`parse_surface`] for the fully
    /// normalized form.
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidConfig("surface polynomial is zero".into()));
        }
        let degree = f.total_degree();
        if degree == 0 {
            return Err(Error::InvalidConfig(
                "surface polynomial is a nonzero constant: empty surface".into(),
            ));
        }
        if degree > 2 {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in f.terms() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let cleared = f.scale(&Rat::from_integer(den_lcm));
        let nvars = cleared.nvars();
        Ok(QuadricSurface { f: cleared, nvars })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.f.total_degree()
    }

    /// Degree-1 input: the "region" degenerates to a single indexed point.
    pub fn is_plane(&self) -> bool {
        self.degree() == 1
    }

    /// Canonical text with default variable names.
    pub fn canonical_text(&self) -> String {
        self.f.to_string()
    }
}

impl fmt::Display for QuadricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.f)
    }
}

/// Horizontal positions of the parallel axes.
///
/// The default spacing places axis `i` at `i - 1`; alternative vectors reach
/// the other indexed sets and can restore a boundary when the default spacing
/// degenerates.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpacing {
    d: Vec<Rat>,
}

impl AxisSpacing {
    pub fn new(d: Vec<Rat>) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::DegenerateSpacing(
                "at least two axis positions are required".into(),
            ));
        }
        if d.iter().all(|v| *v == d[0]) {
            return Err(Error::DegenerateSpacing(
                "all axis positions are equal; the indexed point collapses".into(),
            ));
        }
        Ok(AxisSpacing { d })
    }

    /// The default unit spacing `0, 1, .., n-1`.
    pub fn default_for(nvars: usize) -> Self {
        AxisSpacing {
            d: (0..nvars)
                .map(|i| Rat::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.d
    }

    pub fn as_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.d
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Exact decimal-free text of each position, e.g. `["0", "1", "2"]`.
    pub fn texts(&self) -> Vec<String> {
        self.d.iter().map(rat_text).collect()
    }
}

impl Serialize for AxisSpacing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.texts().serialize(s)
    }
}

fn rat_text(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a comma-separated list of exact rationals like `0,1/2,3`.
pub fn parse_spacing(text: &str) -> Result<AxisSpacing> {
    let mut d = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let r: Rat = piece.parse().map_err(|_| Error::Syntax {
            pos: 0,
            msg: format!("invalid rational `{piece}` in spacing"),
        })?;
        d.push(r);
    }
    AxisSpacing::new(d)
}

/// Canonical text form of a polynomial under an explicit name table.
pub fn format_polynomial(p: &Polynomial, names: &[&str]) -> String {
    p.format_with(names)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            b'-' | 0xE2 if b == b'-' || text[i..].starts_with('\u{2212}') => {
                // ASCII minus or U+2212.
                let len = if b == b'-' { 1 } else { '\u{2212}'.len_utf8() };
                out.push((Token::Minus, i));
                i += len;
            }
            b'*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            b'/' => {
                out.push((Token::Slash, i));
                i += 1;
            }
            b'^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            b'=' => {
                out.push((Token::Equals, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                let mut seen_dot = false;
                while i < bytes.len()
                    && (bytes[i].is_ascii_digit() || (bytes[i] == b'.' && !seen_dot))
                {
                    if bytes[i] == b'.' {
                        seen_dot = true;
                    }
                    i += 1;
                }
                let s = &text[start..i];
                let value = parse_number(s).ok_or_else(|| Error::Syntax {
                    pos: start,
                    msg: format!("invalid number `{s}`"),
                })?;
                out.push((Token::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                // One letter plus any digits; a following letter starts a new
                // identifier so `xy` reads as x*y.
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!(
                        "unexpected character `{}`",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(out)
}

fn parse_number(s: &str) -> Option<Rat> {
    if let Some(dot) = s.find('.') {
        let int_part = &s[..dot];
        let frac_part = &s[dot + 1..];
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().ok()?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Rat::new(numer, denom))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum NamingScheme {
    Letters,
    Indexed,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    scheme: Option<NamingScheme>,
    max_index: usize,
    end: usize,
}

const SCRATCH_VARS: usize = 16;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn resolve_var(&mut self, name: &str, pos: usize) -> Result<usize> {
        let syntax = |msg: String| Error::Syntax { pos, msg };
        let (scheme, index) = match name {
            "x" => (NamingScheme::Letters, 0),
            "y" => (NamingScheme::Letters, 1),
            "z" => (NamingScheme::Letters, 2),
            _ => {
                let rest = name
                    .strip_prefix('x')
                    .ok_or_else(|| Error::UnknownVariable(name.into()))?;
                let idx: usize = rest
                    .parse()
                    .map_err(|_| Error::UnknownVariable(name.into()))?;
                if idx == 0 {
                    return Err(Error::UnknownVariable(name.into()));
                }
                if idx > SCRATCH_VARS {
                    return Err(syntax(format!(
                        "variable index {idx} exceeds the supported maximum {SCRATCH_VARS}"
                    )));
                }
                (NamingScheme::Indexed, idx - 1)
            }
        };
        match self.scheme {
            None => self.scheme = Some(scheme),
            Some(s) if s != scheme => return Err(Error::MixedNaming),
            _ => {}
        }
        self.max_index = self.max_index.max(index);
        Ok(index)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    let divisor = self.unary()?;
                    if !divisor.is_constant() {
                        return Err(Error::NonConstantDivisor);
                    }
                    let c = divisor.constant_term();
                    if c.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&c.recip());
                }
                // Adjacency: `4y^2`, `2(x+1)`, `x y`.
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(self.unary()?.negate())
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let negative = if self.peek() == Some(&Token::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let exp = match self.bump() {
                Some(Token::Num(n)) if n.denom().is_one() && !n.numer().is_negative() => {
                    use num_traits::ToPrimitive;
                    n.numer()
                        .to_u32()
                        .ok_or_else(|| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected a non-negative integer exponent after `^`")),
            };
            if negative {
                return Err(self.err("negative exponents are not polynomial"));
            }
            // A non-constant base raised this high can never stay within
            // degree 2; reject before expanding anything large.
            if !base.is_constant() && exp > 64 {
                return Err(Error::UnsupportedDegree(
                    base.total_degree().saturating_mul(exp),
                ));
            }
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Num(n)) => Ok(Polynomial::constant(SCRATCH_VARS, n)),
            Some(Token::Ident(name)) => {
                let idx = self.resolve_var(&name, pos)?;
                Ok(Polynomial::variable(SCRATCH_VARS, idx))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            other => Err(Error::Syntax {
                pos,
                msg: match other {
                    Some(t) => format!("unexpected token {t:?}"),
                    None => "unexpected end of input".into(),
                },
            }),
        }
    }
}

/// Parse an expression or equation into a raw polynomial (over a scratch
/// variable space) plus the discovered variable count.
fn parse_to_polynomial(text: &str) -> Result<(Polynomial, usize)> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        scheme: None,
        max_index: 0,
        end: text.len(),
    };
    let lhs = parser.expr()?;
    let f = match parser.peek() {
        Some(Token::Equals) => {
            parser.bump();
            let rhs = parser.expr()?;
            if parser.peek() == Some(&Token::Equals) {
                return Err(parser.err("more than one `=` in the equation"));
            }
            lhs.sub(&rhs)
        }
        None => lhs,
        Some(t) => return Err(parser.err(format!("unexpected token {t:?} after expression"))),
    };
    if parser.pos != parser.tokens.len() {
        return Err(parser.err("trailing input after expression"));
    }
    let nvars = match parser.scheme {
        Some(NamingScheme::Letters) => 3,
        Some(NamingScheme::Indexed) => parser.max_index.max(2) + 1,
        None => 3,
    };
    let map: Vec<usize> = (0..SCRATCH_VARS)
        .map(|i| i.min(nvars.saturating_sub(1)))
        .collect();
    // Unused high slots never occur, so the clamped map is safe.
    Ok((f.map_vars(nvars.max(1), &map[..]), nvars))
}

/// Parse an equation (or bare expression, read as `expr = 0`) into a
/// validated surface. `lhs = rhs` becomes `F = lhs - rhs`, denominators are
/// cleared, and the result is normalized to coprime integer coefficients with
/// a positive leading coefficient.
pub fn parse_surface(text: &str) -> Result<QuadricSurface> {
    let (f, nvars) = parse_to_polynomial(text)?;
    debug_assert_eq!(f.nvars(), nvars);
    if f.is_zero() {
        return Err(Error::InvalidConfig(
            "surface polynomial is zero: the equation is trivially satisfied".into(),
        ));
    }
    QuadricSurface::new(f.normalize())
}

/// Parse an expression into a plain polynomial with the same grammar and
/// variable rules as [`parse_surface`] (no equation, no normalization).
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let (f, _) = parse_to_polynomial(text)?;
    Ok(f)
}
