//! Boundary densities f: Γ → ℍ(ℂ): built-in families and a small expression
//! language.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | primary ;
//! primary = number [ "i" ] | ident | func "(" expr ")" | "(" expr ")" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ident   = "x" | "y" | "i" | "i1" | "i2" | "i3" | "pi" ;
//! func    = "cos" | "sin" | "exp" | "log" | "abs" ;
//! ```
//!
//! `*` is the quaternion product in the written order and `a/b` is `a·b⁻¹`.
//! Functions accept scalar (complex) arguments only.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::geometry::Point2;
use crate::quat::CQuat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Cos,
    Sin,
    Exp,
    Log,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Cos => "cos",
            Func::Sin => "sin",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Abs => "abs",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "cos" => Func::Cos,
            "sin" => Func::Sin,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// Named leaves: the coordinates and the reserved constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    X,
    Y,
    I,
    I1,
    I2,
    I3,
    Pi,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::X => "x",
            Symbol::Y => "y",
            Symbol::I => "i",
            Symbol::I1 => "i1",
            Symbol::I2 => "i2",
            Symbol::I3 => "i3",
            Symbol::Pi => "pi",
        }
    }

    fn from_name(s: &str) -> Option<Symbol> {
        Some(match s {
            "x" => Symbol::X,
            "y" => Symbol::Y,
            "i" => Symbol::I,
            "i1" => Symbol::I1,
            "i2" => Symbol::I2,
            "i3" => Symbol::I3,
            "pi" => Symbol::Pi,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Literal(Complex64),
    Symbol(Symbol),
    Neg(Box<ExprNode>),
    Add(Box<ExprNode>, Box<ExprNode>),
    Sub(Box<ExprNode>, Box<ExprNode>),
    Mul(Box<ExprNode>, Box<ExprNode>),
    Div(Box<ExprNode>, Box<ExprNode>),
    Call(Func, Box<ExprNode>),
}

impl ExprNode {
    pub fn parse(text: &str) -> Result<ExprNode, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0, end: text.len() };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some((pos, tok)) => Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedToken(tok.to_string()) }),
        }
    }

    pub fn eval(&self, p: Point2) -> Result<CQuat> {
        Ok(match self {
            ExprNode::Literal(c) => CQuat::scalar(*c),
            ExprNode::Symbol(s) => match s {
                Symbol::X => CQuat::from_real([p.x, 0.0, 0.0, 0.0]),
                Symbol::Y => CQuat::from_real([p.y, 0.0, 0.0, 0.0]),
                Symbol::I => CQuat::IM,
                Symbol::I1 => CQuat::I1,
                Symbol::I2 => CQuat::I2,
                Symbol::I3 => CQuat::I3,
                Symbol::Pi => CQuat::from_real([PI, 0.0, 0.0, 0.0]),
            },
            ExprNode::Neg(a) => -a.eval(p)?,
            ExprNode::Add(a, b) => a.eval(p)? + b.eval(p)?,
            ExprNode::Sub(a, b) => a.eval(p)? - b.eval(p)?,
            ExprNode::Mul(a, b) => a.eval(p)? * b.eval(p)?,
            ExprNode::Div(a, b) => {
                let num = a.eval(p)?;
                let inv = b.eval(p)?.inverse().ok_or(Error::DivisionByZero { x: p.x, y: p.y })?;
                num * inv
            }
            ExprNode::Call(f, a) => {
                let v = a.eval(p)?;
                if !v.is_scalar() {
                    return Err(Error::NonScalarArgument { func: f.name(), x: p.x, y: p.y });
                }
                let z = v.a0;
                CQuat::scalar(match f {
                    Func::Cos => z.cos(),
                    Func::Sin => z.sin(),
                    Func::Exp => z.exp(),
                    Func::Log => {
                        if z.norm() == 0.0 {
                            return Err(Error::LogOfZero { x: p.x, y: p.y });
                        }
                        z.ln()
                    }
                    Func::Abs => Complex64::new(z.norm(), 0.0),
                })
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprNode::Add(..) | ExprNode::Sub(..) => 1,
            ExprNode::Mul(..) | ExprNode::Div(..) => 2,
            ExprNode::Neg(_) => 3,
            ExprNode::Literal(c) => {
                if c.re != 0.0 && c.im != 0.0 {
                    1
                } else if c.re.is_sign_negative() || c.im.is_sign_negative() {
                    3
                } else {
                    4
                }
            }
            ExprNode::Symbol(_) | ExprNode::Call(..) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            ExprNode::Literal(c) => write_literal(f, *c)?,
            ExprNode::Symbol(s) => f.write_str(s.name())?,
            ExprNode::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)?;
            }
            ExprNode::Add(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" + ")?;
                b.write_at(f, 2)?;
            }
            ExprNode::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" - ")?;
                b.write_at(f, 2)?;
            }
            ExprNode::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)?;
            }
            ExprNode::Div(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("/")?;
                b.write_at(f, 3)?;
            }
            ExprNode::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write_at(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_literal(f: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 {
        write!(f, "{}i", c.im)
    } else if c.im < 0.0 {
        write!(f, "{} - {}i", c.re, -c.im)
    } else {
        write!(f, "{} + {}i", c.re, c.im)
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64, bool),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(v, false) => write!(f, "{v}"),
            Token::Number(v, true) => write!(f, "{v}i"),
            Token::Ident(s) => f.write_str(s),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Star => f.write_str("*"),
            Token::Slash => f.write_str("/"),
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((i, Token::Plus)),
            b'-' => out.push((i, Token::Minus)),
            b'*' => out.push((i, Token::Star)),
            b'/' => out.push((i, Token::Slash)),
            b'(' => out.push((i, Token::LParen)),
            b')' => out.push((i, Token::RParen)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let v: f64 = lit.parse().map_err(|_| ParseError {
                    position: start,
                    kind: ParseErrorKind::BadNumber(lit.to_string()),
                })?;
                if !v.is_finite() {
                    return Err(ParseError { position: start, kind: ParseErrorKind::BadNumber(lit.to_string()) });
                }
                let imag = i < bytes.len()
                    && bytes[i] == b'i'
                    && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
                if imag {
                    i += 1;
                }
                out.push((start, Token::Number(v, imag)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(ParseError { position: i, kind: ParseErrorKind::UnexpectedChar(ch) });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Token)> {
        self.tokens.get(self.pos).map(|(p, t)| (*p, t))
    }

    fn next(&mut self) -> Result<(usize, Token), ParseError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or(ParseError { position: self.end, kind: ParseErrorKind::UnexpectedEnd })?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some((_, Token::Plus)) => {
                    self.pos += 1;
                    lhs = ExprNode::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some((_, Token::Minus)) => {
                    self.pos += 1;
                    lhs = ExprNode::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some((_, Token::Star)) => {
                    self.pos += 1;
                    lhs = ExprNode::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some((_, Token::Slash)) => {
                    self.pos += 1;
                    lhs = ExprNode::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprNode, ParseError> {
        if let Some((_, Token::Minus)) = self.peek() {
            self.pos += 1;
            return Ok(ExprNode::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<ExprNode, ParseError> {
        let (pos, tok) = self.next()?;
        match tok {
            Token::Number(v, false) => Ok(ExprNode::Literal(Complex64::new(v, 0.0))),
            Token::Number(v, true) => Ok(ExprNode::Literal(Complex64::new(0.0, v))),
            Token::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Token::Ident(name) => {
                if let Some(f) = Func::from_name(&name) {
                    match self.next()? {
                        (_, Token::LParen) => {}
                        (p, t) => {
                            return Err(ParseError { position: p, kind: ParseErrorKind::UnexpectedToken(t.to_string()) })
                        }
                    }
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(ExprNode::Call(f, Box::new(arg)))
                } else if let Some(s) = Symbol::from_name(&name) {
                    Ok(ExprNode::Symbol(s))
                } else {
                    Err(ParseError { position: pos, kind: ParseErrorKind::UnknownIdentifier(name) })
                }
            }
            t => Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedToken(t.to_string()) }),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            (_, Token::RParen) => Ok(()),
            (p, t) => Err(ParseError { position: p, kind: ParseErrorKind::UnexpectedToken(t.to_string()) }),
        }
    }
}

/// Built-in density families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// f ≡ q
    Constant(CQuat),
    /// cos kφ + sin kφ·i3 with φ the polar angle of the point.
    Fourier(i32),
    /// e^{ikφ}, scalar valued.
    ScalarFourier(i32),
    /// x·i1 + y·i2
    Coordinate,
}

impl Builtin {
    pub fn eval(&self, p: Point2) -> CQuat {
        match *self {
            Builtin::Constant(q) => q,
            Builtin::Fourier(k) => {
                let phi = k as f64 * p.y.atan2(p.x);
                CQuat::from_real([phi.cos(), 0.0, 0.0, phi.sin()])
            }
            Builtin::ScalarFourier(k) => {
                let phi = k as f64 * p.y.atan2(p.x);
                CQuat::scalar(Complex64::new(phi.cos(), phi.sin()))
            }
            Builtin::Coordinate => CQuat::from_plane(p.x, p.y),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Builtin(Builtin),
    Expr(ExprNode),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    source: Source,
    holder_hint: Option<f64>,
}

impl Density {
    pub fn builtin(b: Builtin) -> Self {
        Density { source: Source::Builtin(b), holder_hint: None }
    }

    pub fn constant(q: CQuat) -> Self {
        Density::builtin(Builtin::Constant(q))
    }

    pub fn fourier(k: i32) -> Self {
        Density::builtin(Builtin::Fourier(k))
    }

    pub fn scalar_fourier(k: i32) -> Self {
        Density::builtin(Builtin::ScalarFourier(k))
    }

    pub fn coordinate() -> Self {
        Density::builtin(Builtin::Coordinate)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Density { source: Source::Expr(ExprNode::parse(text)?), holder_hint: None })
    }

    /// Attaches a Hölder exponent μ ∈ (0, 1]. Metadata only.
    pub fn with_holder_hint(mut self, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidDensity(format!("Hölder exponent must lie in (0, 1], got {mu}")));
        }
        self.holder_hint = Some(mu);
        Ok(self)
    }

    pub fn holder_hint(&self) -> Option<f64> {
        self.holder_hint
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn eval(&self, p: Point2) -> Result<CQuat> {
        match &self.source {
            Source::Builtin(b) => Ok(b.eval(p)),
            Source::Expr(e) => e.eval(p),
        }
    }

    /// `true` when f is known to be constant, so that f(ζ) − f(t) vanishes.
    pub fn is_constant(&self) -> bool {
        matches!(self.source, Source::Builtin(Builtin::Constant(_)))
    }

    /// Short label such as `fourier(1)` or `expr(x*i1)`.
    pub fn label(&self) -> String {
        match &self.source {
            Source::Builtin(Builtin::Constant(q)) => {
                let c = q.components();
                let parts: Vec<String> = c.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
                format!("constant({})", parts.join(", "))
            }
            Source::Builtin(Builtin::Fourier(k)) => format!("fourier({k})"),
            Source::Builtin(Builtin::ScalarFourier(k)) => format!("scalar_fourier({k})"),
            Source::Builtin(Builtin::Coordinate) => "coordinate".to_string(),
            Source::Expr(e) => format!("expr({e})"),
        }
    }

    /// Max of |f| over the given points.
    pub fn sup_norm(&self, points: &[Point2]) -> Result<f64> {
        let mut m: f64 = 0.0;
        for p in points {
            m = m.max(self.eval(*p)?.norm());
        }
        Ok(m)
    }
}
