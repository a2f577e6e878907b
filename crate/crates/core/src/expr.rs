//! Text syntax for scalars and noncommutative polynomials.
//!
//! Grammar (multiplication needs an explicit `*`):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := number | rational | name | '(' expr ')'
//! ```
//!
//! A rational literal is `a/b` written without spaces. Names are `q`, `s`,
//! `i`, `lambda_{a,b}`, `mu_{a,b}`, `mu1_{a,b}`, `mu2_{a,b}`, `phi_{a,b}`,
//! `t_k`, `C[a,b,c,d]` and letters `v1`, `x2`, `y3`, `u1`, `w1`, `w*1`
//! (or `wbar1`), `t1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::freealg::{Gen, GenKind, NCPoly, Word};
use crate::scalars::{GaussianRational, Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("letter {0} is not available in the {1} alphabet")]
    Letter(String, &'static str),
    #[error("index {0} is not a configured label")]
    UnknownIndex(u32),
    #[error("cannot evaluate: {0}")]
    Eval(String),
}

/// Named scalar indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Name {
    Q,
    S,
    I,
    Var(Var),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Name(Name),
    Letter(Gen),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    /// Number of summands at the top level.
    pub fn top_level_terms(&self) -> usize {
        match self {
            Expr::Add(a, _) | Expr::Sub(a, _) => a.top_level_terms() + 1,
            _ => 1,
        }
    }

    /// True when some `y` letter carries a negative exponent.
    pub fn has_inverse_letter(&self) -> bool {
        match self {
            Expr::Pow(b, e) => (*e < 0 && matches!(**b, Expr::Letter(g) if g.kind == GenKind::Y)) || b.has_inverse_letter(),
            Expr::Neg(a) => a.has_inverse_letter(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_inverse_letter() || b.has_inverse_letter()
            }
            _ => false,
        }
    }

    pub fn letters(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Vec<Gen>) {
        match self {
            Expr::Letter(g) => out.push(*g),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_letters(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            _ => {}
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(r) if !r.is_integer() => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Name(n) => match n {
                Name::Q => write!(f, "q"),
                Name::S => write!(f, "s"),
                Name::I => write!(f, "i"),
                Name::Var(v) => write!(f, "{v}"),
            },
            Expr::Letter(g) => match g.kind {
                GenKind::YInv => write!(f, "y{}^-1", g.index),
                GenKind::WStar => write!(f, "w*{}", g.index),
                _ => write!(f, "{g}"),
            },
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Div(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " / ")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Rat(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, line: 1, col: 1, _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> ExprError {
        ExprError::Syntax { line, col, msg: msg.into() }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ExprError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                d if d.is_ascii_digit() => {
                    let n: BigInt = self.digits().parse().expect("digits");
                    if self.peek() == Some('/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                        let dc = self.col;
                        let d: BigInt = self.digits().parse().expect("digits");
                        if d.is_zero() {
                            return Err(self.err(line, dc, "zero denominator"));
                        }
                        Tok::Rat(BigRational::new(n, d))
                    } else {
                        Tok::Int(n)
                    }
                }
                a if a.is_ascii_alphabetic() => Tok::Ident(self.ident()?),
                other => return Err(self.err(line, col, format!("unexpected character '{other}'"))),
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }

    /// Identifier including index decorations such as `_{1,2}`, `[1,2,3,4]`
    /// and the `*` of `w*1`.
    fn ident(&mut self) -> Result<String, ExprError> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric()) {
            s.push(c);
            self.bump();
        }
        if s == "w" && self.peek() == Some('*') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            s.push('*');
            s.push_str(&self.digits());
            return Ok(s);
        }
        let close = match self.peek() {
            Some('_') => {
                s.push('_');
                self.bump();
                if self.peek() == Some('{') {
                    Some('}')
                } else {
                    s.push_str(&self.digits());
                    None
                }
            }
            Some('[') => Some(']'),
            _ => None,
        };
        if let Some(close) = close {
            let (line, col) = (self.line, self.col);
            let open = self.bump().expect("peeked");
            s.push(open);
            loop {
                match self.bump() {
                    Some(c) if c == close => {
                        s.push(c);
                        break;
                    }
                    Some(c) if c.is_ascii_digit() || c == ',' => s.push(c),
                    Some(c) if c.is_whitespace() => {}
                    _ => return Err(self.err(line, col, format!("unterminated index list in {s}"))),
                }
            }
        }
        Ok(s)
    }
}

fn index_list(s: &str, open: char, close: char) -> Option<Vec<u32>> {
    let inner = s.strip_prefix(open)?.strip_suffix(close)?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

fn name_to_atom(id: &str) -> Option<Expr> {
    match id {
        "q" => return Some(Expr::Name(Name::Q)),
        "s" => return Some(Expr::Name(Name::S)),
        "i" => return Some(Expr::Name(Name::I)),
        _ => {}
    }
    if let Some(rest) = id.strip_prefix("C") {
        if rest.starts_with('[') {
            let l = index_list(rest, '[', ']')?;
            if l.len() != 4 {
                return None;
            }
            let name = format!("C[{},{},{},{}]", l[0], l[1], l[2], l[3]);
            return Some(Expr::Name(Name::Var(Var::sym(&name))));
        }
    }
    if let Some((head, rest)) = id.split_once('_') {
        if head == "t" {
            return rest.parse().ok().map(|k| Expr::Name(Name::Var(Var::T(k))));
        }
        let l = index_list(rest, '{', '}')?;
        if l.len() != 2 {
            return None;
        }
        let (a, b) = (l[0], l[1]);
        let v = match head {
            "lambda" => Var::Lambda(a, b),
            "mu" => Var::Mu(a, b),
            "mu1" => Var::Mu1(a, b),
            "mu2" => Var::Mu2(a, b),
            "phi" => Var::Phi(a, b),
            _ => return None,
        };
        return Some(Expr::Name(Name::Var(v)));
    }
    let (kind, digits) = if let Some(d) = id.strip_prefix("wbar") {
        (GenKind::WStar, d)
    } else if let Some(d) = id.strip_prefix("w*") {
        (GenKind::WStar, d)
    } else {
        let mut it = id.chars();
        let k = match it.next()? {
            'v' => GenKind::V,
            'x' => GenKind::X,
            'y' => GenKind::Y,
            'u' => GenKind::U,
            'w' => GenKind::W,
            't' => GenKind::T,
            _ => return None,
        };
        (k, it.as_str())
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(Expr::Letter(Gen::new(kind, digits.parse().ok()?)))
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> ExprError {
        let (line, col) = self.here();
        ExprError::Syntax { line, col, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Int(_) | Tok::Rat(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(self.err("missing '*' between factors"));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e = n.to_i64().filter(|e| e.abs() <= 1 << 20).ok_or_else(|| self.err("exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => Err(self.err("expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        let out = match tok {
            Tok::Int(n) => Expr::Num(BigRational::from_integer(n)),
            Tok::Rat(r) => Expr::Num(r),
            Tok::Ident(id) => name_to_atom(&id).ok_or_else(|| self.err(format!("unknown name '{id}'")))?,
            Tok::LParen => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                e
            }
            _ => return Err(self.err("expected a number, name or '('")),
        };
        self.pos += 1;
        Ok(out)
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let lexer = Lexer::new(text);
    let toks = lexer.tokens()?;
    let end = text.lines().enumerate().last().map(|(n, l)| (n + 1, l.chars().count() + 1)).unwrap_or((1, 1));
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token"));
    }
    Ok(e)
}

/// Which letters an expression may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// `v`, `u`, `w`, `w*`, `t`.
    Point,
    /// `x`, `y`, `y^-1`.
    Coordinates,
    /// No letters; `t_k` and `t1` both denote scalar indeterminates.
    Scalar,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Point => "point",
            Alphabet::Coordinates => "coordinate",
            Alphabet::Scalar => "scalar",
        }
    }

    fn allows(self, k: GenKind) -> bool {
        match self {
            Alphabet::Point => matches!(k, GenKind::V | GenKind::U | GenKind::W | GenKind::WStar | GenKind::T),
            Alphabet::Coordinates => matches!(k, GenKind::X | GenKind::Y | GenKind::YInv),
            Alphabet::Scalar => false,
        }
    }
}

/// Alphabet and admissible labels for evaluation.
#[derive(Clone, Debug)]
pub struct Context {
    pub alphabet: Alphabet,
    pub labels: Option<Vec<u32>>,
}

impl Context {
    pub fn new(alphabet: Alphabet, labels: Option<Vec<u32>>) -> Self {
        Context { alphabet, labels }
    }

    pub fn scalar() -> Self {
        Context::new(Alphabet::Scalar, None)
    }

    pub fn check(&self, e: &Expr) -> Result<(), ExprError> {
        for g in e.letters() {
            if self.alphabet == Alphabet::Scalar && g.kind == GenKind::T {
                continue;
            }
            if !self.alphabet.allows(g.kind) {
                return Err(ExprError::Letter(Expr::Letter(g).to_string(), self.alphabet.name()));
            }
            if let Some(l) = &self.labels {
                if !l.contains(&g.index) {
                    return Err(ExprError::UnknownIndex(g.index));
                }
            }
        }
        Ok(())
    }
}

fn rat_scalar(r: &BigRational) -> Scalar {
    Scalar::from_gauss(GaussianRational::new(r.clone(), BigRational::zero()))
}

fn name_scalar(n: &Name) -> Scalar {
    match n {
        Name::Q => Scalar::q(),
        Name::S => Scalar::s(),
        Name::I => Scalar::imag_unit(),
        Name::Var(v) => Scalar::var(*v),
    }
}

/// Evaluates to a noncommutative polynomial over the scalar field.
pub fn eval_poly(e: &Expr, ctx: &Context) -> Result<NCPoly, ExprError> {
    ctx.check(e)?;
    eval_inner(e, ctx)
}

fn eval_inner(e: &Expr, ctx: &Context) -> Result<NCPoly, ExprError> {
    Ok(match e {
        Expr::Num(r) => NCPoly::constant(rat_scalar(r)),
        Expr::Name(n) => NCPoly::constant(name_scalar(n)),
        Expr::Letter(g) => {
            if ctx.alphabet == Alphabet::Scalar && g.kind == GenKind::T {
                NCPoly::constant(Scalar::t(g.index))
            } else {
                NCPoly::gen(*g)
            }
        }
        Expr::Neg(a) => eval_inner(a, ctx)?.neg(),
        Expr::Add(a, b) => eval_inner(a, ctx)?.add(&eval_inner(b, ctx)?),
        Expr::Sub(a, b) => eval_inner(a, ctx)?.sub(&eval_inner(b, ctx)?),
        Expr::Mul(a, b) => eval_inner(a, ctx)?.mul(&eval_inner(b, ctx)?),
        Expr::Div(a, b) => {
            let d = eval_inner(b, ctx)?;
            let c = as_scalar(&d).ok_or_else(|| ExprError::Eval(format!("division by non-scalar {b}")))?;
            let ci = c.try_inv().map_err(|_| ExprError::Eval(format!("division by zero in {e}")))?;
            eval_inner(a, ctx)?.scale(&ci)
        }
        Expr::Pow(a, n) => {
            if *n >= 0 {
                eval_inner(a, ctx)?.pow(*n as u32)
            } else if let Expr::Letter(g) = **a {
                if g.kind != GenKind::Y || ctx.alphabet != Alphabet::Coordinates {
                    return Err(ExprError::Eval(format!("negative power of letter {}", Expr::Letter(g))));
                }
                NCPoly::monomial(&vec![Gen::y_inv(g.index); n.unsigned_abs() as usize])
            } else {
                let b = eval_inner(a, ctx)?;
                let c = as_scalar(&b).ok_or_else(|| ExprError::Eval(format!("negative power of non-scalar {a}")))?;
                let ci = c.try_inv().map_err(|_| ExprError::Eval(format!("inverse of zero in {e}")))?;
                NCPoly::constant(ci.pow(n.unsigned_abs() as u32))
            }
        }
    })
}

fn as_scalar(p: &NCPoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    (p.len() == 1 && p.terms().keys().all(Word::is_empty)).then(|| p.constant_term())
}

/// Evaluates an expression without letters.
pub fn eval_scalar(e: &Expr) -> Result<Scalar, ExprError> {
    let p = eval_poly(e, &Context::scalar())?;
    as_scalar(&p).ok_or_else(|| ExprError::Eval(format!("{e} is not a scalar")))
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ExprError> {
    eval_scalar(&parse_expr(text)?)
}

pub fn parse_poly(text: &str, ctx: &Context) -> Result<NCPoly, ExprError> {
    eval_poly(&parse_expr(text)?, ctx)
}

/// Builds an expression tree from a rational number, for generators and tests.
pub fn num(n: i64, d: i64) -> Expr {
    let r = BigRational::new(n.into(), d.into());
    if r.is_negative() {
        Expr::Neg(Box::new(Expr::Num(-r)))
    } else {
        Expr::Num(r)
    }
}

/// True for `1`, used by printers that drop unit coefficients.
pub fn is_unit(e: &Expr) -> bool {
    matches!(e, Expr::Num(r) if r.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_terms() {
        let e = parse_expr("v2*v1 - q^2*v1*v2 - (1-q^2)*v1^2").unwrap();
        assert_eq!(e.top_level_terms(), 3);
    }

    #[test]
    fn inverse_letter() {
        let e = parse_expr("y1^-1*x1").unwrap();
        assert!(e.has_inverse_letter());
        let p = eval_poly(&e, &Context::new(Alphabet::Coordinates, None)).unwrap();
        assert_eq!(p, NCPoly::monomial(&[Gen::y_inv(1), Gen::x(1)]));
    }

    #[test]
    fn juxtaposition_rejected() {
        match parse_expr("v2 v1") {
            Err(ExprError::Syntax { line: 1, col: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_literal_and_division() {
        assert_eq!(parse_scalar("3/4").unwrap(), Scalar::from_ratio(3, 4));
        assert_eq!(parse_scalar("1 / q").unwrap(), Scalar::q().inv());
        assert_eq!(parse_scalar("lambda_{1,2}").unwrap(), Scalar::lambda(1, 2));
    }

    #[test]
    fn wrong_alphabet() {
        let ctx = Context::new(Alphabet::Point, Some(vec![1, 2]));
        assert!(matches!(parse_poly("x1", &ctx), Err(ExprError::Letter(..))));
        assert!(matches!(parse_poly("v3", &ctx), Err(ExprError::UnknownIndex(3))));
    }
}
