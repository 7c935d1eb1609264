//! Surface syntax for germs, vector fields, multipliers and matrices.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint | var | 'i' | 'zeta(' uint ')' | 'exp(' ['-'] 'i*pi' ['*' uint] ['/' uint] ')'
//!         | 'rad(' uint ',' uint ['/' uint] ')' | '(' expr (',' expr)* ')'
//! var    := 'z' | 'zbar' | 'x' | 'y' | 'w' | 'x' uint
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeff::Rational;

/// Abstract syntax of a germ expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    /// The imaginary unit.
    I,
    /// The primitive root e^{2πi/k}.
    Zeta(u32),
    /// e^{iπr}.
    ExpIPi(Rational),
    /// The positive real b-th root of μ.
    Rad(u32, Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tuple(Vec<Expr>),
}

/// A parsed input, as produced by [`parse_germ`].
pub type GermExpression = Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn is_variable(name: &str) -> bool {
    matches!(name, "z" | "zbar" | "x" | "y" | "w")
        || name
            .strip_prefix('x')
            .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(u8),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    peeked: Option<(usize, Tok, usize)>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            peeked: None,
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    /// Next token as (start offset, token, end offset); `None` at end.
    fn lex(&self, mut pos: usize) -> PResult<Option<(usize, Tok, usize)>> {
        while pos < self.src.len() && self.src[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let Some(&c) = self.src.get(pos) else {
            return Ok(None);
        };
        let start = pos;
        if c.is_ascii_digit() {
            while pos < self.src.len() && self.src[pos].is_ascii_digit() {
                pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..pos]).expect("ascii digits");
            return Ok(Some((start, Tok::Num(text.parse().expect("digits")), pos)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while pos < self.src.len() && (self.src[pos].is_ascii_alphanumeric() || self.src[pos] == b'_') {
                pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..pos]).expect("ascii ident");
            return Ok(Some((start, Tok::Ident(text.to_string()), pos)));
        }
        if b"+-*/^(),".contains(&c) {
            return Ok(Some((start, Tok::Sym(c), pos + 1)));
        }
        let ch = std::str::from_utf8(&self.src[start..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?');
        self.err(start, format!("unexpected character '{ch}'"))
    }

    fn peek(&mut self) -> PResult<Option<&Tok>> {
        if self.peeked.is_none() {
            self.peeked = self.lex(self.pos)?;
        }
        Ok(self.peeked.as_ref().map(|(_, t, _)| t))
    }

    fn offset(&mut self) -> usize {
        let _ = self.peek();
        match &self.peeked {
            Some((s, _, _)) => *s,
            None => self.src.len(),
        }
    }

    fn next(&mut self) -> PResult<Option<(usize, Tok)>> {
        self.peek()?;
        Ok(self.peeked.take().map(|(s, t, e)| {
            self.pos = e;
            (s, t)
        }))
    }

    fn eat_sym(&mut self, c: u8) -> PResult<bool> {
        if self.peek()? == Some(&Tok::Sym(c)) {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect_sym(&mut self, c: u8) -> PResult<()> {
        let at = self.offset();
        if self.eat_sym(c)? {
            Ok(())
        } else {
            self.err(at, format!("expected '{}'", c as char))
        }
    }

    fn expect_ident(&mut self, name: &str) -> PResult<()> {
        let at = self.offset();
        match self.next()? {
            Some((_, Tok::Ident(s))) if s == name => Ok(()),
            _ => self.err(at, format!("expected '{name}'")),
        }
    }

    fn uint(&mut self) -> PResult<BigInt> {
        let at = self.offset();
        match self.next()? {
            Some((_, Tok::Num(n))) => Ok(n),
            _ => self.err(at, "expected an unsigned integer"),
        }
    }

    fn small_uint(&mut self, what: &str, min: u32) -> PResult<u32> {
        let at = self.offset();
        let n = self.uint()?;
        match u32::try_from(&n) {
            Ok(v) if v >= min => Ok(v),
            _ => self.err(at, format!("{what} must be an integer in {min}..=4294967295")),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym(b'+')? {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym(b'-')? {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym(b'*')? {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym(b'/')? {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym(b'-')? {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym(b'^')? {
            let e = self.small_uint("exponent", 0)?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let at = self.offset();
        match self.next()? {
            Some((_, Tok::Num(n))) => Ok(Expr::Int(n)),
            Some((_, Tok::Sym(b'('))) => {
                let mut items = vec![self.expr()?];
                while self.eat_sym(b',')? {
                    items.push(self.expr()?);
                }
                self.expect_sym(b')')?;
                Ok(if items.len() == 1 {
                    items.pop().expect("one item")
                } else {
                    Expr::Tuple(items)
                })
            }
            Some((_, Tok::Ident(name))) => self.ident(at, name),
            Some((_, Tok::Sym(c))) => self.err(at, format!("unexpected '{}'", c as char)),
            None => self.err(at, "unexpected end of input"),
        }
    }

    fn ident(&mut self, at: usize, name: String) -> PResult<Expr> {
        match name.as_str() {
            "i" => Ok(Expr::I),
            "zeta" => {
                self.expect_sym(b'(')?;
                let k = self.small_uint("zeta order", 1)?;
                self.expect_sym(b')')?;
                Ok(Expr::Zeta(k))
            }
            "exp" => {
                self.expect_sym(b'(')?;
                let negative = self.eat_sym(b'-')?;
                self.expect_ident("i")?;
                self.expect_sym(b'*')?;
                self.expect_ident("pi")?;
                let mut p = BigInt::one();
                let mut q = BigInt::one();
                if self.eat_sym(b'*')? {
                    p = self.uint()?;
                }
                if self.eat_sym(b'/')? {
                    let at = self.offset();
                    q = self.uint()?;
                    if q.is_zero() {
                        return self.err(at, "zero denominator");
                    }
                }
                self.expect_sym(b')')?;
                let r = Rational::new(if negative { -p } else { p }, q);
                Ok(Expr::ExpIPi(r))
            }
            "rad" => {
                self.expect_sym(b'(')?;
                let b = self.small_uint("radical index", 1)?;
                self.expect_sym(b',')?;
                let at = self.offset();
                let p = self.uint()?;
                let q = if self.eat_sym(b'/')? { self.uint()? } else { BigInt::one() };
                if p.is_zero() || q.is_zero() {
                    return self.err(at, "radicand must be a positive rational");
                }
                self.expect_sym(b')')?;
                Ok(Expr::Rad(b, Rational::new(p, q)))
            }
            _ if is_variable(&name) => Ok(Expr::Var(name)),
            _ => self.err(at, format!("unknown identifier '{name}'")),
        }
    }
}

/// Parses germ text into an expression tree.
pub fn parse_germ(input: &str) -> Result<GermExpression, ParseError> {
    let mut p = Parser::new(input);
    let e = p.expr()?;
    let at = p.offset();
    if p.next()?.is_some() {
        return p.err(at, "unexpected trailing input");
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn child(e: &Expr, min: u8, out: &mut String) {
    if prec(e) < min {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Var(v) => out.push_str(v),
        Expr::I => out.push('i'),
        Expr::Zeta(k) => out.push_str(&format!("zeta({k})")),
        Expr::ExpIPi(r) => {
            out.push_str(if r.is_negative() { "exp(-i*pi" } else { "exp(i*pi" });
            let p = r.numer().abs();
            if !p.is_one() {
                out.push_str(&format!("*{p}"));
            }
            if !r.denom().is_one() {
                out.push_str(&format!("/{}", r.denom()));
            }
            out.push(')');
        }
        Expr::Rad(b, mu) => out.push_str(&format!("rad({b},{})", crate::coeff::rational::render(mu))),
        Expr::Neg(a) => {
            out.push('-');
            child(a, 3, out);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            child(a, 1, out);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            child(b, 2, out);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            child(a, 2, out);
            out.push(if matches!(e, Expr::Mul(..)) { '*' } else { '/' });
            child(b, 3, out);
        }
        Expr::Pow(a, n) => {
            child(a, 5, out);
            out.push_str(&format!("^{n}"));
        }
        Expr::Tuple(items) => {
            out.push('(');
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(it, out);
            }
            out.push(')');
        }
    }
}

/// Text form that parses back to the same tree.
pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
