//! Expression syntax for functions, family values and parameters.
//!
//! ```text
//! expr    := expr ('+' | '-') expr | expr ('*' | '/') expr | '-' expr
//!          | expr '^' ['-'] INT | atom
//! atom    := INT | SYMBOL | 'poch' '(' expr ',' expr ',' ['-'] INT ')' | '(' expr ')'
//! ```
//!
//! Precedence, tightest first: `^`, unary `-`, `* /`, `+ -`. Binary
//! operators associate to the left. Numbers are integers; rationals are
//! written as quotients.

use std::fmt;

use num_bigint::BigInt;
use ratinterp::qseries::pochhammer_signed;
use ratinterp::{RatFun, Rational, Var};

use crate::error::CliError;

/// Plain symbols accepted besides the indexed `x_i`, `c_i`, `b_i`.
pub const SYMBOLS: [&str; 12] = ["x", "q", "p", "a", "b", "c", "d", "e", "u", "v", "beta", "z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Poch(Box<Expr>, Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            if chars.peek() == Some(&'.') {
                return Err(CliError::syntax(line, col, "decimals are not accepted; write a quotient like 1/3"));
            }
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l, col: c });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: l, col: c });
            continue;
        }
        if "+-*/^(),".contains(ch) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Op(ch), line: l, col: c });
            continue;
        }
        return Err(CliError::syntax(l, c, format!("unexpected character '{ch}'")));
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

fn check_symbol(name: &str) -> bool {
    if SYMBOLS.contains(&name) {
        return true;
    }
    match name.split_once('_') {
        Some(("x" | "c" | "b", idx)) => {
            !idx.is_empty() && !idx.starts_with('0') && idx.chars().all(|c| c.is_ascii_digit()) && idx.parse::<u32>().is_ok()
        }
        _ => false,
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const ADD: u8 = 1;
const MUL: u8 = 2;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, op: char) -> Result<(), CliError> {
        let t = self.next();
        if t.tok == Tok::Op(op) {
            Ok(())
        } else {
            Err(CliError::syntax(t.line, t.col, format!("expected '{op}'")))
        }
    }

    fn expr(&mut self, min: u8) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        loop {
            let prec = match self.peek().tok {
                Tok::Op('+') | Tok::Op('-') => ADD,
                Tok::Op('*') | Tok::Op('/') => MUL,
                _ => break,
            };
            if prec < min {
                break;
            }
            let Tok::Op(op) = self.next().tok else { unreachable!() };
            let rhs = self.expr(prec + 1)?;
            let (l, r) = (Box::new(lhs), Box::new(rhs));
            lhs = match op {
                '+' => Expr::Add(l, r),
                '-' => Expr::Sub(l, r),
                '*' => Expr::Mul(l, r),
                _ => Expr::Div(l, r),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.peek().tok == Tok::Op('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Op('^') {
            self.next();
            base = Expr::Pow(Box::new(base), self.int()?);
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.peek().tok == Tok::Op('-');
        if neg {
            self.next();
        }
        let t = self.next();
        match t.tok {
            Tok::Int(n) => {
                let v: i64 = n
                    .try_into()
                    .map_err(|_| CliError::syntax(t.line, t.col, "integer too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(CliError::syntax(t.line, t.col, "expected an integer")),
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(n)),
            Tok::Op('(') => {
                let e = self.expr(ADD)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "poch" => {
                self.expect('(')?;
                let a = self.expr(ADD)?;
                self.expect(',')?;
                let q = self.expr(ADD)?;
                self.expect(',')?;
                let n = self.int()?;
                self.expect(')')?;
                Ok(Expr::Poch(Box::new(a), Box::new(q), n))
            }
            Tok::Ident(name) => {
                if check_symbol(&name) {
                    Ok(Expr::Sym(name))
                } else {
                    Err(CliError::UnknownSymbol { name, line: t.line, col: t.col })
                }
            }
            Tok::End => Err(CliError::syntax(t.line, t.col, "unexpected end of input")),
            Tok::Op(c) => Err(CliError::syntax(t.line, t.col, format!("unexpected '{c}'"))),
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr(ADD)?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(CliError::syntax(t.line, t.col, "unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    pub fn symbol_var(name: &str) -> Var {
        if let Some((fam, idx)) = name.split_once('_') {
            let i: u32 = idx.parse().expect("validated by the parser");
            match fam {
                "x" => return Var::x(i),
                "c" => return Var::c(i),
                "b" => return Var::b(i),
                _ => {}
            }
        }
        Var::scalar(name)
    }

    /// Builds the rational function. The symbol `x` is the interpolation
    /// variable.
    pub fn to_ratfun(&self) -> Result<RatFun, CliError> {
        Ok(match self {
            Expr::Num(n) => RatFun::constant(Rational::from_integer(n.clone())),
            Expr::Sym(s) => RatFun::var(Self::symbol_var(s)),
            Expr::Neg(e) => -e.to_ratfun()?,
            Expr::Add(a, b) => &a.to_ratfun()? + &b.to_ratfun()?,
            Expr::Sub(a, b) => &a.to_ratfun()? - &b.to_ratfun()?,
            Expr::Mul(a, b) => &a.to_ratfun()? * &b.to_ratfun()?,
            Expr::Div(a, b) => a.to_ratfun()?.try_div(&b.to_ratfun()?)?,
            Expr::Pow(a, k) => {
                let k = i32::try_from(*k).map_err(|_| CliError::Usage(format!("exponent {k} too large")))?;
                a.to_ratfun()?.pow(k)?
            }
            Expr::Poch(a, q, n) => {
                let poly = |e: &Expr| -> Result<_, CliError> {
                    e.to_ratfun()?
                        .as_polynomial()
                        .cloned()
                        .ok_or_else(|| CliError::Usage(format!("poch arguments must be polynomials, got {e}")))
                };
                pochhammer_signed(&poly(a)?, &poly(q)?, *n)?
            }
        })
    }

    /// Evaluates to a rational constant.
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        let f = self.to_ratfun()?;
        f.as_constant().ok_or_else(|| CliError::Usage(format!("expected a rational number, got {self}")))
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            wrap(f, a, a.prec() < p)?;
            write!(f, " {op} ")?;
            wrap(f, b, b.prec() <= p)
        };
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, e.prec() < 3)
            }
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
            Expr::Div(a, b) => binary(f, a, "/", b, 2),
            Expr::Pow(a, k) => {
                wrap(f, a, a.prec() < 5)?;
                write!(f, "^{k}")
            }
            Expr::Poch(a, q, n) => write!(f, "poch({a}, {q}, {n})"),
        }
    }
}
