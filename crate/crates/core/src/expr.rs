//! A small LL(1) expression language for forms and chain maps.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' atom)*
//! atom  := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//! ```
//!
//! In form mode `^` is the wedge product and identifiers are `x1.. y1.. t`,
//! `dx1.. dy1.. dt theta` (plus `x y dx dy` when `n = 1`). In map mode `^` is a
//! power with a non-negative integer exponent, identifiers are `u1..uk`, and
//! `sin cos exp sqrt` are available. Numbers may be integers or decimals and
//! are read exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::heis::{Monomial, MultiCovector};
use crate::poly::Polynomial;
use crate::Q;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() || c == '.' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let value = parse_decimal(&text)
                .ok_or_else(|| parse_error(start.0, start.1, format!("malformed number `{text}`")))?;
            out.push(Token {
                tok: Tok::Num(value),
                line: start.0,
                column: start.1,
            });
            col += j - i;
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[i..j].iter().collect()),
                line: start.0,
                column: start.1,
            });
            col += j - i;
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                line,
                column: col,
            });
            i += 1;
            col += 1;
        } else {
            return Err(parse_error(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

/// Exact value of a decimal literal such as `12`, `0.25` or `3.`.
fn parse_decimal(text: &str) -> Option<Q> {
    let mut parts = text.split('.');
    let int = parts.next()?;
    let frac = parts.next().unwrap_or("");
    if parts.next().is_some() || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(Q::new(num, den))
}

/// Unary functions available in map mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }
}

/// A scalar expression in parameters `u₁..u_k`.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarExpr {
    Const(Q),
    Var(usize),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Neg(Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, u32),
    Call(Func, Box<ScalarExpr>),
}

use ScalarExpr as S;

// Smart constructors that fold constants; not operator impls.
#[allow(clippy::should_implement_trait)]
impl ScalarExpr {
    pub fn constant(c: Q) -> Self {
        S::Const(c)
    }

    fn as_const(&self) -> Option<&Q> {
        match self {
            S::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn add(a: S, b: S) -> S {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => S::Const(x + y),
            (Some(x), _) if x.is_zero() => b,
            (_, Some(y)) if y.is_zero() => a,
            _ => S::Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sub(a: S, b: S) -> S {
        S::add(a, S::neg(b))
    }

    pub fn neg(a: S) -> S {
        match a {
            S::Const(c) => S::Const(-c),
            S::Neg(inner) => *inner,
            other => S::Neg(Box::new(other)),
        }
    }

    pub fn mul(a: S, b: S) -> S {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => S::Const(x * y),
            (Some(x), _) | (_, Some(x)) if x.is_zero() => S::Const(Q::zero()),
            (Some(x), _) if x.is_one() => b,
            (_, Some(y)) if y.is_one() => a,
            _ => S::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn div(a: S, b: S) -> S {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if !y.is_zero() => S::Const(x / y),
            (Some(x), _) if x.is_zero() => S::Const(Q::zero()),
            (_, Some(y)) if y.is_one() => a,
            _ => S::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(a: S, k: u32) -> S {
        match (&a, k) {
            (_, 0) => S::Const(Q::one()),
            (_, 1) => a,
            (S::Const(c), _) => S::Const(num_traits::pow(c.clone(), k as usize)),
            _ => S::Pow(Box::new(a), k),
        }
    }

    pub fn call(f: Func, a: S) -> S {
        S::Call(f, Box::new(a))
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        match self {
            S::Const(c) => crate::to_f64(c),
            S::Var(i) => u[*i],
            S::Add(a, b) => a.eval(u) + b.eval(u),
            S::Mul(a, b) => a.eval(u) * b.eval(u),
            S::Div(a, b) => a.eval(u) / b.eval(u),
            S::Neg(a) => -a.eval(u),
            S::Pow(a, k) => a.eval(u).powi(*k as i32),
            S::Call(f, a) => {
                let v = a.eval(u);
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        }
    }

    /// Symbolic partial derivative in `u_i` (0-based).
    pub fn derivative(&self, i: usize) -> S {
        match self {
            S::Const(_) => S::Const(Q::zero()),
            S::Var(j) => S::Const(if *j == i { Q::one() } else { Q::zero() }),
            S::Add(a, b) => S::add(a.derivative(i), b.derivative(i)),
            S::Mul(a, b) => S::add(
                S::mul(a.derivative(i), (**b).clone()),
                S::mul((**a).clone(), b.derivative(i)),
            ),
            S::Div(a, b) => S::div(
                S::sub(
                    S::mul(a.derivative(i), (**b).clone()),
                    S::mul((**a).clone(), b.derivative(i)),
                ),
                S::pow((**b).clone(), 2),
            ),
            S::Neg(a) => S::neg(a.derivative(i)),
            S::Pow(a, k) => S::mul(
                S::mul(
                    S::Const(Q::from_integer(BigInt::from(*k))),
                    S::pow((**a).clone(), k - 1),
                ),
                a.derivative(i),
            ),
            S::Call(f, a) => {
                let inner = a.derivative(i);
                let outer = match f {
                    Func::Sin => S::call(Func::Cos, (**a).clone()),
                    Func::Cos => S::neg(S::call(Func::Sin, (**a).clone())),
                    Func::Exp => self.clone(),
                    Func::Sqrt => S::div(S::Const(Q::new(1.into(), 2.into())), self.clone()),
                };
                S::mul(outer, inner)
            }
        }
    }

    /// Replaces `u_i` by `subs[i]`.
    pub fn substitute(&self, subs: &[S]) -> S {
        match self {
            S::Const(_) => self.clone(),
            S::Var(i) => subs[*i].clone(),
            S::Add(a, b) => S::add(a.substitute(subs), b.substitute(subs)),
            S::Mul(a, b) => S::mul(a.substitute(subs), b.substitute(subs)),
            S::Div(a, b) => S::div(a.substitute(subs), b.substitute(subs)),
            S::Neg(a) => S::neg(a.substitute(subs)),
            S::Pow(a, k) => S::pow(a.substitute(subs), *k),
            S::Call(f, a) => S::call(*f, a.substitute(subs)),
        }
    }

    /// The polynomial this expression equals, if it uses no functions and
    /// divides only by constants.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        Some(match self {
            S::Const(c) => Polynomial::constant(c.clone()),
            S::Var(i) => Polynomial::var(*i),
            S::Add(a, b) => &a.to_polynomial()? + &b.to_polynomial()?,
            S::Mul(a, b) => &a.to_polynomial()? * &b.to_polynomial()?,
            S::Div(a, b) => {
                let d = b.to_polynomial()?;
                if !d.is_constant() || d.is_zero() {
                    return None;
                }
                a.to_polynomial()?.scale(&d.constant_term().recip())
            }
            S::Neg(a) => -&a.to_polynomial()?,
            S::Pow(a, k) => a.to_polynomial()?.pow(*k),
            S::Call(..) => return None,
        })
    }

    /// Conservative range over the unit cube.
    pub fn range_on_unit_cube(&self) -> Interval {
        match self {
            S::Const(c) => Interval::point(crate::to_f64(c)),
            S::Var(_) => Interval { lo: 0.0, hi: 1.0 },
            S::Add(a, b) => a.range_on_unit_cube().add(b.range_on_unit_cube()),
            S::Mul(a, b) => a.range_on_unit_cube().mul(b.range_on_unit_cube()),
            S::Div(a, b) => a.range_on_unit_cube().div(b.range_on_unit_cube()),
            S::Neg(a) => a.range_on_unit_cube().neg(),
            S::Pow(a, k) => a.range_on_unit_cube().powi(*k),
            S::Call(f, a) => {
                let r = a.range_on_unit_cube();
                match f {
                    Func::Sin | Func::Cos => Interval { lo: -1.0, hi: 1.0 },
                    Func::Exp => Interval {
                        lo: r.lo.exp(),
                        hi: r.hi.exp(),
                    },
                    Func::Sqrt => Interval {
                        lo: r.lo.max(0.0).sqrt(),
                        hi: r.hi.max(0.0).sqrt(),
                    },
                }
            }
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S::Const(c) => write!(f, "{c}"),
            S::Var(i) => write!(f, "u{}", i + 1),
            S::Add(a, b) => write!(f, "({a} + {b})"),
            S::Mul(a, b) => write!(f, "{a}*{b}"),
            S::Div(a, b) => write!(f, "{a}/({b})"),
            S::Neg(a) => write!(f, "-({a})"),
            S::Pow(a, k) => write!(f, "({a})^{k}"),
            S::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Closed interval for range bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    fn add(self, o: Self) -> Self {
        Interval {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }

    fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    fn mul(self, o: Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Interval {
            lo: c.iter().copied().fold(f64::INFINITY, f64::min),
            hi: c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn div(self, o: Self) -> Self {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        self.mul(Interval {
            lo: 1.0 / o.hi,
            hi: 1.0 / o.lo,
        })
    }

    fn powi(self, k: u32) -> Self {
        let mut acc = Interval::point(1.0);
        if k.is_multiple_of(2) && self.lo < 0.0 && self.hi > 0.0 {
            let m = self.lo.abs().max(self.hi);
            return Interval {
                lo: 0.0,
                hi: m.powi(k as i32),
            };
        }
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Forms on ℍⁿ.
    Form(usize),
    /// Maps with `k` parameters.
    Map(usize),
}

/// Parse tree shared by both modes.
#[derive(Clone, Debug)]
enum Node {
    Num(Q),
    Coord(usize),
    Coframe(usize),
    /// `dt` as a form.
    Dt,
    Param(usize),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>, (usize, usize)),
    Call(Func, Box<Node>, (usize, usize)),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    mode: Mode,
}

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

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        parse_error(t.line, t.column, msg)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.peek().tok {
            let t = self.next();
            let rhs = self.term()?;
            lhs = Node::Bin(c, Box::new(lhs), Box::new(rhs), (t.line, t.column));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = self.peek().tok {
            let t = self.next();
            let rhs = self.unary()?;
            lhs = Node::Bin(c, Box::new(lhs), Box::new(rhs), (t.line, t.column));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.peek().tok == Tok::Op('-') {
            self.next();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let mut lhs = self.atom()?;
        while self.peek().tok == Tok::Op('^') {
            let t = self.next();
            let rhs = self.atom()?;
            lhs = Node::Bin('^', Box::new(lhs), Box::new(rhs), (t.line, t.column));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Node> {
        let t = self.next();
        match t.tok {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek().tok != Tok::Op(')') {
                    return Err(self.err_here("expected `)`"));
                }
                self.next();
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(f) = function(&name) {
                    if !matches!(self.mode, Mode::Map(_)) {
                        return Err(parse_error(
                            t.line,
                            t.column,
                            format!("function `{name}` is only allowed in maps"),
                        ));
                    }
                    if self.peek().tok != Tok::Op('(') {
                        return Err(self.err_here(format!("expected `(` after `{name}`")));
                    }
                    self.next();
                    let arg = self.expr()?;
                    if self.peek().tok != Tok::Op(')') {
                        return Err(self.err_here("expected `)`"));
                    }
                    self.next();
                    return Ok(Node::Call(f, Box::new(arg), (t.line, t.column)));
                }
                identifier(&name, self.mode)
                    .ok_or_else(|| parse_error(t.line, t.column, format!("unknown identifier `{name}`")))
            }
            Tok::End => Err(parse_error(t.line, t.column, "unexpected end of input")),
            Tok::Op(c) => Err(parse_error(t.line, t.column, format!("unexpected `{c}`"))),
        }
    }
}

fn function(name: &str) -> Option<Func> {
    Some(match name {
        "sin" => Func::Sin,
        "cos" => Func::Cos,
        "exp" => Func::Exp,
        "sqrt" => Func::Sqrt,
        _ => return None,
    })
}

fn indexed(name: &str, prefix: &str, max: usize) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || rest.starts_with('0') {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (1..=max).contains(&i).then_some(i - 1)
}

fn identifier(name: &str, mode: Mode) -> Option<Node> {
    match mode {
        Mode::Form(n) => {
            if n == 1 {
                match name {
                    "x" => return Some(Node::Coord(0)),
                    "y" => return Some(Node::Coord(1)),
                    "dx" => return Some(Node::Coframe(0)),
                    "dy" => return Some(Node::Coframe(1)),
                    _ => {}
                }
            }
            match name {
                "t" => Some(Node::Coord(2 * n)),
                "theta" => Some(Node::Coframe(2 * n)),
                "dt" => Some(Node::Dt),
                _ => indexed(name, "dx", n)
                    .map(Node::Coframe)
                    .or_else(|| indexed(name, "dy", n).map(|i| Node::Coframe(n + i)))
                    .or_else(|| indexed(name, "x", n).map(Node::Coord))
                    .or_else(|| indexed(name, "y", n).map(|i| Node::Coord(n + i))),
            }
        }
        Mode::Map(k) => indexed(name, "u", k).map(Node::Param),
    }
}

fn parse(src: &str, mode: Mode) -> Result<Node> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, mode };
    let node = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(node)
}

/// Parses a differential form on ℍⁿ.
pub fn parse_form(src: &str, n: usize) -> Result<PolyForm> {
    let node = parse(src, Mode::Form(n))?;
    lower_form(&node, n)
}

fn lower_form(node: &Node, n: usize) -> Result<PolyForm> {
    Ok(match node {
        Node::Num(v) => PolyForm::function(n, Polynomial::constant(v.clone())),
        Node::Coord(i) => PolyForm::function(n, Polynomial::var(*i)),
        Node::Coframe(i) => PolyForm::from_monomial(n, Monomial::single(*i), Polynomial::one()),
        Node::Dt => PolyForm::function(n, Polynomial::var(2 * n)).exterior_d(),
        Node::Param(_) | Node::Call(..) => unreachable!("rejected by the parser"),
        Node::Neg(a) => -&lower_form(a, n)?,
        Node::Bin(op, a, b, (line, col)) => {
            let (a, b) = (lower_form(a, n)?, lower_form(b, n)?);
            let here = |msg: String| parse_error(*line, *col, msg);
            match op {
                '+' | '-' => {
                    let b = if *op == '-' { -&b } else { b };
                    // a bare 0 adapts to the other operand's degree
                    if a.is_zero() && a.degree() == 0 {
                        b
                    } else if b.is_zero() && b.degree() == 0 {
                        a
                    } else {
                        a.checked_add(&b).map_err(|_| {
                            here(format!(
                                "cannot add forms of degree {} and {}",
                                a.degree(),
                                b.degree()
                            ))
                        })?
                    }
                }
                '*' => {
                    if a.degree() != 0 && b.degree() != 0 {
                        return Err(here("`*` needs a function on one side; use `^` for wedge".into()));
                    }
                    a.wedge(&b)?
                }
                '/' => {
                    let d = constant_of(&b)
                        .ok_or_else(|| here("division is only by a nonzero constant".into()))?;
                    a.scale(&d.recip())
                }
                '^' => a.wedge(&b)?,
                _ => unreachable!(),
            }
        }
    })
}

fn constant_of(f: &PolyForm) -> Option<Q> {
    if f.degree() != 0 {
        return None;
    }
    let p = f.coeff(Monomial::EMPTY);
    (p.is_constant() && !p.is_zero()).then(|| p.constant_term())
}

/// Parses one component of a chain map in parameters `u1..uk`.
/// Square roots whose argument can reach 0 on `[0,1]^k` are rejected.
pub fn parse_map_component(src: &str, k: usize) -> Result<ScalarExpr> {
    let node = parse(src, Mode::Map(k))?;
    lower_map(&node)
}

fn lower_map(node: &Node) -> Result<ScalarExpr> {
    Ok(match node {
        Node::Num(v) => S::Const(v.clone()),
        Node::Param(i) => S::Var(*i),
        Node::Coord(_) | Node::Coframe(_) | Node::Dt => unreachable!("rejected by the parser"),
        Node::Neg(a) => S::neg(lower_map(a)?),
        Node::Call(f, a, (line, col)) => {
            let arg = lower_map(a)?;
            if *f == Func::Sqrt && arg.range_on_unit_cube().lo <= 0.0 {
                return Err(parse_error(
                    *line,
                    *col,
                    format!("sqrt argument `{arg}` may vanish on the parameter domain"),
                ));
            }
            S::call(*f, arg)
        }
        Node::Bin(op, a, b, (line, col)) => {
            let (a, b) = (lower_map(a)?, lower_map(b)?);
            match op {
                '+' => S::add(a, b),
                '-' => S::sub(a, b),
                '*' => S::mul(a, b),
                '/' => match b.as_const() {
                    Some(c) if !c.is_zero() => S::div(a, b),
                    _ => {
                        return Err(parse_error(*line, *col, "division is only by a nonzero constant"))
                    }
                },
                '^' => {
                    let k = b
                        .as_const()
                        .filter(|c| c.is_integer() && !c.is_negative())
                        .and_then(|c| c.to_integer().to_u32())
                        .ok_or_else(|| {
                            parse_error(*line, *col, "exponent must be a non-negative integer")
                        })?;
                    S::pow(a, k)
                }
                _ => unreachable!(),
            }
        }
    })
}

/// Parses a constant covector such as `dx1^dy1 - 2*theta`.
pub fn parse_covector(src: &str, n: usize) -> Result<MultiCovector> {
    let f = parse_form(src, n)?;
    let mut out = MultiCovector::zero(n, f.degree());
    for (m, p) in f.terms() {
        if !p.is_constant() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "expected constant coefficients".into(),
            });
        }
        out = &out + &MultiCovector::from_monomial(n, *m, p.constant_term());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    #[test]
    fn form_parsing() {
        let f = parse_form("y*dx - 1/2*theta", 1).unwrap();
        let expected = &PolyForm::from_monomial(1, Monomial::single(0), Polynomial::var(1))
            - &PolyForm::from_monomial(1, Monomial::single(2), Polynomial::constant(q(1, 2)));
        assert_eq!(f, expected);
        let g = parse_form("x1*dx1^dy2 + 0.25*t*dx2^dy2", 2).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(
            g.coeff(Monomial::from_sorted(&[1, 3])),
            Polynomial::var(4).scale(&q(1, 4))
        );
        // dt is expanded into the coframe
        let dt = parse_form("dt", 1).unwrap();
        assert_eq!(dt, PolyForm::function(1, Polynomial::var(2)).exterior_d());
        // wedge binds tighter than scalar multiplication
        let w = parse_form("2*dx^dy", 1).unwrap();
        assert_eq!(w.coeff(Monomial::from_sorted(&[0, 1])), Polynomial::constant(qi(2)));
        assert!(parse_form("-dx^dy", 1).unwrap() == -&parse_form("dx^dy", 1).unwrap());
    }

    #[test]
    fn form_errors_have_positions() {
        match parse_form("dx +\n  dx^dy", 1) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_form("x1 + z", 2) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_form("dx*dy", 1).is_err());
        assert!(parse_form("dx/x", 1).is_err());
        assert!(parse_form("x", 2).is_err());
        assert!(parse_form("sin(x)", 1).is_err());
        assert!(parse_form("(dx", 1).is_err());
        assert!(parse_form("dx)", 1).is_err());
    }

    #[test]
    fn map_parsing_and_derivatives() {
        let e = parse_map_component("u1^2*u2 + sin(u1)", 2).unwrap();
        let v = e.eval(&[0.5, 2.0]);
        assert!((v - (0.5 + 0.5f64.sin())).abs() < 1e-15);
        let d = e.derivative(0);
        assert!((d.eval(&[0.5, 2.0]) - (2.0 + 0.5f64.cos())).abs() < 1e-15);
        assert!(e.to_polynomial().is_none());
        let p = parse_map_component("2*u1 - u2/4 + 1.5", 2).unwrap();
        let expected = &(&Polynomial::var(0).scale(&qi(2)) - &Polynomial::var(1).scale(&q(1, 4)))
            + &Polynomial::constant(q(3, 2));
        assert_eq!(p.to_polynomial().unwrap(), expected);
    }

    #[test]
    fn sqrt_domain_check() {
        assert!(parse_map_component("sqrt(1 + u1^2)", 1).is_ok());
        let err = parse_map_component("u1 + sqrt(u1)", 1).unwrap_err();
        assert!(matches!(err, Error::Parse { column: 6, .. }));
        assert!(parse_map_component("sqrt(2 - u1)", 1).is_ok());
        assert!(parse_map_component("sqrt(1 - u1)", 1).is_err());
        assert!(parse_map_component("u3", 2).is_err());
        assert!(parse_map_component("u1^u1", 1).is_err());
        assert!(parse_map_component("1/u1", 1).is_err());
    }

    #[test]
    fn substitute_for_faces() {
        let e = parse_map_component("u1*u2 + exp(u2)", 2).unwrap();
        let face = e.substitute(&[S::Const(qi(1)), S::Var(0)]);
        assert!((face.eval(&[0.3]) - (0.3 + 0.3f64.exp())).abs() < 1e-15);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.125"), Some(q(1, 8)));
        assert_eq!(parse_decimal("3."), Some(qi(3)));
        assert_eq!(parse_decimal("."), None);
        assert!(lex("1.2.3").is_err());
    }
}
