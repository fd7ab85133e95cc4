//! Expression parsing and evaluation for the three value kinds, plus the
//! loaders for relation and certificate files.
//!
//! Grammar (whitespace insignificant, no implicit multiplication):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | primary ('^' nat)?
//! primary := nat | 't' nat | 'x' nat? | '(' expr ')'
//! ```
//!
//! Exponents are nonnegative integer literals and do not chain (`a^2^3` is
//! a syntax error). The kind restricts the atoms: field expressions use
//! `t<k>`, twisted-ring expressions add the bare generator `x`, and
//! free-algebra expressions use indexed generators `x1..xn`. Division in
//! the twisted ring and the free algebra is only allowed by integer
//! literals; the field kind divides freely.

use crate::error::{Error, Result};
use crate::lambda::LambdaSeq;
use crate::ncpoly::NCPoly;
use crate::ore::OrePoly;
use crate::ratfn::RationalFn;
use crate::scalar::PrimeField;
use crate::word::{FreeContext, Word};

/// Which algebra an expression denotes a value of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExprKind {
    Field,
    Ore,
    Free,
}

/// Abstract syntax preserving the written shape, including parentheses and
/// operand order (nothing is commuted or simplified).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Nat(u64),
    /// `t<k>`.
    TVar(u32),
    /// `x` (no index) or `x<i>` with the written 1-based index.
    Gen(Option<u32>),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Paren(Box<ExprAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    T(u32),
    X(Option<u32>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer;

impl Lexer {
    /// Tokenizes with 1-based source columns.
    fn run(input: &str) -> Result<Vec<(Tok, usize)>> {
        let bytes = input.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let col = i + 1;
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    i += 1;
                }
                b'+' => {
                    out.push((Tok::Plus, col));
                    i += 1;
                }
                b'-' => {
                    out.push((Tok::Minus, col));
                    i += 1;
                }
                b'*' => {
                    out.push((Tok::Star, col));
                    i += 1;
                }
                b'/' => {
                    out.push((Tok::Slash, col));
                    i += 1;
                }
                b'^' => {
                    out.push((Tok::Caret, col));
                    i += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, col));
                    i += 1;
                }
                b')' => {
                    out.push((Tok::RParen, col));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text = &input[start..i];
                    let value = text.parse::<u64>().map_err(|_| Error::Parse {
                        column: col,
                        message: format!("integer literal {text} is too large"),
                    })?;
                    out.push((Tok::Nat(value), col));
                }
                b't' => {
                    i += 1;
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(Error::Parse {
                            column: col,
                            message: "expected an index after 't' (t0, t1, ...)".into(),
                        });
                    }
                    let k = input[start..i].parse::<u32>().map_err(|_| Error::Parse {
                        column: col,
                        message: "variable index is too large".into(),
                    })?;
                    out.push((Tok::T(k), col));
                }
                b'x' => {
                    i += 1;
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let idx = if start == i {
                        None
                    } else {
                        Some(input[start..i].parse::<u32>().map_err(|_| Error::Parse {
                            column: col,
                            message: "generator index is too large".into(),
                        })?)
                    };
                    out.push((Tok::X(idx), col));
                }
                _ => {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("unknown token starting with {:?}", b as char),
                    });
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    kind: ExprKind,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<(Tok, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_column)
    }

    fn fail<T>(&self, column: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column, message: message.into() })
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Minus, _)) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(&(Tok::Slash, col)) => {
                    self.advance();
                    let rhs = if self.kind == ExprKind::Field {
                        self.factor()?
                    } else {
                        // Only a plain integer literal may follow '/' here.
                        match self.advance() {
                            Some((Tok::Nat(n), _)) => ExprAst::Nat(n),
                            _ => {
                                return self.fail(
                                    col,
                                    "division here is only allowed by integer literals",
                                )
                            }
                        }
                    };
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.advance();
            let inner = self.factor()?;
            return Ok(ExprAst::Neg(Box::new(inner)));
        }
        let base = self.primary()?;
        if let Some(&(Tok::Caret, col)) = self.peek() {
            self.advance();
            match self.advance() {
                Some((Tok::Nat(n), ncol)) => {
                    let exp = u32::try_from(n).map_err(|_| Error::Parse {
                        column: ncol,
                        message: "exponent is too large".into(),
                    })?;
                    return Ok(ExprAst::Pow(Box::new(base), exp));
                }
                _ => {
                    return self.fail(col, "exponent must be a nonnegative integer literal");
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExprAst> {
        let col = self.here();
        match self.advance() {
            Some((Tok::Nat(n), _)) => Ok(ExprAst::Nat(n)),
            Some((Tok::T(k), tcol)) => match self.kind {
                ExprKind::Free => self.fail(
                    tcol,
                    "t-variables are not available in free-algebra expressions",
                ),
                _ => Ok(ExprAst::TVar(k)),
            },
            Some((Tok::X(idx), xcol)) => match (self.kind, idx) {
                (ExprKind::Field, _) => self.fail(
                    xcol,
                    "the generator x is not available in field expressions",
                ),
                (ExprKind::Ore, None) => Ok(ExprAst::Gen(None)),
                (ExprKind::Ore, Some(_)) => self.fail(
                    xcol,
                    "the twisted ring has a single generator, written x",
                ),
                (ExprKind::Free, Some(i)) => Ok(ExprAst::Gen(Some(i))),
                (ExprKind::Free, None) => self.fail(
                    xcol,
                    "free-algebra generators carry an index (x1, x2, ...)",
                ),
            },
            Some((Tok::LParen, lcol)) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some((Tok::RParen, _)) => Ok(ExprAst::Paren(Box::new(inner))),
                    _ => self.fail(lcol, "unclosed parenthesis"),
                }
            }
            Some((_, c)) => self.fail(c, "expected a value here"),
            None => self.fail(col, "unexpected end of expression"),
        }
    }
}

/// Parses one expression of the given kind, enforcing the kind's atom and
/// division restrictions at parse time.
pub fn parse_expr(input: &str, kind: ExprKind) -> Result<ExprAst> {
    let tokens = Lexer::run(input)?;
    let end_column = input.len() + 1;
    let mut p = Parser { tokens, pos: 0, kind, end_column };
    let ast = p.expr()?;
    if let Some(&(_, col)) = p.peek() {
        return Err(Error::Parse {
            column: col,
            message: "unexpected trailing input (implicit multiplication is not allowed)".into(),
        });
    }
    Ok(ast)
}

/// Evaluates a field-kind expression to a rational function.
pub fn eval_field(ast: &ExprAst, field: PrimeField) -> Result<RationalFn> {
    match ast {
        ExprAst::Nat(n) => Ok(RationalFn::constant(field, *n)),
        ExprAst::TVar(k) => Ok(RationalFn::variable(field, *k)),
        ExprAst::Gen(_) => Err(Error::InvalidExpression(
            "the generator x has no field value".into(),
        )),
        ExprAst::Neg(a) => Ok(-&eval_field(a, field)?),
        ExprAst::Add(a, b) => eval_field(a, field)?.checked_add(&eval_field(b, field)?),
        ExprAst::Sub(a, b) => eval_field(a, field)?.checked_sub(&eval_field(b, field)?),
        ExprAst::Mul(a, b) => eval_field(a, field)?.checked_mul(&eval_field(b, field)?),
        ExprAst::Div(a, b) => eval_field(a, field)?.checked_div(&eval_field(b, field)?),
        ExprAst::Pow(a, e) => Ok(eval_field(a, field)?.pow(*e)),
        ExprAst::Paren(a) => eval_field(a, field),
    }
}

fn literal_inverse(field: PrimeField, ast: &ExprAst) -> Result<u32> {
    match ast {
        ExprAst::Nat(n) => field.inv(field.from_u64(*n)),
        _ => Err(Error::InvalidExpression(
            "division here is only allowed by integer literals".into(),
        )),
    }
}

/// Evaluates a twisted-ring expression over the given sequence.
pub fn eval_ore(ast: &ExprAst, lambda: &LambdaSeq) -> Result<OrePoly> {
    let field = lambda.field();
    match ast {
        ExprAst::Nat(n) => Ok(OrePoly::scalar(
            lambda.clone(),
            RationalFn::constant(field, *n),
        )),
        ExprAst::TVar(k) => Ok(OrePoly::t(lambda.clone(), *k)),
        ExprAst::Gen(None) => Ok(OrePoly::x(lambda.clone())),
        ExprAst::Gen(Some(_)) => Err(Error::InvalidExpression(
            "the twisted ring has a single generator, written x".into(),
        )),
        ExprAst::Neg(a) => Ok(-&eval_ore(a, lambda)?),
        ExprAst::Add(a, b) => eval_ore(a, lambda)?.checked_add(&eval_ore(b, lambda)?),
        ExprAst::Sub(a, b) => eval_ore(a, lambda)?.checked_sub(&eval_ore(b, lambda)?),
        ExprAst::Mul(a, b) => eval_ore(a, lambda)?.checked_mul(&eval_ore(b, lambda)?),
        ExprAst::Div(a, b) => {
            let inv = literal_inverse(field, b)?;
            Ok(eval_ore(a, lambda)?.scale(&RationalFn::constant(field, inv as u64)))
        }
        ExprAst::Pow(a, e) => Ok(eval_ore(a, lambda)?.pow(*e)),
        ExprAst::Paren(a) => eval_ore(a, lambda),
    }
}

/// Evaluates a free-algebra expression in the given context.
pub fn eval_free(ast: &ExprAst, ctx: &FreeContext) -> Result<NCPoly> {
    let field = ctx.field();
    match ast {
        ExprAst::Nat(n) => Ok(NCPoly::constant(ctx.clone(), *n)),
        ExprAst::TVar(_) => Err(Error::InvalidExpression(
            "t-variables have no free-algebra value".into(),
        )),
        ExprAst::Gen(Some(i)) => {
            if *i == 0 {
                return Err(Error::InvalidExpression(
                    "generator indices start at x1".into(),
                ));
            }
            let idx = u16::try_from(i - 1).map_err(|_| {
                Error::InvalidExpression(format!("generator x{i} does not exist"))
            })?;
            NCPoly::generator(ctx.clone(), idx)
        }
        ExprAst::Gen(None) => Err(Error::InvalidExpression(
            "free-algebra generators carry an index (x1, x2, ...)".into(),
        )),
        ExprAst::Neg(a) => Ok(-&eval_free(a, ctx)?),
        ExprAst::Add(a, b) => eval_free(a, ctx)?.checked_add(&eval_free(b, ctx)?),
        ExprAst::Sub(a, b) => eval_free(a, ctx)?.checked_sub(&eval_free(b, ctx)?),
        ExprAst::Mul(a, b) => eval_free(a, ctx)?.checked_mul(&eval_free(b, ctx)?),
        ExprAst::Div(a, b) => {
            let inv = literal_inverse(field, b)?;
            Ok(eval_free(a, ctx)?.scale(inv))
        }
        ExprAst::Pow(a, e) => {
            let base = eval_free(a, ctx)?;
            let mut acc = NCPoly::one(ctx.clone());
            for _ in 0..*e {
                acc = &acc * &base;
            }
            Ok(acc)
        }
        ExprAst::Paren(a) => eval_free(a, ctx),
    }
}

/// Parses a relation file: a `@ring p=<prime> weights=<w1,w2,...>` header,
/// then one free-algebra expression per line. `#` starts a comment and
/// blank lines are skipped.
pub fn parse_relation_file(text: &str) -> Result<(FreeContext, Vec<NCPoly>)> {
    let mut ctx: Option<FreeContext> = None;
    let mut relations = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        if ctx.is_none() {
            let header = line.strip_prefix("@ring").ok_or_else(|| {
                Error::InvalidFile(format!(
                    "line {lineno}: expected a '@ring p=<prime> weights=<w,...>' header first"
                ))
            })?;
            let mut p: Option<u64> = None;
            let mut weights: Option<Vec<u32>> = None;
            for part in header.split_whitespace() {
                if let Some(v) = part.strip_prefix("p=") {
                    p = Some(v.parse().map_err(|_| {
                        Error::InvalidFile(format!("line {lineno}: bad modulus {v:?}"))
                    })?);
                } else if let Some(v) = part.strip_prefix("weights=") {
                    let ws = v
                        .split(',')
                        .map(|w| w.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<u32>, _>>()
                        .map_err(|_| {
                            Error::InvalidFile(format!("line {lineno}: bad weights {v:?}"))
                        })?;
                    weights = Some(ws);
                } else {
                    return Err(Error::InvalidFile(format!(
                        "line {lineno}: unknown header field {part:?}"
                    )));
                }
            }
            let p = p.ok_or_else(|| {
                Error::InvalidFile(format!("line {lineno}: header is missing p=<prime>"))
            })?;
            let weights = weights.ok_or_else(|| {
                Error::InvalidFile(format!("line {lineno}: header is missing weights=<w,...>"))
            })?;
            ctx = Some(FreeContext::new(PrimeField::new(p)?, weights)?);
            continue;
        }
        let ctx_ref = ctx.as_ref().expect("header parsed");
        let ast = parse_expr(line, ExprKind::Free).map_err(|e| match e {
            Error::Parse { column, message } => Error::InvalidFile(format!(
                "line {lineno}, column {column}: {message}"
            )),
            other => Error::InvalidFile(format!("line {lineno}: {other}")),
        })?;
        let value = eval_free(&ast, ctx_ref).map_err(|e| {
            Error::InvalidFile(format!("line {lineno}: {e}"))
        })?;
        relations.push(value);
    }
    let ctx = ctx.ok_or_else(|| {
        Error::InvalidFile("the relation file has no '@ring' header".into())
    })?;
    Ok((ctx, relations))
}

/// Parses a word given as `x<i>` letters joined by `*`, or `1` for the
/// empty word.
pub fn parse_word(text: &str, ctx: &FreeContext) -> Result<Word> {
    let text = text.trim();
    if text == "1" {
        return Ok(Word::one());
    }
    let mut letters = Vec::new();
    for piece in text.split('*') {
        let piece = piece.trim();
        let idx = piece
            .strip_prefix('x')
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| {
                Error::InvalidFile(format!("bad word letter {piece:?} (expected x<i> or 1)"))
            })?;
        if idx == 0 || idx as usize > ctx.n() {
            return Err(Error::InvalidFile(format!(
                "word letter x{idx} is out of range (the context has {} generators)",
                ctx.n()
            )));
        }
        letters.push((idx - 1) as u16);
    }
    Ok(Word::from_letters(letters))
}
