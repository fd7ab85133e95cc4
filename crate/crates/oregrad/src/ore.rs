//! The twisted polynomial ring `K[x; delta]` over `K = F_p(t0, t1, ...)`.
//!
//! The derivation is determined by a sequence `lambda`:
//! `delta(t_k) = t_{k+1} + lambda_k * t0`, extended to K by linearity, the
//! Leibniz rule and the quotient rule. Ring elements are polynomials in `x`
//! with left coefficients in K subject to `x * a = a * x + delta(a)`.
//!
//! Multiplication uses the closed rule
//! `(a x^i)(b x^j) = a * sum_k C(i, k) delta^k(b) x^(i+j-k)` with binomial
//! coefficients mod p; a one-step rewriter ([`OrePoly::mul_naive`]) is kept
//! as an independent slow path for cross-checking.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::lambda::LambdaSeq;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::ratfn::RationalFn;
use crate::scalar::PrimeField;

impl LambdaSeq {
    /// The derivation applied to a polynomial: extends
    /// `t_k -> t_{k+1} + lambda_k * t0` by linearity and Leibniz.
    pub fn delta_poly(&self, f: &MultiPoly) -> MultiPoly {
        self.field()
            .require_same(&f.field())
            .expect("operands share one prime field");
        let field = f.field();
        let mut out = MultiPoly::zero(field);
        for (m, c) in f.terms() {
            for (var, e) in m.iter() {
                let coeff = field.mul(c, field.from_u64(e as u64));
                if coeff == 0 {
                    continue;
                }
                let lowered = m
                    .try_div(&Monomial::variable(var))
                    .expect("exponent is positive");
                // coeff * lowered * (t_{var+1} + lambda_var * t0)
                out.add_term(lowered.mul(&Monomial::variable(var + 1)), coeff);
                let lam = self.get(var as usize);
                if lam != 0 {
                    out.add_term(lowered.mul(&Monomial::variable(0)), field.mul(coeff, lam));
                }
            }
        }
        out
    }

    /// The derivation applied to a rational function via the quotient rule.
    pub fn delta(&self, f: &RationalFn) -> RationalFn {
        let du = self.delta_poly(f.numerator());
        let dv = self.delta_poly(f.denominator());
        let num = &(&du * f.denominator()) - &(f.numerator() * &dv);
        if num.is_zero() {
            return RationalFn::zero(f.field());
        }
        RationalFn::new(num, f.denominator() * f.denominator())
            .expect("denominator square is nonzero")
    }

    /// Iterated derivation `delta^n`.
    pub fn delta_iter(&self, f: &RationalFn, n: usize) -> RationalFn {
        let mut out = f.clone();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = self.delta(&out);
        }
        out
    }
}

/// Pascal's triangle mod p: rows `0..=n` of binomial coefficients.
pub(crate) fn binomial_rows(field: PrimeField, n: usize) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    rows.push(vec![1]);
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u32; i + 1];
        for k in 1..i {
            row[k] = field.add(prev[k - 1], prev[k]);
        }
        rows.push(row);
    }
    rows
}

/// An element of `K[x; delta]`: coefficients `c_0..c_m` for powers of `x`
/// in ascending order, with a nonzero top coefficient unless the element is
/// zero (empty coefficient list). The sequence defining the derivation is
/// part of the value; operations require both operands to share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrePoly {
    lambda: LambdaSeq,
    coeffs: Vec<RationalFn>,
}

impl OrePoly {
    pub fn zero(lambda: LambdaSeq) -> Self {
        OrePoly { lambda, coeffs: Vec::new() }
    }

    pub fn one(lambda: LambdaSeq) -> Self {
        Self::constant(lambda, None)
    }

    fn constant(lambda: LambdaSeq, c: Option<RationalFn>) -> Self {
        let field = lambda.field();
        let c = c.unwrap_or_else(|| RationalFn::one(field));
        Self::from_coeffs(lambda, vec![c])
    }

    /// A degree-zero element with the given coefficient.
    pub fn scalar(lambda: LambdaSeq, c: RationalFn) -> Self {
        lambda
            .field()
            .require_same(&c.field())
            .expect("coefficient over the same prime field");
        Self::from_coeffs(lambda, vec![c])
    }

    /// The generator `x`.
    pub fn x(lambda: LambdaSeq) -> Self {
        let field = lambda.field();
        Self::from_coeffs(lambda, vec![RationalFn::zero(field), RationalFn::one(field)])
    }

    /// The field generator `t_k` as a degree-zero element.
    pub fn t(lambda: LambdaSeq, k: u32) -> Self {
        let field = lambda.field();
        Self::scalar(lambda, RationalFn::variable(field, k))
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(lambda: LambdaSeq, mut coeffs: Vec<RationalFn>) -> Self {
        while coeffs.last().map_or(false, RationalFn::is_zero) {
            coeffs.pop();
        }
        for c in &coeffs {
            lambda
                .field()
                .require_same(&c.field())
                .expect("coefficients over the sequence's prime field");
        }
        OrePoly { lambda, coeffs }
    }

    pub fn lambda(&self) -> &LambdaSeq {
        &self.lambda
    }

    pub fn field(&self) -> PrimeField {
        self.lambda.field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`; `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero when absent).
    pub fn coeff(&self, i: usize) -> RationalFn {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RationalFn::zero(self.field()))
    }

    pub fn leading_coeff(&self) -> Option<&RationalFn> {
        self.coeffs.last()
    }

    /// Ascending coefficients `c_0..c_m`.
    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.lambda.require_same(&other.lambda)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = RationalFn::zero(self.field());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        Ok(Self::from_coeffs(self.lambda.clone(), coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Product by the closed binomial rule.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.lambda.require_same(&other.lambda)?;
        let field = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.lambda.clone()));
        }
        let deg_a = self.coeffs.len() - 1;
        let deg_b = other.coeffs.len() - 1;
        let binom = binomial_rows(field, deg_a);

        // delta^k applied coefficientwise to `other`, for k = 0..=deg_a.
        let mut deltas: Vec<Vec<RationalFn>> = Vec::with_capacity(deg_a + 1);
        deltas.push(other.coeffs.clone());
        for k in 1..=deg_a {
            let prev = &deltas[k - 1];
            deltas.push(prev.iter().map(|c| self.lambda.delta(c)).collect());
        }

        let zero = RationalFn::zero(field);
        let mut out = vec![zero; deg_a + deg_b + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=i {
                let c = binom[i][k];
                if c == 0 {
                    continue;
                }
                let scale = RationalFn::constant(field, c as u64);
                for (j, db) in deltas[k].iter().enumerate() {
                    if db.is_zero() {
                        continue;
                    }
                    // a * C(i,k) * delta^k(b_j) * x^(i + j - k)
                    let term = &(a * db) * &scale;
                    let idx = i + j - k;
                    out[idx] = &out[idx] + &term;
                }
            }
        }
        Ok(Self::from_coeffs(self.lambda.clone(), out))
    }

    /// Reference product: pushes `x` to the right one step at a time using
    /// only `x * a = a * x + delta(a)`. Slow; kept as an independent oracle
    /// for the closed-form multiplication.
    pub fn mul_naive(&self, other: &Self) -> Result<Self> {
        self.lambda.require_same(&other.lambda)?;
        let mut out = Self::zero(self.lambda.clone());
        for (i, a) in self.coeffs.iter().enumerate() {
            // x^i * other, one x at a time.
            let mut shifted = other.clone();
            for _ in 0..i {
                shifted = shifted.x_times();
            }
            let scaled = shifted.scale(a);
            out = out.checked_add(&scaled)?;
        }
        Ok(out)
    }

    /// Left multiplication by `x`: coefficients shift up one degree and the
    /// derivation of each coefficient lands at its old position.
    fn x_times(&self) -> Self {
        let field = self.field();
        let mut coeffs = vec![RationalFn::zero(field); self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = &coeffs[j + 1] + b;
            let db = self.lambda.delta(b);
            coeffs[j] = &coeffs[j] + &db;
        }
        Self::from_coeffs(self.lambda.clone(), coeffs)
    }

    /// Left scalar multiplication by an element of K.
    pub fn scale(&self, c: &RationalFn) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::from_coeffs(self.lambda.clone(), coeffs)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        ab.checked_sub(&ba)
    }

    /// Nonnegative power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.lambda.clone());
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same sequence");
        }
        acc
    }

    /// The unique `g` with `g^p = self`, when the search finds one.
    ///
    /// Degree zero delegates to the field root and is complete. A nonzero
    /// degree must be a multiple of p; the candidate root is then assembled
    /// from the field roots of the coefficients at the multiples of p (the
    /// shape a p-th power has when the twist contributes nothing) and is
    /// returned only after an exact `pow(p)` verification, so any returned
    /// value is correct. Inputs whose root needs twist-corrected lower
    /// coefficients are reported as having no root found.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.field().modulus();
        match self.degree() {
            None => Some(self.clone()), // 0^p = 0
            Some(0) => {
                let root = self.coeffs[0].pth_root()?;
                Some(Self::scalar(self.lambda.clone(), root))
            }
            Some(d) => {
                if d % p as usize != 0 {
                    return None;
                }
                let m = d / p as usize;
                let mut coeffs = Vec::with_capacity(m + 1);
                for j in 0..=m {
                    coeffs.push(self.coeff(j * p as usize).pth_root()?);
                }
                let candidate = Self::from_coeffs(self.lambda.clone(), coeffs);
                (candidate.pow(p) == *self).then_some(candidate)
            }
        }
    }
}

macro_rules! forward_checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: &OrePoly) -> OrePoly {
                self.$checked(rhs).expect("operands share one lambda sequence")
            }
        }
        impl $trait for OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: OrePoly) -> OrePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_checked_binop!(Add, add, checked_add);
forward_checked_binop!(Sub, sub, checked_sub);
forward_checked_binop!(Mul, mul, checked_mul);

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        OrePoly {
            lambda: self.lambda.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for OrePoly {
    /// Canonical text: terms in descending x-degree, each as `coeff*x^i`
    /// with the coefficient on the left. Unit coefficients and the `^1` are
    /// omitted; a coefficient that is a sum is parenthesized. Values whose
    /// coefficients are all polynomials parse back under the ore grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xpow = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if xpow.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{xpow}")?;
            } else {
                let needs_parens = c.is_polynomial() && c.numerator().term_count() > 1;
                if needs_parens {
                    write!(f, "({c})*{xpow}")?;
                } else {
                    write!(f, "{c}*{xpow}")?;
                }
            }
        }
        Ok(())
    }
}

/// An expression over the generators `t0` and `x` with scalar coefficients:
/// the shape in which iterated commutator words are reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenExpr {
    /// The field generator `t0`.
    T0,
    /// The twisting generator `x`.
    X,
    Add(Box<GenExpr>, Box<GenExpr>),
    Mul(Box<GenExpr>, Box<GenExpr>),
    /// Scalar multiple by a residue mod p.
    ScalarMul(u32, Box<GenExpr>),
}

impl GenExpr {
    pub fn eval(&self, lambda: &LambdaSeq) -> OrePoly {
        match self {
            GenExpr::T0 => OrePoly::t(lambda.clone(), 0),
            GenExpr::X => OrePoly::x(lambda.clone()),
            GenExpr::Add(a, b) => &a.eval(lambda) + &b.eval(lambda),
            GenExpr::Mul(a, b) => &a.eval(lambda) * &b.eval(lambda),
            GenExpr::ScalarMul(c, e) => e
                .eval(lambda)
                .scale(&RationalFn::constant(lambda.field(), *c as u64)),
        }
    }

    /// Number of nodes, a rough size measure.
    pub fn size(&self) -> usize {
        match self {
            GenExpr::T0 | GenExpr::X => 1,
            GenExpr::Add(a, b) | GenExpr::Mul(a, b) => 1 + a.size() + b.size(),
            GenExpr::ScalarMul(_, e) => 1 + e.size(),
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, GenExpr::T0 | GenExpr::X)
    }
}

impl fmt::Display for GenExpr {
    /// Grammar-compatible text: `+` at the top, `*` for products, non-atomic
    /// factors parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(e: &GenExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if e.is_atom() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        }
        match self {
            GenExpr::T0 => write!(f, "t0"),
            GenExpr::X => write!(f, "x"),
            GenExpr::Add(a, b) => write!(f, "{a} + {b}"),
            GenExpr::Mul(a, b) => {
                factor(a, f)?;
                write!(f, "*")?;
                factor(b, f)
            }
            GenExpr::ScalarMul(c, e) => {
                write!(f, "{c}*")?;
                factor(e, f)
            }
        }
    }
}

/// The word expressing `t_k` through `t0` and `x`: `t0` itself for `k = 0`,
/// and `x*w_k + (p-1)*(w_k*x) + (p - lambda_k)*t0` one level up, which is
/// the commutator recursion `t_{k+1} = [x, t_k] - lambda_k * t0` written
/// with nonnegative residues. Evaluating the word gives back `t_k`.
pub fn t_word(lambda: &LambdaSeq, k: usize) -> GenExpr {
    let p = lambda.field().modulus();
    let mut word = GenExpr::T0;
    for level in 0..k {
        let lam = lambda.get(level);
        let left = GenExpr::Mul(Box::new(GenExpr::X), Box::new(word.clone()));
        let right = GenExpr::ScalarMul(
            p - 1,
            Box::new(GenExpr::Mul(Box::new(word), Box::new(GenExpr::X))),
        );
        let mut sum = GenExpr::Add(Box::new(left), Box::new(right));
        if lam != 0 {
            let correction = GenExpr::ScalarMul(p - lam, Box::new(GenExpr::T0));
            sum = GenExpr::Add(Box::new(sum), Box::new(correction));
        }
        word = sum;
    }
    word
}
