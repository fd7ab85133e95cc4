//! Rational functions `K = F_p(t0, t1, ...)` in canonical reduced form.
//!
//! Invariants: `gcd(numerator, denominator) = 1`, the denominator is monic
//! under graded lex order (so a polynomial has denominator exactly `1`), and
//! zero is represented as `0/1`. Equality of canonical forms is therefore
//! structural equality, and it coincides with cross-multiplication equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gcd::poly_gcd;
use crate::poly::MultiPoly;
use crate::scalar::PrimeField;

/// An element of the rational function field over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    /// Builds `num/den` in canonical form; errors when `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        num.field().require_same(&den.field())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFn {
                num,
                den: MultiPoly::one(den.field()),
            });
        }
        let g = poly_gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.try_div(&g).expect("gcd divides the numerator"),
                den.try_div(&g).expect("gcd divides the denominator"),
            )
        };
        // Normalize the denominator monic by moving its leading unit to the
        // numerator.
        let lc = den.leading_coefficient().expect("denominator is nonzero");
        if lc != 1 {
            let inv = den.field().inv(lc)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.field());
        RationalFn { num: p, den: one }
    }

    pub fn zero(field: PrimeField) -> Self {
        Self::from_poly(MultiPoly::zero(field))
    }

    pub fn one(field: PrimeField) -> Self {
        Self::from_poly(MultiPoly::one(field))
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::from_poly(MultiPoly::constant(field, c))
    }

    /// The variable `t_k` as a rational function.
    pub fn variable(field: PrimeField, k: u32) -> Self {
        Self::from_poly(MultiPoly::variable(field, k))
    }

    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field().require_same(&other.field())?;
        RationalFn::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.field().require_same(&other.field())?;
        RationalFn::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field().require_same(&other.field())?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field()));
        }
        // Cross-cancel before multiplying to keep the final gcd small.
        let g1 = poly_gcd(&self.num, &other.den)?;
        let g2 = poly_gcd(&other.num, &self.den)?;
        let a = self.num.try_div(&g1).expect("gcd divides");
        let d = other.den.try_div(&g1).expect("gcd divides");
        let c = other.num.try_div(&g2).expect("gcd divides");
        let b = self.den.try_div(&g2).expect("gcd divides");
        RationalFn::new(&a * &c, &b * &d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    /// Nonnegative power. Canonical numerator/denominator powers stay
    /// coprime, so no gcd is needed.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.field());
        }
        // The denominator stays monic because it was monic before powering.
        RationalFn {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Partial derivative with respect to `t_k` by the quotient rule.
    pub fn partial_derivative(&self, k: u32) -> Self {
        let nu = self.num.partial_derivative(k);
        let dv = self.den.partial_derivative(k);
        let num = &(&nu * &self.den) - &(&self.num * &dv);
        RationalFn::new(num, &self.den * &self.den).expect("denominator square is nonzero")
    }

    /// The unique `g` with `g^p = self`, when the value is a p-th power.
    ///
    /// For canonical `u/v` this holds exactly when the polynomial
    /// `u * v^(p-1)` is a p-th power `w^p`; the root is then `w/v`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.field().modulus();
        let shifted = &self.num * &self.den.pow(p - 1);
        let w = shifted.pth_root()?;
        Some(RationalFn::new(w, self.den.clone()).expect("denominator is nonzero"))
    }

    /// Membership in the subfield of p-th powers (the kernel of every
    /// derivation of K).
    pub fn is_pth_power(&self) -> bool {
        self.pth_root().is_some()
    }
}

macro_rules! forward_checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: &RationalFn) -> RationalFn {
                self.$checked(rhs).expect("operands share one prime field")
            }
        }
        impl $trait for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_checked_binop!(Add, add, checked_add);
forward_checked_binop!(Sub, sub, checked_sub);
forward_checked_binop!(Mul, mul, checked_mul);

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFn {
    /// Canonical text. A polynomial prints as its numerator. Otherwise the
    /// output is `num/den` where the numerator is parenthesized when it has
    /// more than one term and the denominator is parenthesized unless it is
    /// a bare atom (a constant or a single variable), so the string parses
    /// back to the same value under the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        let den_is_atom = self.den.is_constant()
            || (self.den.term_count() == 1
                && self.den.leading_coefficient() == Some(1)
                && self
                    .den
                    .leading_term()
                    .map_or(false, |(m, _)| m.total_degree() == 1));
        if den_is_atom {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}
