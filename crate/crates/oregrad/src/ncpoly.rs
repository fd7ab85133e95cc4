//! Polynomials in noncommuting generators over a prime field, graded by the
//! weights of a [`FreeContext`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::word::{FreeContext, Word};

/// An element of the weighted free algebra: a sparse sum of words with
/// nonzero coefficients. The defining context travels with the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    ctx: FreeContext,
    terms: BTreeMap<Word, u32>,
}

impl NCPoly {
    pub fn zero(ctx: FreeContext) -> Self {
        NCPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: FreeContext) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: FreeContext, c: u64) -> Self {
        let mut out = Self::zero(ctx);
        let c = out.ctx.field().from_u64(c);
        out.add_term(Word::one(), c);
        out
    }

    /// The generator `x<i+1>` (0-based index).
    pub fn generator(ctx: FreeContext, i: u16) -> Result<Self> {
        if (i as usize) >= ctx.n() {
            return Err(Error::InvalidExpression(format!(
                "generator x{} does not exist (the context has {} generators)",
                i + 1,
                ctx.n()
            )));
        }
        let mut out = Self::zero(ctx);
        out.add_term(Word::letter(i), 1);
        Ok(out)
    }

    pub fn from_word(ctx: FreeContext, w: Word) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(w, 1);
        out
    }

    pub fn from_terms(ctx: FreeContext, terms: Vec<(Word, u32)>) -> Self {
        let mut out = Self::zero(ctx);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, w: Word, c: u32) {
        let c = self.ctx.field().from_u64(c as u64);
        if c == 0 {
            return;
        }
        let field = self.ctx.field();
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> &FreeContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Top weighted degree; `None` for zero.
    pub fn wdeg(&self) -> Option<u32> {
        self.terms.keys().map(|w| self.ctx.wdeg(w)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|w| self.ctx.wdeg(w));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// The terms of weighted degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> NCPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| self.ctx.wdeg(w) == d)
            .map(|(w, &c)| (w.clone(), c))
            .collect();
        NCPoly { ctx: self.ctx.clone(), terms }
    }

    /// The top weighted-degree homogeneous component.
    pub fn leading_form(&self) -> Result<NCPoly> {
        let d = self.wdeg().ok_or(Error::LeadingFormOfZero)?;
        Ok(self.homogeneous_component(d))
    }

    /// The greatest word in the canonical order, with its coefficient.
    pub fn leading_word(&self) -> Option<(&Word, u32)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| self.ctx.cmp_words(a, b))
            .map(|(w, &c)| (w, c))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ctx.require_same(&other.ctx)?;
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.require_same(&other.ctx)?;
        let field = self.ctx.field();
        let mut out = Self::zero(self.ctx.clone());
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &other.terms {
                out.add_term(w1.concat(w2), field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let field = self.ctx.field();
        let c = field.from_u64(c as u64);
        if c == 0 {
            return Self::zero(self.ctx.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, &a)| (w.clone(), field.mul(a, c)))
            .collect();
        NCPoly { ctx: self.ctx.clone(), terms }
    }

    /// `left * self * right` for words `left`, `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, &c)| (left.concat(w).concat(right), c))
            .collect();
        NCPoly { ctx: self.ctx.clone(), terms }
    }
}

macro_rules! forward_checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &NCPoly {
            type Output = NCPoly;
            fn $method(self, rhs: &NCPoly) -> NCPoly {
                self.$checked(rhs).expect("operands share one context")
            }
        }
        impl $trait for NCPoly {
            type Output = NCPoly;
            fn $method(self, rhs: NCPoly) -> NCPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_checked_binop!(Add, add, checked_add);
forward_checked_binop!(Sub, sub, checked_sub);
forward_checked_binop!(Mul, mul, checked_mul);

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let field = self.ctx.field();
        let terms = self
            .terms
            .iter()
            .map(|(w, &c)| (w.clone(), field.neg(c)))
            .collect();
        NCPoly { ctx: self.ctx.clone(), terms }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

impl fmt::Display for NCPoly {
    /// Canonical text: terms ascending in the canonical word order, joined
    /// by " + ", each as `coeff*word` with unit coefficients and unit words
    /// elided (`x1*x2 + 2*x2*x1`; the zero element prints as `0`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Word, u32)> = self.terms().collect();
        // The map already iterates by (length, lex); a stable sort by
        // weighted degree completes the canonical order.
        ordered.sort_by_key(|(w, _)| self.ctx.wdeg(w));
        for (pos, (w, c)) in ordered.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            if w.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::PrimeField;

    fn ctx(p: u64, weights: &[u32]) -> FreeContext {
        FreeContext::new(PrimeField::new(p).unwrap(), weights.to_vec()).unwrap()
    }

    fn gen(c: &FreeContext, i: u16) -> NCPoly {
        NCPoly::generator(c.clone(), i).unwrap()
    }

    #[test]
    fn products_concatenate_words_in_order() {
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let xy = &x1 * &x2;
        let yx = &x2 * &x1;
        assert_ne!(xy, yx, "the free algebra is noncommutative");
        assert_eq!(xy.coefficient(&Word::from_letters(vec![0, 1])), 1);
        assert_eq!(yx.coefficient(&Word::from_letters(vec![1, 0])), 1);
    }

    #[test]
    fn commutator_prints_in_canonical_order() {
        // x1*x2 - x2*x1 over F_3: second coefficient is 2.
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let comm = &(&x1 * &x2) - &(&x2 * &x1);
        assert_eq!(comm.to_string(), "x1*x2 + 2*x2*x1");
    }

    #[test]
    fn leading_form_selects_top_weighted_degree() {
        // Weights (1,1): leading form of x1*x2 + x1 is x1*x2.
        let c = ctx(2, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let f = &(&x1 * &x2) + &x1;
        assert_eq!(f.leading_form().unwrap(), &x1 * &x2);

        // Weights (1,2): x1^2 + x2 is homogeneous of degree 2 and is its
        // own leading form.
        let c = ctx(2, &[1, 2]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let g = &(&x1 * &x1) + &x2;
        assert!(g.is_homogeneous());
        assert_eq!(g.leading_form().unwrap(), g);
        assert_eq!(g.to_string(), "x2 + x1*x1");

        // Zero has no leading form.
        assert!(matches!(
            NCPoly::zero(c).leading_form(),
            Err(Error::LeadingFormOfZero)
        ));
    }

    #[test]
    fn arithmetic_is_additive_and_cancels() {
        let c = ctx(5, &[1, 2]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let f = &(&x1 * &x2) + &x2.scale(3);
        let g = &f - &f;
        assert!(g.is_zero());
        let h = &f + &(-&f);
        assert!(h.is_zero());
        // (x1 + x2)(x1 - x2) = x1x1 - x1x2 + x2x1 - x2x2.
        let sum = &x1 + &x2;
        let diff = &x1 - &x2;
        let prod = &sum * &diff;
        assert_eq!(prod.coefficient(&Word::from_letters(vec![0, 0])), 1);
        assert_eq!(prod.coefficient(&Word::from_letters(vec![0, 1])), 4);
        assert_eq!(prod.coefficient(&Word::from_letters(vec![1, 0])), 1);
        assert_eq!(prod.coefficient(&Word::from_letters(vec![1, 1])), 4);
    }

    #[test]
    fn associativity_on_samples() {
        let c = ctx(3, &[1, 1, 2]);
        let a = &gen(&c, 0) + &gen(&c, 2).scale(2);
        let b = &(&gen(&c, 1) * &gen(&c, 0)) + &NCPoly::one(c.clone());
        let d = &gen(&c, 2) - &gen(&c, 1);
        assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
    }

    #[test]
    fn sandwich_matches_word_multiplication() {
        let c = ctx(3, &[1, 1]);
        let x1 = gen(&c, 0);
        let x2 = gen(&c, 1);
        let f = &(&x1 * &x2) + &NCPoly::constant(c.clone(), 2);
        let u = Word::from_letters(vec![1]);
        let v = Word::from_letters(vec![0, 0]);
        let by_parts = &(&NCPoly::from_word(c.clone(), u.clone()) * &f)
            * &NCPoly::from_word(c.clone(), v.clone());
        assert_eq!(f.sandwich(&u, &v), by_parts);
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = NCPoly::one(ctx(3, &[1, 1]));
        let b = NCPoly::one(ctx(3, &[1, 2]));
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch)));
        let c = NCPoly::one(ctx(5, &[1, 1]));
        assert!(matches!(a.checked_mul(&c), Err(Error::ContextMismatch)));
    }

    #[test]
    fn generator_index_is_bounds_checked() {
        let c = ctx(3, &[1, 1]);
        assert!(NCPoly::generator(c.clone(), 1).is_ok());
        assert!(NCPoly::generator(c, 2).is_err());
    }

    #[test]
    fn display_of_constants_and_zero() {
        let c = ctx(3, &[1]);
        assert_eq!(NCPoly::zero(c.clone()).to_string(), "0");
        assert_eq!(NCPoly::constant(c.clone(), 7).to_string(), "1");
        let f = &NCPoly::generator(c.clone(), 0).unwrap() + &NCPoly::constant(c, 2);
        assert_eq!(f.to_string(), "2 + x1");
    }
}
