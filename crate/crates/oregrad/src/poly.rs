//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under the graded
//! lexicographic order, so the representation is canonical: equal maps mean
//! equal polynomials, the last entry is the leading term and no stored
//! coefficient is zero. Every polynomial carries its [`PrimeField`] context;
//! mixing moduli is rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::monomial::Monomial;
use crate::scalar::PrimeField;

/// A polynomial in `F_p[t0, t1, ...]` in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    // Invariant: no zero coefficients.
    terms: BTreeMap<Monomial, u32>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField) -> Self {
        MultiPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    /// The constant polynomial `c mod p`.
    pub fn constant(field: PrimeField, c: u64) -> Self {
        let mut poly = Self::zero(field);
        poly.add_term(Monomial::one(), field.from_u64(c));
        poly
    }

    /// The variable `t_k`.
    pub fn variable(field: PrimeField, k: u32) -> Self {
        let mut poly = Self::zero(field);
        poly.add_term(Monomial::variable(k), 1);
        poly
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, reducing
    /// coefficients mod p and merging duplicates.
    pub fn from_terms(field: PrimeField, terms: &[(Monomial, u64)]) -> Self {
        let mut poly = Self::zero(field);
        for (m, c) in terms {
            poly.add_term(m.clone(), field.from_u64(*c));
        }
        poly
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.get(&Monomial::one()) == Some(&1)
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value when [`is_constant`](Self::is_constant) holds.
    pub fn constant_value(&self) -> Option<u32> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.values().next().copied()
        } else {
            None
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest exponent of `t_k` over all terms (0 when absent).
    pub fn degree_in(&self, k: u32) -> u32 {
        self.terms.keys().map(|m| m.exponent(k)).max().unwrap_or(0)
    }

    /// Leading term under graded lex order; `None` for zero.
    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// All variable indices that occur in some term, ascending.
    pub fn variables(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self.terms.keys().flat_map(|m| m.variables().collect::<Vec<_>>()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(*o.get(), c);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field.require_same(&other.field)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.field.require_same(&other.field)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.require_same(&other.field)?;
        let mut out = Self::zero(self.field);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: u32) -> Self {
        let c = self.field.from_u64(c as u64);
        if c == 0 {
            return Self::zero(self.field);
        }
        let terms = self.terms.iter().map(|(m, &k)| (m.clone(), self.field.mul(k, c))).collect();
        MultiPoly { field: self.field, terms }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(k, &c)| (k.mul(m), c)).collect();
        MultiPoly { field: self.field, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the graded-lex leading coefficient becomes 1.
    /// Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    /// Exact division: returns `q` with `self = q * divisor`, or `None`
    /// when no such polynomial exists.
    ///
    /// # Panics
    /// Panics when `divisor` is zero or over a different field.
    pub fn try_div(&self, divisor: &Self) -> Option<Self> {
        self.field.require_same(&divisor.field).expect("matching fields");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dm, dc) = divisor.leading_term().expect("divisor is nonzero");
        let (dm, dc) = (dm.clone(), dc);
        let dc_inv = self.field.inv(dc).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.try_div(&dm)?;
            let qc = self.field.mul(rc, dc_inv);
            quot.add_term(qm.clone(), qc);
            // rem -= (qc * qm) * divisor
            for (m, c) in divisor.terms() {
                rem.add_term(qm.mul(m), self.field.neg(self.field.mul(qc, c)));
            }
        }
        Some(quot)
    }

    /// Partial derivative with respect to `t_k`.
    pub fn partial_derivative(&self, k: u32) -> Self {
        let mut out = Self::zero(self.field);
        for (m, c) in self.terms() {
            let e = m.exponent(k);
            if e == 0 {
                continue;
            }
            let coeff = self.field.mul(c, self.field.from_u64(e as u64));
            if coeff == 0 {
                continue;
            }
            let lowered = m
                .try_div(&Monomial::variable(k))
                .expect("exponent is positive");
            out.add_term(lowered, coeff);
        }
        out
    }

    /// The unique `g` with `g^p = self`, when it exists. In characteristic p
    /// this requires every exponent to be divisible by p; coefficients need
    /// no adjustment because `c^p = c` in F_p.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.field.modulus();
        let mut out = Self::zero(self.field);
        for (m, c) in self.terms() {
            out.add_term(m.try_root(p)?, c);
        }
        Some(out)
    }

    /// Writes the polynomial as a sum `sum_i c_i * m_i` where each `c_i` is a
    /// polynomial whose exponents are all divisible by p (a p-th power) and
    /// each `m_i` is a distinct monomial with all exponents below p.
    /// Pairs are returned in ascending order of `m_i`; none of the `c_i` is
    /// zero unless the input is zero (then the list is empty).
    pub fn frobenius_decompose(&self) -> Vec<(MultiPoly, Monomial)> {
        let p = self.field.modulus();
        let mut groups: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in self.terms() {
            let (high, low) = m.split_exponents(p);
            groups
                .entry(low)
                .or_insert_with(|| MultiPoly::zero(self.field))
                .add_term(high, c);
        }
        groups.into_iter().map(|(m, c)| (c, m)).collect()
    }

    /// Substitutes `t_k -> value` for every variable listed, evaluating the
    /// polynomial at a scalar point. Variables not listed must not occur.
    pub fn evaluate(&self, point: &BTreeMap<u32, u32>) -> u32 {
        let mut total = 0u32;
        for (m, c) in self.terms() {
            let mut v = c;
            for (var, e) in m.iter() {
                let x = *point.get(&var).expect("every variable must be assigned");
                v = self.field.mul(v, self.field.pow(x, e as u64));
            }
            total = self.field.add(total, v);
        }
        total
    }
}

macro_rules! forward_checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("operands share one prime field")
            }
        }
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_checked_binop!(Add, add, checked_add);
forward_checked_binop!(Sub, sub, checked_sub);
forward_checked_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), self.field.neg(c))).collect();
        MultiPoly { field: self.field, terms }
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in descending graded-lex order joined by " + ",
    /// coefficients printed as residues in `0..p` (a leading `1*` is omitted
    /// for non-constant terms). Parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn tvar(field: PrimeField, k: u32) -> MultiPoly {
        MultiPoly::variable(field, k)
    }

    #[test]
    fn freshman_dream_squares_over_f2() {
        let f = fp(2);
        let sum = tvar(f, 0) + tvar(f, 1);
        let sq = &sum * &sum;
        let expected = tvar(f, 0).pow(2) + tvar(f, 1).pow(2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn product_of_shifted_variables_over_f3() {
        // (t0 + 2)(t0 + 1) = t0^2 + 3 t0 + 2 = t0^2 + 2 over F_3.
        let f = fp(3);
        let a = tvar(f, 0) + MultiPoly::constant(f, 2);
        let b = tvar(f, 0) + MultiPoly::constant(f, 1);
        let expected = tvar(f, 0).pow(2) + MultiPoly::constant(f, 2);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn arithmetic_is_commutative_and_distributive_on_samples() {
        let f = fp(5);
        let a = MultiPoly::from_terms(f, &[(Monomial::from_pairs(&[(0, 2)]), 3), (Monomial::variable(2), 1), (Monomial::one(), 4)]);
        let b = MultiPoly::from_terms(f, &[(Monomial::from_pairs(&[(0, 1), (2, 1)]), 2), (Monomial::one(), 1)]);
        let c = MultiPoly::from_terms(f, &[(Monomial::variable(1), 4)]);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        let a = MultiPoly::one(fp(2));
        let b = MultiPoly::one(fp(3));
        assert!(matches!(a.checked_add(&b), Err(Error::ModulusMismatch)));
        assert!(matches!(a.checked_mul(&b), Err(Error::ModulusMismatch)));
    }

    #[test]
    fn exact_division_round_trips_and_rejects_non_divisors() {
        let f = fp(5);
        let a = (tvar(f, 0) + tvar(f, 1)).pow(2);
        let b = tvar(f, 0) + tvar(f, 1);
        let q = a.try_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        let c = tvar(f, 0) + tvar(f, 2);
        assert!(a.try_div(&c).is_none());
        // Dividing by a constant scales.
        let half = a.try_div(&MultiPoly::constant(f, 2)).unwrap();
        assert_eq!(half, a.scale(3)); // 2 * 3 = 1 mod 5
    }

    #[test]
    fn partial_derivative_basic_rules() {
        let f = fp(3);
        // d/dt0 (t0^2 t1 + t1) = 2 t0 t1
        let poly = tvar(f, 0).pow(2) * tvar(f, 1) + tvar(f, 1);
        let expected = (tvar(f, 0) * tvar(f, 1)).scale(2);
        assert_eq!(poly.partial_derivative(0), expected);
        // d/dt0 (t0^3) = 3 t0^2 = 0 in characteristic 3.
        assert!(tvar(f, 0).pow(3).partial_derivative(0).is_zero());
        // Derivative in an absent variable vanishes.
        assert!(poly.partial_derivative(7).is_zero());
    }

    #[test]
    fn derivative_satisfies_leibniz_rule_on_samples() {
        let f = fp(5);
        let a = tvar(f, 0).pow(2) + (tvar(f, 1) * tvar(f, 2)).scale(3);
        let b = tvar(f, 0) + tvar(f, 1).pow(3) + MultiPoly::constant(f, 2);
        for k in 0..3 {
            let lhs = (&a * &b).partial_derivative(k);
            let rhs = a.partial_derivative(k) * b.clone() + a.clone() * b.partial_derivative(k);
            assert_eq!(lhs, rhs, "Leibniz fails for t{k}");
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = fp(3);
        let g = tvar(f, 0).pow(2) + (tvar(f, 1) * tvar(f, 4)).scale(2) + MultiPoly::constant(f, 1);
        let cube = g.pow(3);
        assert_eq!(cube.pth_root(), Some(g));
        // t0^2 has no cube root.
        assert_eq!(tvar(f, 0).pow(2).pth_root(), None);
        // Constants are their own roots (Fermat).
        assert_eq!(MultiPoly::constant(f, 2).pth_root(), Some(MultiPoly::constant(f, 2)));
    }

    #[test]
    fn frobenius_decomposition_matches_frozen_example() {
        // Over F_2: t0^2 t1^3 + t1 = (t0^2 t1^2 + 1) * t1.
        let f = fp(2);
        let poly = tvar(f, 0).pow(2) * tvar(f, 1).pow(3) + tvar(f, 1);
        let parts = poly.frobenius_decompose();
        assert_eq!(parts.len(), 1);
        let (coeff, m) = &parts[0];
        assert_eq!(*m, Monomial::variable(1));
        assert_eq!(*coeff, tvar(f, 0).pow(2) * tvar(f, 1).pow(2) + MultiPoly::one(f));
    }

    #[test]
    fn frobenius_decomposition_recombines_and_parts_are_pth_powers() {
        let f = fp(3);
        let poly = tvar(f, 0).pow(7) * tvar(f, 1)
            + tvar(f, 2).pow(3).scale(2)
            + tvar(f, 0) * tvar(f, 1)
            + MultiPoly::constant(f, 2);
        let parts = poly.frobenius_decompose();
        let mut rebuilt = MultiPoly::zero(f);
        for (c, m) in &parts {
            assert!(c.pth_root().is_some(), "coefficient must be a p-th power");
            assert!(m.iter().all(|(_, e)| e < 3), "reduced exponents stay below p");
            rebuilt = rebuilt + c.mul_monomial(m);
        }
        assert_eq!(rebuilt, poly);
    }

    #[test]
    fn canonical_text_examples() {
        let f = fp(5);
        assert_eq!(MultiPoly::zero(f).to_string(), "0");
        assert_eq!(MultiPoly::constant(f, 9).to_string(), "4");
        let poly = tvar(f, 0).pow(2) + tvar(f, 1).scale(2) + MultiPoly::constant(f, 3);
        assert_eq!(poly.to_string(), "t0^2 + 2*t1 + 3");
    }
}
