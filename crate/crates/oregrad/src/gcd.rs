//! Multivariate polynomial gcd over F_p.
//!
//! The algorithm is the classical recursive one: pick the lowest-index
//! variable that occurs, split both inputs into content and primitive part
//! with respect to it, run a subresultant pseudo-remainder sequence on the
//! primitive parts, and recurse into the (fewer-variable) coefficient ring
//! for contents. The result is normalized monic under graded lex order.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::scalar::PrimeField;

/// Monic gcd of two polynomials. `gcd(f, 0) = monic(f)`; both inputs zero
/// is an error. The result divides both inputs exactly and is divisible by
/// every common divisor.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.field().require_same(&b.field())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    Ok(gcd_nonzero(a, b))
}

fn gcd_nonzero(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let field = a.field();
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(field);
    }
    if a == b {
        return a.monic();
    }

    // Strip the common power-product first: gcd(m1*a', m2*b') factors as
    // gcd(m1, m2) * gcd(a', b') once no variable divides a' or b' entirely.
    let ma = monomial_content(a);
    let mb = monomial_content(b);
    let common = ma.gcd(&mb);
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);

    let core = if a1.is_constant() || b1.is_constant() {
        MultiPoly::one(field)
    } else {
        let v = main_variable(&a1, &b1);
        gcd_in_variable(&a1, &b1, v)
    };
    core.mul_monomial(&common).monic()
}

/// Componentwise-minimum monomial dividing every term.
fn monomial_content(f: &MultiPoly) -> Monomial {
    let mut terms = f.terms();
    let first = terms.next().expect("nonzero polynomial").0.clone();
    terms.fold(first, |acc, (m, _)| acc.gcd(m))
}

fn strip_monomial(f: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return f.clone();
    }
    let terms: Vec<_> = f
        .terms()
        .map(|(t, c)| (t.try_div(m).expect("content divides every term"), c as u64))
        .collect();
    MultiPoly::from_terms(f.field(), &terms)
}

/// Lowest variable index occurring in either polynomial.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> u32 {
    let va = a.variables();
    let vb = b.variables();
    match (va.first(), vb.first()) {
        (Some(&x), Some(&y)) => x.min(y),
        (Some(&x), None) => x,
        (None, Some(&y)) => y,
        (None, None) => unreachable!("both inputs are non-constant"),
    }
}

fn gcd_in_variable(a: &MultiPoly, b: &MultiPoly, v: u32) -> MultiPoly {
    let field = a.field();
    let ua = UniView::split(a, v);
    let ub = UniView::split(b, v);

    let cont_a = ua.content();
    let cont_b = ub.content();
    let cont_gcd = gcd_nonzero(&cont_a, &cont_b);

    let pa = ua.divide_coefficients(&cont_a);
    let pb = ub.divide_coefficients(&cont_b);

    let prs_tail = subresultant_prs(pa, pb, field);
    let core = match prs_tail {
        None => MultiPoly::one(field), // sequence ended in a v-free value
        Some(last) => last.primitive_part().collect(v),
    };
    (&cont_gcd * &core).monic()
}

/// A polynomial viewed as univariate in one variable with polynomial
/// coefficients (dense in that variable, possibly with zero entries).
struct UniView {
    field: PrimeField,
    /// `coeffs[e]` multiplies `v^e`; the last entry is nonzero.
    coeffs: Vec<MultiPoly>,
}

impl UniView {
    fn split(f: &MultiPoly, v: u32) -> UniView {
        let field = f.field();
        let deg = f.degree_in(v) as usize;
        let mut coeffs = vec![MultiPoly::zero(field); deg + 1];
        let var = Monomial::variable(v);
        for (m, c) in f.terms() {
            let e = m.exponent(v) as usize;
            let rest = m.try_div(&var.pow(e as u32)).expect("exponent matches");
            coeffs[e].add_term(rest, c);
        }
        UniView { field, coeffs }
    }

    fn collect(&self, v: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (e, c) in self.coeffs.iter().enumerate() {
            let shift = Monomial::variable(v).pow(e as u32);
            out = out + c.mul_monomial(&shift);
        }
        out
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    fn leading(&self) -> &MultiPoly {
        self.coeffs.last().expect("nonempty")
    }

    fn trim(mut self) -> UniView {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, MultiPoly::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    /// Gcd of all coefficients (the content with respect to `v`).
    fn content(&self) -> MultiPoly {
        let mut acc: Option<MultiPoly> = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            acc = Some(match acc {
                None => c.monic(),
                Some(g) => {
                    if g.is_one() {
                        return g;
                    }
                    gcd_nonzero(&g, c)
                }
            });
        }
        acc.expect("nonzero polynomial")
    }

    fn divide_coefficients(&self, d: &MultiPoly) -> UniView {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    c.clone()
                } else {
                    c.try_div(d).expect("content divides every coefficient")
                }
            })
            .collect();
        UniView { field: self.field, coeffs }
    }

    fn primitive_part(&self) -> UniView {
        self.divide_coefficients(&self.content())
    }

    fn scale_by(&self, d: &MultiPoly) -> UniView {
        let coeffs = self.coeffs.iter().map(|c| c * d).collect();
        UniView { field: self.field, coeffs }
    }

    fn sub(&self, other: &UniView) -> UniView {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = MultiPoly::zero(self.field);
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a - b
            })
            .collect();
        UniView { field: self.field, coeffs }.trim()
    }

    /// Multiplies by `c * v^shift`.
    fn shift_scale(&self, c: &MultiPoly, shift: usize) -> UniView {
        let mut coeffs = vec![MultiPoly::zero(self.field); shift];
        coeffs.extend(self.coeffs.iter().map(|k| k * c));
        UniView { field: self.field, coeffs }
    }
}

/// Pseudo-remainder: the remainder of `lc(b)^(deg a - deg b + 1) * a`
/// divided by `b`, computed without fractions. Requires `deg a >= deg b`.
fn pseudo_remainder(a: &UniView, b: &UniView, field: PrimeField) -> UniView {
    let db = b.degree();
    let lb = b.leading().clone();
    let mut r = a.scale_by(&MultiPoly::one(field)); // clone
    let mut steps = a.degree() as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree() >= db {
        let dr = r.degree();
        let lr = r.leading().clone();
        r = r.scale_by(&lb).sub(&b.shift_scale(&lr, dr - db));
        steps -= 1;
    }
    // Keep the exact power of lc(b) the subresultant formulas expect.
    let mut i = steps;
    while i > 0 {
        r = r.scale_by(&lb);
        i -= 1;
    }
    r
}

/// Runs the subresultant pseudo-remainder sequence on two primitive
/// polynomials and returns the last remainder of positive degree in the main
/// variable, or `None` when the sequence reaches a v-free (nonzero) value,
/// which means the primitive gcd is trivial.
fn subresultant_prs(a: UniView, b: UniView, field: PrimeField) -> Option<UniView> {
    let (mut u, mut v) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let mut g = MultiPoly::one(field);
    let mut h = MultiPoly::one(field);
    loop {
        let delta = u.degree() - v.degree();
        let r = pseudo_remainder(&u, &v, field);
        if r.is_zero() {
            return Some(v);
        }
        if r.degree() == 0 {
            return None;
        }
        let divisor = &g * &h.pow(delta as u32);
        let reduced = r.divide_coefficients(&divisor);
        u = v;
        v = reduced;
        g = u.leading().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d as u32)
                .try_div(&h.pow(d as u32 - 1))
                .expect("subresultant h-update divides exactly"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn t(field: PrimeField, k: u32) -> MultiPoly {
        MultiPoly::variable(field, k)
    }

    /// Result must divide both inputs exactly.
    fn assert_divides_both(g: &MultiPoly, a: &MultiPoly, b: &MultiPoly) {
        if !a.is_zero() {
            let q = a.try_div(g).expect("gcd divides first input");
            assert_eq!(&q * g, *a);
        }
        if !b.is_zero() {
            let q = b.try_div(g).expect("gcd divides second input");
            assert_eq!(&q * g, *b);
        }
    }

    #[test]
    fn shared_linear_factor_over_f5() {
        // gcd((t0+t1)^2, (t0+t1)(t0+t2)) = t0 + t1.
        let f = fp(5);
        let s = t(f, 0) + t(f, 1);
        let a = s.pow(2);
        let b = &s * &(t(f, 0) + t(f, 2));
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g, s);
        assert_divides_both(&g, &a, &b);
    }

    #[test]
    fn zero_and_constant_conventions() {
        let f = fp(3);
        let a = (t(f, 0) + t(f, 1)).scale(2);
        assert_eq!(poly_gcd(&a, &MultiPoly::zero(f)).unwrap(), a.monic());
        assert_eq!(poly_gcd(&MultiPoly::zero(f), &a).unwrap(), a.monic());
        assert!(matches!(
            poly_gcd(&MultiPoly::zero(f), &MultiPoly::zero(f)),
            Err(Error::GcdOfZeros)
        ));
        assert!(poly_gcd(&a, &MultiPoly::constant(f, 2)).unwrap().is_one());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let f = fp(5);
        let cases = [
            (t(f, 0) + MultiPoly::constant(f, 1), t(f, 0) + MultiPoly::constant(f, 2)),
            (t(f, 0), t(f, 1)),
            (t(f, 0) * t(f, 1) + MultiPoly::one(f), t(f, 0) + t(f, 1)),
        ];
        for (a, b) in cases {
            assert!(poly_gcd(&a, &b).unwrap().is_one(), "gcd({a}, {b}) should be 1");
        }
    }

    #[test]
    fn power_product_factors_are_extracted() {
        let f = fp(3);
        let a = t(f, 0).pow(3) * t(f, 1);
        let b = t(f, 0) * t(f, 1).pow(2) * (t(f, 1) + t(f, 2));
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g, t(f, 0) * t(f, 1));
        assert_divides_both(&g, &a, &b);
    }

    #[test]
    fn planted_common_factor_divides_result() {
        // gcd(g*a, g*b) must be divisible by g and divide both products.
        let f = fp(5);
        let g0 = t(f, 1) + t(f, 2).pow(2) + MultiPoly::constant(f, 3);
        let a = t(f, 0).pow(2) + t(f, 1).scale(2);
        let b = t(f, 0) + t(f, 2) + MultiPoly::one(f);
        let ga = &g0 * &a;
        let gb = &g0 * &b;
        let d = poly_gcd(&ga, &gb).unwrap();
        assert_divides_both(&d, &ga, &gb);
        assert!(d.try_div(&g0.monic()).is_some(), "planted factor must divide the gcd");
    }

    #[test]
    fn agrees_with_euclid_for_univariate_inputs() {
        // Independent reference: classical Euclid over F_p[t0] with monic
        // remainders, on a grid of small dense polynomials.
        let f = fp(3);
        let polys: Vec<MultiPoly> = (1u64..=26)
            .map(|code| {
                // Encode a cubic from base-3 digits.
                let mut q = MultiPoly::zero(f);
                let mut c = code;
                for e in 0..3 {
                    q = q + t(f, 0).pow(e).scale((c % 3) as u32);
                    c /= 3;
                }
                q
            })
            .filter(|q| !q.is_zero())
            .collect();
        for a in &polys {
            for b in &polys {
                let got = poly_gcd(a, b).unwrap();
                let want = euclid_univariate(a, b);
                assert_eq!(got, want, "gcd({a}, {b})");
            }
        }
    }

    fn euclid_univariate(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = rem_univariate(&x, &y);
            x = y;
            y = r;
        }
        x.monic()
    }

    fn rem_univariate(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let field = a.field();
        let db = b.degree_in(0);
        let lb = b.coefficient(&Monomial::variable(0).pow(db));
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(0) >= db {
            let dr = r.degree_in(0);
            let lr = r.coefficient(&Monomial::variable(0).pow(dr));
            let factor = field.div(lr, lb).unwrap();
            let shift = MultiPoly::from_terms(
                field,
                &[(Monomial::variable(0).pow(dr - db), factor as u64)],
            );
            r = r - (&shift * b);
        }
        r
    }

    #[test]
    fn three_variable_content_recursion() {
        // Both inputs share (t1 + t2) through their t0-contents.
        let f = fp(2);
        let shared = t(f, 1) + t(f, 2);
        let a = &shared * &(t(f, 0).pow(2) + t(f, 1));
        let b = &shared * &(t(f, 0) + t(f, 2));
        let d = poly_gcd(&a, &b).unwrap();
        assert_divides_both(&d, &a, &b);
        assert!(d.try_div(&shared).is_some());
    }
}
