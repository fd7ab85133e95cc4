//! Arithmetic in the prime field F_p.
//!
//! The modulus is a computation-wide context: individual residues are plain
//! `u32` values in `0..p` and every structure (polynomial, rational function,
//! word polynomial) stores one [`PrimeField`] handle. Binary operations on
//! those structures reject operands built over different moduli.

use crate::error::{Error, Result};

/// A prime field F_p with `2 <= p < 2^31`, used as a shared context.
///
/// Residues are represented as `u32` values in `0..p`; all arithmetic is
/// carried out in `u64` so products never overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Creates the field, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    /// The modulus p.
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer to its residue.
    pub fn from_u64(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }

    /// Reduces a signed integer to its residue.
    pub fn from_i64(&self, n: i64) -> u32 {
        let p = self.p as i64;
        (n.rem_euclid(p)) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (a, p); p is prime so gcd is 1.
        let (mut r0, mut r1) = (a as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(s0))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Guard used by container types: errors unless both contexts agree.
    pub fn require_same(&self, other: &PrimeField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_primes_and_rejects_composites() {
        for p in [2u64, 3, 5, 7, 31, 65537, 2147483647] {
            assert!(PrimeField::new(p).is_ok(), "{p} should be accepted");
        }
        for n in [0u64, 1, 4, 9, 100, 65536, 2147483646] {
            assert!(matches!(PrimeField::new(n), Err(Error::NotPrime(_)) | Err(Error::ModulusOutOfRange(_))), "{n} should be rejected");
        }
        assert!(matches!(PrimeField::new(1 << 31), Err(Error::ModulusOutOfRange(_))));
    }

    #[test]
    fn field_axioms_hold_exhaustively_for_small_moduli() {
        for p in [2u32, 3, 5, 7] {
            let f = PrimeField::new(p as u64).unwrap();
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..p {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
                    for c in 0..p {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn arithmetic_near_the_modulus_bound_does_not_overflow() {
        let f = PrimeField::new(2147483647).unwrap();
        let a = 2147483646;
        assert_eq!(f.mul(a, a), 1); // (-1)^2 = 1
        assert_eq!(f.add(a, a), 2147483645);
        assert_eq!(f.pow(a, 2), 1);
    }

    #[test]
    fn fermat_little_theorem_on_samples() {
        let f = PrimeField::new(31).unwrap();
        for a in 1..31 {
            assert_eq!(f.pow(a, 31), a);
        }
    }
}
