//! Sparse monomials in the commuting variables `t0, t1, t2, ...`.
//!
//! A monomial stores `(variable index, exponent)` pairs sorted by index with
//! all exponents positive. The ordering is graded lexicographic: higher total
//! degree wins, ties are broken lexicographically with `t0 > t1 > ...`.

use std::cmp::Ordering;
use std::fmt;

/// A power product of the variables `t_k`. The empty monomial is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // Invariant: sorted strictly by variable index, exponents nonzero.
    powers: Vec<(u32, u32)>,
}

impl Monomial {
    /// The monomial `1`.
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    /// The single variable `t_k`.
    pub fn variable(k: u32) -> Self {
        Monomial { powers: vec![(k, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging duplicates and dropping zero exponents.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut powers: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        let mut sorted = pairs.to_vec();
        sorted.sort_by_key(|&(v, _)| v);
        for (v, e) in sorted {
            if e == 0 {
                continue;
            }
            match powers.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => powers.push((v, e)),
            }
        }
        Monomial { powers }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    /// Exponent of `t_k` (zero when absent).
    pub fn exponent(&self, k: u32) -> u32 {
        self.powers
            .binary_search_by_key(&k, |&(v, _)| v)
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    /// Iterates over `(variable, exponent)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.powers.iter().copied()
    }

    /// All variable indices that occur.
    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (va, ea) = self.powers[i];
            let (vb, eb) = other.powers[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    powers.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        Monomial { powers }
    }

    /// Exact quotient `self / other`, or `None` when some exponent of
    /// `other` exceeds the matching exponent of `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut powers = Vec::with_capacity(self.powers.len());
        let mut i = 0;
        for &(vb, eb) in &other.powers {
            // Copy variables of self below vb unchanged.
            while i < self.powers.len() && self.powers[i].0 < vb {
                powers.push(self.powers[i]);
                i += 1;
            }
            if i >= self.powers.len() || self.powers[i].0 != vb || self.powers[i].1 < eb {
                return None;
            }
            let rem = self.powers[i].1 - eb;
            if rem > 0 {
                powers.push((vb, rem));
            }
            i += 1;
        }
        powers.extend_from_slice(&self.powers[i..]);
        Some(Monomial { powers })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (va, ea) = self.powers[i];
            let (vb, eb) = other.powers[j];
            match va.cmp(&vb) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    powers.push((va, ea.min(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { powers }
    }

    /// Raises every exponent to `n` times itself.
    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial { powers: self.powers.iter().map(|&(v, e)| (v, e * n)) .collect() }
    }

    /// Divides every exponent by `n` when all are divisible.
    pub fn try_root(&self, n: u32) -> Option<Monomial> {
        let mut powers = Vec::with_capacity(self.powers.len());
        for &(v, e) in &self.powers {
            if e % n != 0 {
                return None;
            }
            powers.push((v, e / n));
        }
        Some(Monomial { powers })
    }

    /// Splits each exponent `e` as `n*q + r` with `0 <= r < n` and returns
    /// the pair (monomial of the `n*q` parts, monomial of the `r` parts).
    pub fn split_exponents(&self, n: u32) -> (Monomial, Monomial) {
        let mut high = Vec::new();
        let mut low = Vec::new();
        for &(v, e) in &self.powers {
            let (q, r) = (e / n, e % n);
            if q > 0 {
                high.push((v, q * n));
            }
            if r > 0 {
                low.push((v, r));
            }
        }
        (Monomial { powers: high }, Monomial { powers: low })
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `t0 > t1 > t2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk both exponent lists; the first variable index where the
        // exponents differ decides: a positive exponent on a lower index
        // (a "bigger" variable) makes the monomial larger.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.powers.get(i), other.powers.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "t{v}")?;
            } else {
                write!(f, "t{v}^{e}")?;
            }
        }
        Ok(())
    }
}
