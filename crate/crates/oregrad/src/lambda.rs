//! Eventually periodic sequences of F_p residues.
//!
//! A [`LambdaSeq`] is a total function `k -> lambda_k` given by a finite
//! prefix followed by a repeating nonempty tail. Construction canonicalizes
//! the representation (minimal period, shortest prefix), so structural
//! equality coincides with equality as infinite sequences.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::PrimeField;

/// An eventually periodic sequence of residues mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSeq {
    field: PrimeField,
    prefix: Vec<u32>,
    /// Nonempty; repeats forever after the prefix.
    tail: Vec<u32>,
}

impl LambdaSeq {
    /// Builds a sequence, reducing entries mod p and canonicalizing: the
    /// tail is cut to its minimal period and prefix entries that already
    /// match the rotated tail are absorbed into it.
    pub fn new(field: PrimeField, prefix: &[u64], tail: &[u64]) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::Usage("lambda tail must be nonempty".into()));
        }
        let mut prefix: Vec<u32> = prefix.iter().map(|&v| field.from_u64(v)).collect();
        let mut tail: Vec<u32> = tail.iter().map(|&v| field.from_u64(v)).collect();

        // Minimal period of the tail.
        let n = tail.len();
        for d in 1..=n {
            if n % d == 0 && (d..n).all(|i| tail[i] == tail[i - d]) {
                tail.truncate(d);
                break;
            }
        }
        // Absorb prefix entries: if the last prefix entry equals the last
        // tail entry, the boundary can move left with the tail rotated.
        while let Some(&last) = prefix.last() {
            if last == *tail.last().expect("tail nonempty") {
                prefix.pop();
                tail.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(LambdaSeq { field, prefix, tail })
    }

    /// The all-zero sequence.
    pub fn zero(field: PrimeField) -> Self {
        LambdaSeq { field, prefix: Vec::new(), tail: vec![0] }
    }

    /// Parses the `"a,b,...;c,d,..."` form: prefix entries before the
    /// semicolon (possibly empty), tail entries after it. A spec without a
    /// semicolon is read as a pure tail.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let (prefix_text, tail_text) = match text.split_once(';') {
            Some((a, b)) => (a, b),
            None => ("", text),
        };
        let parse_list = |part: &str, what: &str| -> Result<Vec<u64>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|tok| {
                    tok.trim().parse::<u64>().map_err(|_| {
                        Error::Usage(format!("invalid {what} entry {tok:?} in lambda spec"))
                    })
                })
                .collect()
        };
        let prefix = parse_list(prefix_text, "prefix")?;
        let tail = parse_list(tail_text, "tail")?;
        if tail.is_empty() {
            return Err(Error::Usage("lambda spec needs a nonempty tail".into()));
        }
        LambdaSeq::new(field, &prefix, &tail)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The k-th entry.
    pub fn get(&self, k: usize) -> u32 {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.tail[(k - self.prefix.len()) % self.tail.len()]
        }
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.tail.len()
    }

    /// Guard used by operations that require one shared sequence.
    pub fn require_same(&self, other: &LambdaSeq) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LambdaMismatch)
        }
    }

    /// Guard for comparisons of distinct sequences over one prime field.
    pub fn require_same_field(&self, other: &LambdaSeq) -> Result<()> {
        self.field.require_same(&other.field)
    }
}

impl fmt::Display for LambdaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";")?;
        for (i, v) in self.tail.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
