//! Words in free-algebra generators and the weighted context they live in.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::PrimeField;

/// A word in the generators `x1..xn`, stored as 0-based letter indices.
/// The empty word is the multiplicative unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u16) -> Self {
        Word(vec![i])
    }

    pub fn from_letters(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl Ord for Word {
    /// Length first, then lexicographic by letter index. The full canonical
    /// word order prepends the weighted degree ([`FreeContext::cmp_words`]);
    /// this context-free part breaks ties within a degree.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Letters joined by `*`, each printed as `x<index+1>`; the empty word
    /// prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        Ok(())
    }
}

/// The ambient data of a weighted free algebra: coefficients in a prime
/// field and one positive weight per generator, in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeContext {
    field: PrimeField,
    weights: Vec<u32>,
}

impl FreeContext {
    pub fn new(field: PrimeField, weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Usage("at least one generator is required".into()));
        }
        if weights.len() > u16::MAX as usize {
            return Err(Error::Usage("too many generators".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Usage("generator weights must be positive".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Usage(
                "generator weights must be nondecreasing".into(),
            ));
        }
        Ok(FreeContext { field, weights })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: u16) -> u32 {
        self.weights[i as usize]
    }

    /// Weighted degree of a word: the sum of its letters' weights.
    pub fn wdeg(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&i| self.weights[i as usize]).sum()
    }

    /// The canonical word order: weighted degree, then length, then
    /// lexicographic by letter index.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.wdeg(a).cmp(&self.wdeg(b)).then_with(|| a.cmp(b))
    }

    /// All words of weighted degree `0..=max`, one bucket per degree, each
    /// bucket sorted ascending in the canonical order.
    pub fn words_up_to(&self, max: u32) -> Vec<Vec<Word>> {
        let mut levels: Vec<Vec<Word>> = Vec::with_capacity(max as usize + 1);
        levels.push(vec![Word::one()]);
        for d in 1..=max {
            let mut bucket = Vec::new();
            for (i, &w) in self.weights.iter().enumerate() {
                if w > d {
                    break;
                }
                for tail in &levels[(d - w) as usize] {
                    bucket.push(Word::letter(i as u16).concat(tail));
                }
            }
            // Within one degree the canonical order is (length, lex).
            bucket.sort_unstable();
            levels.push(bucket);
        }
        levels
    }

    /// All words of weighted degree exactly `d`.
    pub fn words_of_degree(&self, d: u32) -> Vec<Word> {
        self.words_up_to(d).pop().expect("levels are nonempty")
    }

    /// Guard for operations mixing two values: both must agree on the
    /// modulus and the weight vector.
    pub fn require_same(&self, other: &FreeContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}
