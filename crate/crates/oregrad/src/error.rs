//! Crate-wide error type.
//!
//! Domain failures (division by zero, missing roots, invalid certificates)
//! are kept distinct from input failures (expression or file syntax) so the
//! command-line layer can map them to different exit codes.

use thiserror::Error;

/// Errors produced by the algebraic kernel, the parsers and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested modulus is not a prime number.
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    /// The requested modulus does not fit the supported range `2 <= p < 2^31`.
    #[error("modulus {0} is out of range (need 2 <= p < 2^31)")]
    ModulusOutOfRange(u64),

    /// Two values built over different prime fields were combined.
    #[error("operands live over different prime fields")]
    ModulusMismatch,

    /// Two twisted polynomials with different coefficient sequences were combined.
    #[error("operands use different lambda sequences")]
    LambdaMismatch,

    /// Two free-algebra values with different contexts (modulus or weight
    /// vector) were combined.
    #[error("operands live in different free-algebra contexts")]
    ContextMismatch,

    /// Division by zero (scalar, polynomial or rational function).
    #[error("division by zero")]
    DivisionByZero,

    /// `gcd(0, 0)` is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    /// A p-th root was required but the value is not a p-th power.
    #[error("value has no p-th root")]
    NoPthRoot,

    /// The leading form of the zero polynomial is undefined.
    #[error("leading form of zero is undefined")]
    LeadingFormOfZero,

    /// The mechanically computed derivative disagreed with its closed form.
    /// This indicates an internal arithmetic bug, never bad user input.
    #[error("internal inconsistency: derivative disagrees with closed form for {0}")]
    InvariantInconsistency(String),

    /// An ideal-containment certificate failed verification.
    #[error("containment certificate invalid: {0}")]
    InvalidCertificate(String),

    /// Structure constants are malformed or define a non-associative product.
    #[error("inconsistent structure constants: {0}")]
    InconsistentStructure(String),

    /// An expression or input file failed to parse. `column` is 1-based and
    /// refers to the offending line.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// An expression parsed but is not meaningful for the requested kind
    /// (for example a free-algebra generator inside a field expression).
    #[error("invalid expression: {0}")]
    InvalidExpression(String),

    /// A malformed input file (relations, certificates, structure constants).
    #[error("invalid input file: {0}")]
    InvalidFile(String),

    /// Bad command-line usage.
    #[error("{0}")]
    Usage(String),

    /// Underlying I/O failure while reading an input file.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: input/syntax problems exit 2,
    /// everything else (domain failures) exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InvalidExpression(_)
            | Error::InvalidFile(_)
            | Error::Usage(_)
            | Error::NotPrime(_)
            | Error::ModulusOutOfRange(_) => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable error class used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::InvalidExpression(_) | Error::InvalidFile(_) => "parse",
            Error::Usage(_) | Error::NotPrime(_) | Error::ModulusOutOfRange(_) => "usage",
            _ => "domain",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
