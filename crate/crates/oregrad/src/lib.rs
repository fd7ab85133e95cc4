//! Exact symbolic computation in differential polynomial rings over
//! `K = F_p(t0, t1, ...)` together with graded-ideal tables in weighted free
//! algebras.
//!
//! The crate has three layers:
//!
//! * commutative base field arithmetic: [`MultiPoly`], [`RationalFn`] and a
//!   monic multivariate gcd;
//! * the twisted polynomial ring `K[x; delta]` for the derivation
//!   `delta(t_k) = t_{k+1} + lambda_k * t0` driven by an eventually periodic
//!   scalar sequence [`LambdaSeq`], plus the separating invariants built
//!   from it;
//! * weighted free algebras over F_p: leading-form tables of two-sided
//!   ideals, filtration dimensions, generation checks from structure
//!   constants and chain comparison under containment certificates.
//!
//! Everything is immutable and deterministic; all arithmetic is exact.

pub mod cli;
pub mod error;
pub mod gcd;
pub mod gencheck;
pub mod graded;
pub mod isoinv;
pub mod lambda;
pub mod monomial;
pub mod ncpoly;
pub mod ore;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod scalar;
pub mod word;

pub use error::{Error, Result};
pub use gcd::poly_gcd;
pub use gencheck::{generation_check, GradedStructure, ProductBlock, StructureConstants};
pub use graded::{
    chain_compare, gr_ideal, quotient_dims, CertTerm, ChainDegreeReport, ContainmentCertificate,
    DegreeSlice, FiltrationDims, GradedIdealTable,
};
pub use ncpoly::NCPoly;
pub use word::{FreeContext, Word};
pub use isoinv::{
    almost_equal, candidate_c1, invariant_derivative, separation_sweep, AlmostEqualReport,
    InvariantReport,
};
pub use lambda::LambdaSeq;
pub use monomial::Monomial;
pub use ore::{t_word, GenExpr, OrePoly};
pub use parse::{
    eval_field, eval_free, eval_ore, parse_expr, parse_relation_file, parse_word, ExprAst,
    ExprKind,
};
pub use poly::MultiPoly;
pub use ratfn::RationalFn;
pub use scalar::PrimeField;
