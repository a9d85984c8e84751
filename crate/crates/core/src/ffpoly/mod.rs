//! Exact arithmetic over prime fields and the integers, and sparse
//! multivariate polynomials over either.

mod field;
mod parse;
mod poly;

pub use field::{is_prime, CoeffRing, Fp, Integers, PrimeField, MAX_PRIME};
pub use parse::{identifiers, parse_poly, parse_poly_infer, parse_with, ExprBuilder};
pub use poly::{var_names, FpPoly, Monomial, MultiPoly, ZPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("term {term} is not divisible by {divisor}")]
    NotDivisible { term: String, divisor: String },
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("negative exponent at offset {pos}; Laurent monomials are only allowed in chart elements")]
    NegativeExponent { pos: usize },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}
