//! Truncated p-typical Witt vectors `W_n(E)` over an `F_p`-algebra `E`.
//!
//! The structure polynomials are derived once per `(p, n)` from the ghost
//! components over `Z` and reduced mod `p`; after that all arithmetic happens
//! in `E` itself.

mod algebra;
pub mod identities;
pub mod props;
mod table;
mod vec;

pub use algebra::FpAlgebra;
pub use table::{ghost_component, ghost_of, witt_table, WittOp, WittPolyTable};
pub use vec::WittVec;

use thiserror::Error;

use crate::ffpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("Witt vectors need length at least 1")]
    ZeroLength,
    #[error("Witt lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("characteristics differ: {left} vs {right}")]
    CharacteristicMismatch { left: u32, right: u32 },
    #[error("components live in different rings")]
    ContextMismatch,
    #[error("restriction is undefined on W_1")]
    RestrictionOfLengthOne,
    #[error("ghost recursion failed for the {op} table at (p, n) = ({p}, {n}): {source}")]
    Derivation {
        p: u32,
        n: usize,
        op: &'static str,
        #[source]
        source: PolyError,
    },
}
