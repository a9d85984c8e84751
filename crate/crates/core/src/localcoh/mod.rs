//! Classes in `H^2_m(W_n(A))` through the Cech cokernel
//! `W_n(A[(xy)^-1]) / (W_n(A[x^-1]) + W_n(A[y^-1]))`.
//!
//! Every class has a unique representative whose components only contain
//! monomials `x^i y^j z^c` with `i, j < 0`. [`reduce`] finds it by peeling off
//! Teichmuller lifts position by position; subtracting `V^i[a]` leaves the
//! components below `i` alone, so one pass suffices.

mod class;
pub mod props;
pub mod verify;

pub use class::{
    frobenius_class, is_generator, is_torsion, pullback_class, r_class, reduce, reduce_with, scalar_mul_class,
    unit_multiple, v_class, CohClass, IdealSpec, PeelOrder,
};

use thiserror::Error;

use crate::chartring::ChartError;
use crate::witt::WittError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error("class lives over {found}, expected {expected}")]
    ChartMismatch { expected: String, found: String },
    #[error("component {index} is not residual: {elem}")]
    NotResidual { index: usize, elem: String },
    #[error("ideal generators must be polynomial, got {0}")]
    NonPolynomialGenerator(String),
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

#[cfg(test)]
mod tests;
