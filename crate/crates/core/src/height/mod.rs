//! Heights of RDP K3 surfaces and of morphisms between them: the coindex
//! correspondence, realizability, quotient tables, point counting and the
//! ordinarity test.

mod count;
pub mod gf;
mod newton;
mod theorem;
mod value;

pub use count::{count_points, weighted_degree_check, PolySpec, SurfaceModel};
pub use newton::{
    a_values, elementary_from_power_sums, height_gt_test, ordinary_test, power_sums_from_elementary, synthesize_counts,
    HeightTest,
};
pub use theorem::{
    dual_pairs, etale_quotient_height, etale_table, excluded_by_frobenius, height_from_rdp, height_sequence,
    is_connected_subdiagram, partial_resolution_coindex, picard_bound_ok, quotient_height, quotient_table,
    rdp_realizable_on_k3, taut_realizable, DualPair, EtaleRow, GroupScheme, QuotientRow, Realizability, SingConfig,
};
pub use value::{compose_heights, HeightValue};

use thiserror::Error;

use crate::dynkin::{Dynkin, DynkinError, RdpSpec};
use crate::ffpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{dynkin} is taut in characteristic {p}")]
    Taut { p: u32, dynkin: Dynkin },
    #[error("{dynkin} is not taut in characteristic {p}")]
    NotTaut { p: u32, dynkin: Dynkin },
    #[error("RDPs of type {0} do not occur on RDP K3 surfaces")]
    DoesNotOccur(RdpSpec),
    #[error("{sub} is not a connected subdiagram of {dynkin}")]
    NotSubdiagram { sub: Dynkin, dynkin: Dynkin },
    #[error("height {0} is outside 1..=10")]
    OutOfRange(u32),
    #[error("configuration not in the table: {0}")]
    NotInTable(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("search guard exceeded: {0}")]
    Guard(String),
    #[error("bad surface model: {0}")]
    BadModel(String),
    #[error("weighted degree {degree} differs from the weight sum {weight_sum}")]
    DegreeMismatch { degree: u64, weight_sum: u64 },
}

#[cfg(test)]
mod tests;
