//! Chart rings `F_p[u^±1, v^±1][w] / (monic relation)` in which the Cech
//! complex of an RDP or of a smooth point is computed, ring maps between
//! them, and the equation catalog.

mod catalog;
mod map;
mod ring;

pub use catalog::{
    equation_count, non_taut_types, quotient_map_chart, rdp_chart, rdp_chart_from_key, table_entries, QuotientCase,
    QuotientChart, RdpChart, SignConvention, MAX_A_INDEX,
};
pub use map::RingMap;
pub use ring::{ChartElem, ChartRing, Mono};

use thiserror::Error;

use crate::ffpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("chart rank {0} exceeds 16")]
    RankTooLarge(usize),
    #[error("chart {0} has rank 1 and no w")]
    NoW(String),
    #[error("elements of different charts: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("{0} is not a monomial unit")]
    NotUnit(String),
    #[error("bad ring map image: {0}")]
    BadImage(String),
    #[error("map {map} does not respect the source relation (defect {defect})")]
    RelationNotRespected { map: String, defect: String },
    #[error("{0} is not in the chart catalog")]
    NotInCatalog(String),
    #[error("the alternate equation only exists for D_N^0 in characteristic 2, not {0}")]
    BadVariant(String),
    #[error("bad catalog key: {0}")]
    BadKey(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[cfg(test)]
mod tests;
