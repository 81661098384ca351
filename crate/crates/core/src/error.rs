use num_complex::Complex64;
use thiserror::Error;

use crate::bessel::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{family:?}_{order}({z}) is outside the supported domain")]
    Domain { family: Family, order: i32, z: Complex64 },

    #[error("order {order} exceeds the configured maximum {max}")]
    OrderOverflow { order: i32, max: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Energy at or beyond the edge of the bound-state window.
    #[error("energy {e} is not below the threshold {edge} of the {region} region")]
    Threshold { e: f64, edge: f64, region: &'static str },

    #[error("null space has dimension {0}; expected a single vanishing singular value")]
    RankDeficient(usize),

    #[error("adaptive quadrature did not converge (estimated error {0:e})")]
    Quadrature(f64),

    #[error("ODE integration exceeded {0} steps")]
    Stiffness(usize),

    #[error("radial equations are singular at r = 0")]
    Singular,

    #[error("non-finite intermediate value: {0}")]
    NonFinite(&'static str),
}
