use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadrature(String),

    #[error("support is unbounded along {0}")]
    UnboundedSupport(&'static str),

    #[error("Bessel evaluation outside supported range (order {order}, argument {x})")]
    BesselRange { order: i64, x: f64 },

    #[error("polar angle of the zero lattice vector is undefined")]
    ZeroLatticeVector,

    #[error("{what}: tail magnitude {magnitude:.3e} exceeds tolerance {tolerance:.3e}")]
    TailNotConverged {
        what: &'static str,
        magnitude: f64,
        tolerance: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
