use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dyadic rational: {0}")]
    InvalidDyadic(String),

    #[error("invalid potential spec: {0}")]
    InvalidSpec(String),

    #[error("glued loop weights differ by {difference:e}, more than their combined error {tolerance:e}")]
    WeightMismatch { difference: f64, tolerance: f64 },

    #[error("edge labels do not form a closed walk: {0}")]
    NotACycle(String),

    #[error("graph has no cycle")]
    NoCycle,

    #[error("tail condition fails for (d, d') = ({d}, {dprime}) in both orientations")]
    InapplicableTriple { d: u32, dprime: u32 },

    #[error("orbit point {0} lies on the pole of the potential")]
    PoleOnOrbit(String),

    #[error("policy iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
