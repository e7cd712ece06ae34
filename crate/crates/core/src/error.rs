use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("flow vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("commodity {commodity}: no simple path from {from} to {to}")]
    NoPath {
        commodity: usize,
        from: String,
        to: String,
    },

    #[error("commodity {commodity}: more than {cap} simple paths")]
    PathExplosion { commodity: usize, cap: usize },

    #[error("game has {count} pure profiles, cap is {cap}")]
    ProfileExplosion { count: u128, cap: usize },

    #[error("commodity {commodity} routes {routed}, demand is {demand}")]
    InfeasibleFlow {
        commodity: usize,
        routed: f64,
        demand: f64,
    },

    #[error("instance is not uniform affine")]
    NotUniformAffine,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("delay class is empty")]
    EmptyClass,

    #[error("iteration did not converge after {0} steps")]
    NonConvergence(usize),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}
