use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("map resolution must be a positive finite number")]
    ZeroResolution,

    #[error("grids differ in dimensions or resolution")]
    GridMismatch,

    #[error("pose ({x:.3}, {y:.3}) lies outside the grid")]
    PoseOutOfBounds { x: f64, y: f64 },

    #[error("pose ({x:.3}, {y:.3}) lies inside an obstacle")]
    PoseInsideObstacle { x: f64, y: f64 },

    #[error(
        "invalid inflation radii: need 0 < inscribed ({inscribed}) <= inflation ({inflation})"
    )]
    InvalidRadii { inscribed: f64, inflation: f64 },

    #[error("start cell is not a reachable free cell")]
    StartUnreachable,

    #[error("distance must be non-negative, got {0}")]
    NegativeDistance(f64),

    #[error("score input {name} = {value} is outside [0, 1]")]
    InputOutOfRange { name: &'static str, value: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("no frontiers")]
    NoFrontiers,

    #[error("degenerate goal distance: denominator is zero")]
    DegenerateDistance,

    #[error("no path to goal")]
    NoPath,
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
