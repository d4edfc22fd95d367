use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("scenario has no satellites")]
    NoSatellites,

    #[error("invalid tolerance (rank_rel = {rank_rel}, geom_abs = {geom_abs})")]
    InvalidTolerance { rank_rel: f64, geom_abs: f64 },

    #[error("satellites {0} and {1} coincide")]
    CoincidentSatellites(usize, usize),

    #[error("inconsistent ranks: rank(A) = {rank_a}, rank(B) = {rank_b}")]
    InconsistentRanks { rank_a: usize, rank_b: usize },

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid search region: {0}")]
    InvalidRegion(String),

    #[error("cannot sample an empty quadric")]
    EmptyQuadric,

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
