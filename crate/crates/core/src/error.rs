use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {index} is not finite: {value}")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("configuration size mismatch: expected {expected} atoms, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("a configuration needs at least one atom")]
    EmptyConfiguration,

    #[error("brute-force enumeration is limited to Q <= {max}, got Q = {q}")]
    EnumerationLimit { q: usize, max: usize },

    #[error(
        "anchors {first} and {second} coincide but their values are {distance:.3e} apart; \
         the map is not Lipschitz"
    )]
    NonLipschitz {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("point coincides with anchor {index}; the value there is already forced")]
    CoincidesWithAnchor { index: usize },

    #[error("the map has no anchors")]
    EmptyMap,

    #[error(
        "full profile enumeration needs {profiles} matching profiles, cap is {cap}; \
         enable heuristic mode or raise the cap"
    )]
    ProfileCapExceeded { profiles: u128, cap: u128 },

    #[error("grid certificate needs {evals} evaluations, cap is {cap}; coarsen the grid")]
    GridTooLarge { evals: u128, cap: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
