use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// A term supported on a proper subinterval was paired with a measure
    /// carrying a Cantor component.
    #[error("term on [{start}, {end}) cannot be integrated against a Cantor component")]
    CantorRestriction { start: f64, end: f64 },

    #[error("measure has zero total mass")]
    ZeroMass,

    #[error("order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("moment table of order {available} cannot serve order {requested}")]
    MomentsTooShort { requested: usize, available: usize },

    #[error("atoms at {left} and {right} cannot receive disjoint extension intervals")]
    AtomTooClose { left: f64, right: f64 },

    #[error("Parseval extension infeasible: {0}")]
    ParsevalInfeasible(String),

    #[error("no value available at atom {0}")]
    MissingAtomValue(f64),

    #[error("singular and absolutely continuous parts are not separated: {0}")]
    NotSeparated(String),

    #[error("singular truncation {available} is below the requested order {requested}")]
    TruncationOrder { requested: usize, available: usize },

    #[error("Gram system is numerically singular even after ridge regularization")]
    SingularGram,

    #[error("family is not a frame (smallest frame-operator eigenvalue {smallest_eigenvalue:e})")]
    NotAFrame { smallest_eigenvalue: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
