use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series with vanishing constant term")]
    ZeroConstantTerm,

    #[error("composition requires an inner series with zero constant term (got |c0| = {0})")]
    NonvanishingInner(f64),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("point with |z| = {0} lies outside the open unit disk")]
    OutsideDisk(f64),

    #[error("point must be nonzero")]
    ZeroPoint,

    #[error("derivative vanishes (|f'(z)| = {modulus:e}) at z = {re} + {im}i")]
    VanishingDerivative { re: f64, im: f64, modulus: f64 },

    #[error(
        "alpha = {alpha} and z0 = {z0} satisfy neither |alpha| <= pi/6 nor |z0| < delta = {delta}"
    )]
    ConditionViolation { alpha: f64, z0: f64, delta: f64 },

    #[error("alpha = {0} is outside (-pi/2, pi/2)")]
    AlphaOutOfRange(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("evaluation failed at z = {re} + {im}i: {source}")]
    EvaluationFailure {
        re: f64,
        im: f64,
        #[source]
        source: Box<Error>,
    },
}
