use thiserror::Error;

/// Errors raised by the model, wavefunction and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("k must exceed 1 (got {0})")]
    KTooSmall(f64),
    #[error("k must not exceed 1e8 (got {0})")]
    KTooLarge(f64),
    #[error("omega must be positive (got {0})")]
    NonPositiveOmega(f64),
    #[error("epsilon must be positive (got {0})")]
    NonPositiveEpsilon(f64),
    #[error("mass must be positive (got {0})")]
    NonPositiveMass(f64),
    #[error("position {x} is outside the domain of half-width {half_width}")]
    OutsideDomain { x: f64, half_width: f64 },
    #[error("hypergeometric lower parameter {0} is a non-positive integer")]
    PochhammerPole(f64),
    #[error("envelope exponent {found} does not match the operator (expected {expected})")]
    EnvelopeMismatch { expected: f64, found: f64 },
    #[error("wavefunctions live on different domains (hat_omega {0} vs {1})")]
    DomainMismatch(f64, f64),
    #[error("level n = {0} exceeds the supported maximum of {max}", max = crate::wavefun::MAX_LEVEL)]
    LevelTooHigh(usize),
    #[error("grid needs at least 16 interior points (got {0})")]
    GridTooSmall(usize),
    #[error("requested {requested} eigenvalues of a {size}x{size} operator")]
    TooManyEigenvalues { requested: usize, size: usize },
    #[error("log-gamma needs a positive argument (got {0})")]
    NonPositiveGammaArgument(f64),
    #[error("non-finite value: {0}")]
    NonFinite(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
