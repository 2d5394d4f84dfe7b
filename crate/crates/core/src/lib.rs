//! Relativistic Pöschl-Teller systems and their supersymmetric structure.
//!
//! The crate provides the model parametrization and energy spectra
//! ([`model`]), exact eigenfunctions in the form `cos^κ(ŵx)·P(sin ŵx)`
//! ([`wavefun`]), the lowering/raising operators and the shape-invariance
//! hierarchy ([`ladder`]), an independent finite-difference and quadrature
//! oracle ([`numeric`]) and a verification driver that checks every analytic
//! relation against those oracles ([`verify`]).
//!
//! Numerical code is generic over [`Real`]; the aliases below fix the scalar
//! to `f64`, which is what the tolerance contracts refer to.

pub mod error;
pub mod ladder;
pub mod model;
pub mod numeric;
mod poly;
pub mod scalar;
pub mod verify;
pub mod wavefun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ModelParams = model::ModelParams<f64>;
pub type Spectrum = model::Spectrum<f64>;
pub type Level = model::Level<f64>;
pub type Potential = model::Potential<f64>;
pub type Wavefunction = wavefun::Wavefunction<f64>;
pub type Probe = wavefun::Probe<f64>;
pub type LadderContext = ladder::LadderContext<f64>;
pub type DeltaImage = ladder::DeltaImage<f64>;
pub type ChainStep = ladder::ChainStep<f64>;
pub type Grid = numeric::Grid<f64>;
pub type TridiagonalOperator = numeric::TridiagonalOperator<f64>;
