//! Independent numerical machinery: log-gamma, Gauss-Legendre quadrature,
//! finite-difference discretization of the rescaled operator and a
//! Sturm-sequence eigenvalue solver.

mod gamma;
mod quadrature;
mod tridiag;

pub use gamma::log_gamma;
pub use quadrature::{integrate, integrate_over_domain, GaussLegendre, DEFAULT_PANELS, GAUSS_ORDER};
pub use tridiag::{discretize_delta, richardson, Grid, TridiagonalOperator};
