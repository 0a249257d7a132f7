//! Numerical laboratory for the parabolic fractional obstacle problem
//!
//!   min{ u_t + (-Δ)^s u, u - ψ } = 0   on a periodic 1-D grid,
//!
//! with three discrete realizations of the fractional Laplacian (Fourier
//! multiplier, singular-integral quadrature, Dirichlet-to-Neumann trace of a
//! weighted extension), two time-stepping schemes (implicit resolvent with
//! projection, and exponential penalization), closed-form reference
//! solutions, and a regularity lab that fits free-boundary decay and Hölder
//! exponents out of solver output.

pub mod extension;
pub mod grid;
pub mod oracles;
pub mod payoff;
pub mod quadrature;
pub mod regularity;
pub mod selftest;
pub mod spectral;
pub mod stepper;

pub use grid::{Field, Grid1D};
pub use payoff::PayoffSpec;
pub use quadrature::QuadratureOp;
pub use spectral::SpectralOp;
// pub use stepper::{ProblemSpec, Scheme, SchemeConfig, Solution};

use thiserror::Error;

/// Errors produced by the solver and analysis modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter is outside its documented range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Two fields (or a field and an operator) live on different grids.
    #[error("shape error: {0}")]
    Shape(String),
    /// Non-finite data where finite values are required.
    #[error("data error: {0}")]
    Data(String),
    /// A numerical procedure failed (non-convergence, overflow, ...).
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A configuration is internally inconsistent (stability constraints,
    /// insufficient resolution, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// The requested fit has degenerate data (all-zero radii, constant
    /// series, empty free boundary, ...).
    #[error("degenerate data: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
