//! Payoff constructors: globally Lipschitz, semiconvex obstacle profiles
//! with bounded and Hölder-continuous fractional Laplacian.

use crate::grid::{Field, Grid1D};
use crate::{Error, Result};
use statrs::function::erf::erf;

/// Obstacle profile families.
///
/// All variants generate fields that are globally Lipschitz and C-semiconvex
/// with a finite, computable constant. The put payoff is mollified at scale
/// `smoothing`: the raw kink would make `(-Δ)^s ψ` unbounded for `s ≥ 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PayoffSpec {
    /// Gaussian-mollified symmetric hinge profile
    /// `(strike - |x - center|)^+ * G_smoothing`, centered so it fits the
    /// periodic box. The one-sided put payoff is incompatible with periodic
    /// truncation (value mismatch at the wrap); the symmetric profile keeps
    /// the strike kink geometry and contact structure.
    SmoothedPut { strike: f64, smoothing: f64 },
    /// `height * exp(-((x-center)/width)^2)`.
    GaussianBump { center: f64, width: f64, height: f64 },
    /// C-infinity bump supported on `|x-center| < width`:
    /// `height * exp(1 - 1/(1 - (u/width)^2))`.
    CompactBump { center: f64, width: f64, height: f64 },
    Zero,
}

/// Gaussian-mollified hinge `E[ (v + smoothing*Z)^+ ]`:
/// `v Φ(v/σ) + σ φ(v/σ)` with the standard normal cdf/pdf.
fn smooth_hinge(v: f64, sigma: f64) -> f64 {
    let z = v / sigma;
    let cdf = 0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2));
    let pdf = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    v * cdf + sigma * pdf
}

/// Mollified tent: second difference of the mollified hinge.
fn smoothed_tent(u: f64, strike: f64, sigma: f64) -> f64 {
    smooth_hinge(u + strike, sigma) - 2.0 * smooth_hinge(u, sigma) + smooth_hinge(u - strike, sigma)
}

/// Samples the payoff at the grid nodes.
pub fn sample_payoff(spec: &PayoffSpec, grid: &Grid1D) -> Result<Field> {
    let center = 0.5 * (grid.x_min() + grid.x_max());
    match *spec {
        PayoffSpec::Zero => Ok(Field::zeros(*grid)),
        PayoffSpec::SmoothedPut { strike, smoothing } => {
            if !(smoothing > 0.0) {
                return Err(Error::Parameter(format!(
                    "smoothed_put requires smoothing > 0, got {smoothing}"
                )));
            }
            if !(strike > 0.0) {
                return Err(Error::Parameter(format!(
                    "smoothed_put requires strike > 0, got {strike}"
                )));
            }
            if strike + 6.0 * smoothing > 0.5 * grid.width() {
                return Err(Error::Parameter(
                    "smoothed_put support does not fit the periodic box".into(),
                ));
            }
            Field::from_fn(*grid, |x| smoothed_tent(x - center, strike, smoothing))
        }
        PayoffSpec::GaussianBump { center, width, height } => {
            if !(width > 0.0) {
                return Err(Error::Parameter(format!(
                    "gaussian_bump requires width > 0, got {width}"
                )));
            }
            Field::from_fn(*grid, |x| {
                let t = (x - center) / width;
                height * (-t * t).exp()
            })
        }
        PayoffSpec::CompactBump { center, width, height } => {
            if !(width > 0.0) {
                return Err(Error::Parameter(format!(
                    "compact_bump requires width > 0, got {width}"
                )));
            }
            Field::from_fn(*grid, |x| {
                let t = (x - center) / width;
                if t.abs() < 1.0 {
                    height * (1.0 - 1.0 / (1.0 - t * t)).exp()
                } else {
                    0.0
                }
            })
        }
    }
}
