//! Fourier-multiplier realization of `(-Δ)^s` on the periodic grid, and the
//! implicit resolvent solve `(I + dt (-Δ)^s)^{-1}`.
//!
//! The multiplier `|ξ_k|^{2s}` is exact on the discrete torus and serves as
//! the reference realization against which the quadrature and extension
//! realizations are cross-validated.

use crate::grid::{check_same_grid, Field, Grid1D};
use crate::{Error, Result};
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// `(-Δ)^s` as a diagonal operator in frequency space.
///
/// Immutable after construction; `apply`/`implicit_solve` allocate their own
/// scratch, so a single operator can be shared across threads.
pub struct SpectralOp {
    s: f64,
    grid: Grid1D,
    multiplier: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralOp")
            .field("s", &self.s)
            .field("grid", &self.grid)
            .finish()
    }
}

impl SpectralOp {
    /// Builds the multiplier `|ξ_k|^{2s}` for the grid's discrete frequencies.
    pub fn build(grid: &Grid1D, s: f64) -> Result<Self> {
        check_s(s)?;
        let multiplier: Vec<f64> = grid.frequencies().iter().map(|xi| xi.abs().powf(2.0 * s)).collect();
        debug_assert_eq!(multiplier[0], 0.0);
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(grid.n_points());
        let inv = planner.plan_fft_inverse(grid.n_points());
        Ok(Self { s, grid: *grid, multiplier, fwd, inv })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// The symbol values in FFT ordering; `multiplier[0] == 0`.
    pub fn multiplier(&self) -> &[f64] {
        &self.multiplier
    }

    fn transform(&self, f: &Field, diag: impl Fn(f64) -> f64) -> Result<Field> {
        if f.grid() != &self.grid {
            return Err(Error::Shape("field grid does not match operator grid".into()));
        }
        let n = self.grid.n_points();
        let mut buf: Vec<Complex64> =
            f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        for (b, &m) in buf.iter_mut().zip(&self.multiplier) {
            *b *= diag(m);
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / n as f64;
        let values: Vec<f64> = buf.iter().map(|c| c.re * scale).collect();
        Field::new(self.grid, values)
            .map_err(|_| Error::Numerical("non-finite values out of spectral transform".into()))
    }

    /// `(-Δ)^s f`. Linear, annihilates constants.
    pub fn apply(&self, f: &Field) -> Result<Field> {
        self.transform(f, |m| m)
    }

    /// Solves `(I + dt (-Δ)^s) u = rhs` exactly in frequency space.
    pub fn implicit_solve(&self, dt: f64, rhs: &Field) -> Result<Field> {
        if !(dt > 0.0) {
            return Err(Error::Parameter(format!("implicit_solve requires dt > 0, got {dt}")));
        }
        self.transform(rhs, |m| 1.0 / (1.0 + dt * m))
    }

    /// Semigroup action `e^{-t (-Δ)^s} f` (used by the kernel oracle and the
    /// linear-flow reference).
    pub fn heat_flow(&self, t: f64, f: &Field) -> Result<Field> {
        if !(t >= 0.0) {
            return Err(Error::Parameter(format!("heat_flow requires t >= 0, got {t}")));
        }
        self.transform(f, |m| (-t * m).exp())
    }

    /// Grid inner product `h Σ f_i g_i`.
    pub fn inner(&self, f: &Field, g: &Field) -> Result<f64> {
        check_same_grid(f, g)?;
        let h = self.grid.spacing();
        Ok(h * f
            .values()
            .iter()
            .zip(g.values())
            .map(|(a, b)| a * b)
            .sum::<f64>())
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Parameter(format!("s must lie in (0,1), got {s}")));
    }
    Ok(())
}
