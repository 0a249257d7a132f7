//! Uniform periodic 1-D grids, sampled fields, and the discrete norms
//! (Lipschitz, semiconvexity, L∞) the a-priori estimates quantify over.

use crate::{Error, Result};

/// Uniform periodic grid on `[x_min, x_max)` with a power-of-two node count.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    /// Always true in v1; kept explicit so file formats carry it.
    pub periodic: bool,
}

impl Grid1D {
    /// `n_points` must be a power of two and `x_min < x_max`.
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::Parameter(format!(
                "grid bounds must be finite with x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points == 0 || !n_points.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "n_points must be a nonzero power of two, got {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points, periodic: true })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Domain width `x_max - x_min`.
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Grid spacing `h = width / n_points`.
    pub fn spacing(&self) -> f64 {
        self.width() / self.n_points as f64
    }

    /// Node coordinate `x_i = x_min + i h` (no right endpoint; the grid wraps).
    pub fn node(&self, i: usize) -> f64 {
        self.x_min + self.spacing() * i as f64
    }

    /// Index of the node nearest to `x` (periodic wrap).
    pub fn nearest_node(&self, x: f64) -> usize {
        let h = self.spacing();
        let i = ((x - self.x_min) / h).round() as i64;
        i.rem_euclid(self.n_points as i64) as usize
    }

    /// Angular frequencies `ξ_k = 2πk/width` in FFT ordering
    /// (`k = 0, 1, ..., n/2-1, -n/2, ..., -1`).
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n_points as i64;
        let base = 2.0 * std::f64::consts::PI / self.width();
        (0..n)
            .map(|k| {
                let kk = if k <= n / 2 - 1 { k } else { k - n };
                base * kk as f64
            })
            .collect()
    }
}

/// Real-valued function sampled at the nodes of a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid1D,
    values: Vec<f64>,
}

impl Field {
    /// Wraps raw samples; every entry must be finite and the length must
    /// match the grid.
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::Shape(format!(
                "field length {} does not match grid n_points {}",
                values.len(),
                grid.n_points()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite value at node {bad}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![0.0; grid.n_points()] }
    }

    pub fn constant(grid: Grid1D, c: f64) -> Result<Self> {
        Self::new(grid, vec![c; grid.n_points()])
    }

    /// Samples `f` at every grid node.
    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..grid.n_points()).map(|i| f(grid.node(i))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Nodewise map; the result stays on the same grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Nodewise combination of two fields on the same grid.
    pub fn zip_with(&self, other: &Field, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        check_same_grid(self, other)?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.grid, values)
    }
}

pub(crate) fn check_same_grid(a: &Field, b: &Field) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::Shape("fields live on different grids".into()));
    }
    Ok(())
}

/// Discrete Lipschitz constant: max over adjacent node pairs (periodic wrap
/// included) of `|f_{i+1} - f_i| / h`.
pub fn lipschitz_norm(f: &Field) -> f64 {
    let n = f.len();
    let h = f.grid().spacing();
    let v = f.values();
    let mut m = 0.0f64;
    for i in 0..n {
        let d = (v[(i + 1) % n] - v[i]).abs() / h;
        m = m.max(d);
    }
    m
}

/// Smallest `C* ≥ 0` such that `f + C* x²/2` has nonnegative discrete second
/// differences: `max(0, -min_i (f_{i+1} + f_{i-1} - 2 f_i) / h²)`.
///
/// The two stencils that straddle the wrap are excluded: `x²/2` itself is not
/// periodic, so non-periodic calibration profiles would otherwise report the
/// wrap kink instead of their interior constant. For smooth periodic data the
/// two definitions coincide.
pub fn semiconvexity_constant(f: &Field) -> f64 {
    let n = f.len();
    let h2 = f.grid().spacing().powi(2);
    let v = f.values();
    let mut min_dd = f64::INFINITY;
    for i in 1..n - 1 {
        let dd = (v[i + 1] + v[i - 1] - 2.0 * v[i]) / h2;
        min_dd = min_dd.min(dd);
    }
    (-min_dd).max(0.0)
}

pub fn linf_norm(f: &Field) -> f64 {
    f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

pub fn linf_diff(f: &Field, g: &Field) -> Result<f64> {
    check_same_grid(f, g)?;
    Ok(f.values()
        .iter()
        .zip(g.values())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
}
