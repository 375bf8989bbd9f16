//! Least-squares rate and volume fits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::BallCensus;

/// Ordinary least squares `y ≈ a + b·x`; returns `(a, b)`.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Power-law fit `value ≈ e^intercept · n^slope`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub samples: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared log residuals.
    pub residual: f64,
}

impl RateFit {
    pub fn predict(&self, n: f64) -> f64 {
        (self.intercept + self.slope * n.ln()).exp()
    }
}

/// Log-log least squares.
pub fn fit_rate(series: &[(f64, f64)]) -> Result<RateFit> {
    if series.len() < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 samples, got {}", series.len())));
    }
    if let Some(&(n, v)) = series.iter().find(|(n, v)| !(*n > 0.0 && *v > 0.0 && n.is_finite() && v.is_finite())) {
        return Err(Error::InvalidParameter(format!("samples must be positive, got ({n}, {v})")));
    }
    let xs: Vec<f64> = series.iter().map(|(n, _)| n.ln()).collect();
    let ys: Vec<f64> = series.iter().map(|(_, v)| v.ln()).collect();
    if xs.iter().all(|x| (x - xs[0]).abs() < 1e-15) {
        return Err(Error::InvalidParameter("abscissae must not all coincide".into()));
    }
    let (intercept, slope) = ols(&xs, &ys);
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(RateFit { samples: series.to_vec(), slope, intercept, residual })
}

/// Leading growth coefficient of a census.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeFit {
    pub label: String,
    pub dimension: u32,
    pub window: (u32, u32),
    /// Intercept of `|B(n)|/n^d` against `1/n`.
    pub c_hat: f64,
    /// Slope of the same fit: the fitted `n^{d−1}` coefficient.
    pub next_order: f64,
    /// `(n, (|B(n)| − ĉ n^d) / n^{d−1})`.
    pub residuals: Vec<(u32, f64)>,
}

impl VolumeFit {
    pub fn max_abs_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1.abs()).fold(0.0, f64::max)
    }

    pub fn median_abs_residual(&self) -> f64 {
        let mut v: Vec<f64> = self.residuals.iter().map(|r| r.1.abs()).collect();
        v.sort_by(f64::total_cmp);
        let k = v.len();
        if k % 2 == 1 {
            v[k / 2]
        } else {
            0.5 * (v[k / 2 - 1] + v[k / 2])
        }
    }
}

/// Fits `|B(n)|/n^d ≈ ĉ + e/n` over `window`; the `1/n` term absorbs the
/// `n^{d−1}` correction so that `ĉ` is the leading coefficient.
pub fn fit_volume(c: &BallCensus, d: u32, window: (u32, u32)) -> Result<VolumeFit> {
    let (n0, n1) = window;
    if d == 0 || n0 == 0 || n1 < n0 + 2 {
        return Err(Error::InvalidParameter(format!("bad fit window [{n0}, {n1}] or dimension {d}")));
    }
    if n1 > c.max_radius {
        return Err(Error::InvalidParameter(format!("window end {n1} exceeds census radius {}", c.max_radius)));
    }
    let ns: Vec<u32> = (n0..=n1).collect();
    let xs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    let ys: Vec<f64> = ns.iter().map(|&n| c.ball(n) as f64 / (n as f64).powi(d as i32)).collect();
    let (c_hat, next_order) = ols(&xs, &ys);
    if c_hat <= 0.0 {
        return Err(Error::Internal(format!("nonpositive leading coefficient {c_hat}")));
    }
    let residuals = ns
        .iter()
        .map(|&n| {
            let nf = n as f64;
            (n, (c.ball(n) as f64 - c_hat * nf.powi(d as i32)) / nf.powi(d as i32 - 1))
        })
        .collect();
    Ok(VolumeFit { label: c.label.clone(), dimension: d, window, c_hat, next_order, residuals })
}
