//! Lebesgue volume of the limit unit balls (exponential coordinates).

use serde::{Deserialize, Serialize};

/// Limit metric selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    D3,
    Dinf,
}

/// Largest `|z|` with `d3(x, y, z) ≤ 1`, for `|x| + |y| ≤ 1`.
pub fn z_max(x: f64, y: f64) -> f64 {
    let (ax, ay) = (x.abs(), y.abs());
    let s = ax + ay;
    if s > 1.0 {
        return f64::NAN;
    }
    let m = ax.max(ay);
    let p = ax * ay / 2.0;
    if 4.0 * m <= 1.0 + s {
        let q = (1.0 + s) / 4.0;
        q * q - p
    } else {
        m * (1.0 - m) / 2.0
    }
}

fn simpson_step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Integral over `[a, b]` split at the interior `breaks`.
fn piecewise<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    pts.sort_by(f64::total_cmp);
    let mut edges = vec![a];
    edges.extend(pts);
    edges.push(b);
    edges.windows(2).map(|w| adaptive_simpson(&f, w[0], w[1], tol)).sum()
}

/// `∫∫ 2·z_max` over one quadrant of the `ℓ¹` ball, split along the case
/// boundaries `y = 3x − 1`, `y = x`, `y = (1 + x)/3`.
fn quadrant_volume(tol: f64) -> f64 {
    let inner = |x: f64| {
        let top = 1.0 - x;
        piecewise(|y| 2.0 * z_max(x, y), 0.0, top, &[3.0 * x - 1.0, x, (1.0 + x) / 3.0], tol)
    };
    piecewise(inner, 0.0, 1.0, &[1.0 / 3.0, 0.5], tol)
}

/// Volume of `B_{d3}(1)`.
pub fn d3_unit_ball_volume() -> f64 {
    4.0 * quadrant_volume(1e-13)
}

/// Volume of the unit ball; `dinf` integrates `δ_{1−|v|}`-scaled `d3`
/// slices over `v ∈ [−1, 1]`.
pub fn unit_ball_volume(metric: Metric) -> f64 {
    let v3 = d3_unit_ball_volume();
    match metric {
        Metric::D3 => v3,
        Metric::Dinf => adaptive_simpson(|v: f64| v3 * (1.0 - v.abs()).powi(4), -1.0, 1.0, 1e-14),
    }
}
