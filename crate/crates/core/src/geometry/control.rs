//! Piecewise-constant horizontal controls on `ℝ × H₃(ℝ)`.

use serde::{Deserialize, Serialize};

use super::metric::horizontal_norm;
use super::point::{HeisPoint, ProdPoint};
use crate::error::{Error, Result};

/// One constant-velocity piece, pulled back to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPiece {
    pub uv: f64,
    pub ux: f64,
    pub uy: f64,
    pub duration: f64,
}

impl ControlPiece {
    pub fn new(uv: f64, ux: f64, uy: f64, duration: f64) -> Self {
        ControlPiece { uv, ux, uy, duration }
    }

    fn exp(&self) -> ProdPoint {
        let t = self.duration;
        ProdPoint { v: t * self.uv, h: HeisPoint::new(t * self.ux, t * self.uy, 0.0) }
    }

    /// Euclidean speed of `(u_v, u_x, u_y)`.
    pub fn speed(&self) -> f64 {
        (self.uv * self.uv + self.ux * self.ux + self.uy * self.uy).sqrt()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HorizontalControl {
    pieces: Vec<ControlPiece>,
}

impl HorizontalControl {
    pub fn new(pieces: Vec<ControlPiece>) -> Result<Self> {
        for p in &pieces {
            if !(p.duration > 0.0 && p.duration.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "control durations must be positive, got {}",
                    p.duration
                )));
            }
            if !(p.uv.is_finite() && p.ux.is_finite() && p.uy.is_finite()) {
                return Err(Error::InvalidParameter("control velocity must be finite".into()));
            }
        }
        Ok(HorizontalControl { pieces })
    }

    pub fn pieces(&self) -> &[ControlPiece] {
        &self.pieces
    }

    pub fn duration(&self) -> f64 {
        self.pieces.iter().map(|p| p.duration).sum()
    }

    pub fn max_speed(&self) -> f64 {
        self.pieces.iter().map(ControlPiece::speed).fold(0.0, f64::max)
    }
}

/// Endpoint and `|v|+|x|+|y|` length of a developed control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevelopedPath {
    pub endpoint: ProdPoint,
    pub length: f64,
}

/// Multiplies the segment exponentials left to right.
pub fn develop_path(c: &HorizontalControl) -> DevelopedPath {
    let mut endpoint = ProdPoint::IDENTITY;
    let mut length = 0.0;
    for p in c.pieces() {
        endpoint = endpoint * p.exp();
        length += p.duration * horizontal_norm(p.uv, p.ux, p.uy);
    }
    DevelopedPath { endpoint, length }
}

/// Control distance and endpoint separation for a pair of controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GronwallGap {
    /// `L²` norm of the velocity difference.
    pub epsilon: f64,
    /// Euclidean distance of endpoints in exponential coordinates.
    pub gap: f64,
}

/// Compares two controls over a common time horizon.
pub fn gronwall_gap(c1: &HorizontalControl, c2: &HorizontalControl) -> Result<GronwallGap> {
    let (t1, t2) = (c1.duration(), c2.duration());
    if (t1 - t2).abs() > 1e-9 * t1.max(t2).max(1.0) {
        return Err(Error::InvalidParameter(format!("time horizons differ: {t1} vs {t2}")));
    }
    // merge breakpoints
    let (a, b) = (c1.pieces(), c2.pieces());
    let (mut i, mut j) = (0, 0);
    let (mut left_a, mut left_b) = (a.first().map_or(0.0, |p| p.duration), b.first().map_or(0.0, |p| p.duration));
    let mut sq = 0.0;
    // rounding slivers at nearly shared breakpoints are skipped
    let tol = 1e-12 * t1.max(1.0);
    while i < a.len() && j < b.len() {
        let dt = left_a.min(left_b);
        let (pa, pb) = (a[i], b[j]);
        let (dv, dx, dy) = (pa.uv - pb.uv, pa.ux - pb.ux, pa.uy - pb.uy);
        sq += dt * (dv * dv + dx * dx + dy * dy);
        left_a -= dt;
        left_b -= dt;
        if left_a <= tol {
            i += 1;
            left_a = a.get(i).map_or(0.0, |p| p.duration);
        }
        if left_b <= tol {
            j += 1;
            left_b = b.get(j).map_or(0.0, |p| p.duration);
        }
    }
    let e1 = develop_path(c1).endpoint;
    let e2 = develop_path(c2).endpoint;
    Ok(GronwallGap { epsilon: sq.sqrt(), gap: e1.euclid(e2) })
}

/// One sampled pair of controls at perturbation size `eps` and `eps / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GronwallSample {
    pub eps: f64,
    pub gap: f64,
    pub half_gap: f64,
}

impl GronwallSample {
    /// `gap(eps) / gap(eps / 2)`; linear scaling gives 2.
    pub fn halving_ratio(&self) -> f64 {
        self.gap / self.half_gap
    }
}

/// Number of equal-duration pieces in sampled controls.
const SAMPLE_PIECES: usize = 4;

/// Speed cap of the sampled base controls; perturbations stay below `L = 2`
/// for `eps ≤ 0.25`.
const SAMPLE_BASE_SPEED: f64 = 1.5;

fn random_velocity<R: rand::Rng>(rng: &mut R) -> [f64; 3] {
    [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]
}

/// Random base controls on `[0, 1]` perturbed along a random direction of
/// unit `L²` norm, developed at `eps` and `eps / 2`.
pub fn sample_gronwall(eps: f64, samples: usize, seed: u64) -> Result<Vec<GronwallSample>> {
    use rand::{Rng, SeedableRng};
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 0.25], got {eps}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dt = 1.0 / SAMPLE_PIECES as f64;
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let base: Vec<[f64; 3]> = (0..SAMPLE_PIECES)
            .map(|_| {
                let u = random_velocity(&mut rng);
                let s = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt().max(1e-300);
                let k = SAMPLE_BASE_SPEED * rng.gen::<f64>() / s;
                [u[0] * k, u[1] * k, u[2] * k]
            })
            .collect();
        let dir: Vec<[f64; 3]> = (0..SAMPLE_PIECES).map(|_| random_velocity(&mut rng)).collect();
        let norm = (dir.iter().map(|w| w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sum::<f64>() * dt).sqrt();
        if norm < 1e-6 {
            continue;
        }
        let build = |scale: f64| {
            HorizontalControl::new(
                base.iter()
                    .zip(&dir)
                    .map(|(u, w)| {
                        let k = scale / norm;
                        ControlPiece::new(u[0] + k * w[0], u[1] + k * w[1], u[2] + k * w[2], dt)
                    })
                    .collect(),
            )
        };
        let c0 = build(0.0)?;
        let full = gronwall_gap(&c0, &build(eps)?)?;
        let half = gronwall_gap(&c0, &build(0.5 * eps)?)?;
        if half.gap == 0.0 {
            continue;
        }
        out.push(GronwallSample { eps: full.epsilon, gap: full.gap, half_gap: half.gap });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl(pieces: &[(f64, f64, f64, f64)]) -> HorizontalControl {
        HorizontalControl::new(pieces.iter().map(|&(v, x, y, t)| ControlPiece::new(v, x, y, t)).collect())
            .unwrap()
    }

    #[test]
    fn two_legs_develop_to_half_area() {
        let d = develop_path(&ctl(&[(0.0, 1.0, 0.0, 1.0), (0.0, 0.0, 1.0, 1.0)]));
        assert_eq!(d.endpoint, ProdPoint::new(0.0, 1.0, 1.0, 0.5));
        assert_eq!(d.length, 2.0);
    }

    #[test]
    fn empty_control_is_identity() {
        let d = develop_path(&HorizontalControl::default());
        assert_eq!(d.endpoint, ProdPoint::IDENTITY);
        assert_eq!(d.length, 0.0);
    }

    #[test]
    fn unit_square_encloses_unit_area() {
        let d = develop_path(&ctl(&[
            (0.0, 1.0, 0.0, 1.0),
            (0.0, 0.0, 1.0, 1.0),
            (0.0, -1.0, 0.0, 1.0),
            (0.0, 0.0, -1.0, 1.0),
        ]));
        assert!(d.endpoint.euclid(ProdPoint::new(0.0, 0.0, 0.0, 1.0)) < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_duration() {
        assert!(HorizontalControl::new(vec![ControlPiece::new(1.0, 0.0, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn gap_examples() {
        let c = ctl(&[(0.2, 1.0, -0.5, 0.4), (0.0, 0.3, 1.0, 0.6)]);
        let g = gronwall_gap(&c, &c).unwrap();
        assert_eq!((g.epsilon, g.gap), (0.0, 0.0));

        let delta = 0.25;
        let shifted = ctl(&[(0.2 + delta, 1.0, -0.5, 0.4), (delta, 0.3, 1.0, 0.6)]);
        let g = gronwall_gap(&c, &shifted).unwrap();
        assert!((g.epsilon - delta).abs() < 1e-12);
        assert!((g.gap - delta).abs() < 1e-12);

        // different breakpoints still compare piecewise
        let split = ctl(&[(0.2, 1.0, -0.5, 0.1), (0.2, 1.0, -0.5, 0.3), (0.0, 0.3, 1.0, 0.6)]);
        let g = gronwall_gap(&c, &split).unwrap();
        assert!(g.epsilon < 1e-12 && g.gap < 1e-12);
    }

    #[test]
    fn mismatched_horizon_rejected() {
        let a = ctl(&[(0.0, 1.0, 0.0, 1.0)]);
        let b = ctl(&[(0.0, 1.0, 0.0, 0.5)]);
        assert!(gronwall_gap(&a, &b).is_err());
    }
}
