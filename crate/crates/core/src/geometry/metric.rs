//! Closed-form Pansu limit distances.
//!
//! `d3` is the subFinsler distance on `H₃(ℝ)` whose horizontal norm is
//! `|x| + |y|`. The three regimes correspond to the three shapes of
//! geodesic (see [`crate::geometry::geodesic`]).

use super::point::{HeisPoint, ProdPoint};

/// Region of `H₃(ℝ)` selecting the distance formula and geodesic shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GeodesicKind {
    Staircase,
    ThreeSided,
    FourSided,
}

pub(crate) struct Invariants {
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
    /// `max(|x|, |y|)`
    pub m: f64,
    /// `|xy| / 2`
    pub half_area: f64,
}

impl Invariants {
    pub fn of(p: HeisPoint) -> Self {
        let (ax, ay, az) = (p.x.abs(), p.y.abs(), p.z.abs());
        Invariants { ax, ay, az, m: ax.max(ay), half_area: 0.5 * ax * ay }
    }

    /// Region test; ties go to the lower-numbered region.
    pub fn kind(&self) -> GeodesicKind {
        if self.az <= self.half_area {
            GeodesicKind::Staircase
        } else if self.az <= self.m * self.m - self.half_area {
            GeodesicKind::ThreeSided
        } else {
            GeodesicKind::FourSided
        }
    }
}

pub(crate) fn d3_staircase(inv: &Invariants) -> f64 {
    inv.ax + inv.ay
}

pub(crate) fn d3_three_sided(inv: &Invariants) -> f64 {
    inv.m + 2.0 * inv.az / inv.m
}

pub(crate) fn d3_four_sided(inv: &Invariants) -> f64 {
    4.0 * (inv.az + inv.half_area).sqrt() - inv.ax - inv.ay
}

/// `d₃(id, p)`.
pub fn d3(p: HeisPoint) -> f64 {
    let inv = Invariants::of(p);
    match inv.kind() {
        GeodesicKind::Staircase => d3_staircase(&inv),
        // m > 0 here: with m = 0 the middle region is empty.
        GeodesicKind::ThreeSided => d3_three_sided(&inv),
        GeodesicKind::FourSided => d3_four_sided(&inv),
    }
}

/// All three regime formulas at `p`, whichever region `p` is in; they
/// agree pairwise on the shared region boundaries.
pub fn d3_formulas(p: HeisPoint) -> [f64; 3] {
    let inv = Invariants::of(p);
    [d3_staircase(&inv), d3_three_sided(&inv), d3_four_sided(&inv)]
}

/// Left-invariant `d₃(p, q) = d₃(id, p⁻¹q)`.
pub fn d3_between(p: HeisPoint, q: HeisPoint) -> f64 {
    d3(p.inv() * q)
}

/// `d∞(id, (v; h)) = |v| + d₃(id, h)`.
pub fn dinf(p: ProdPoint) -> f64 {
    p.v.abs() + d3(p.h)
}

pub fn dinf_between(p: ProdPoint, q: ProdPoint) -> f64 {
    dinf(p.inv() * q)
}

/// Horizontal norm `|v| + |x| + |y|` shared by both limit metrics.
pub fn horizontal_norm(uv: f64, ux: f64, uy: f64) -> f64 {
    uv.abs() + ux.abs() + uy.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::Dilate;

    #[test]
    fn formula_examples() {
        assert_eq!(d3(HeisPoint::new(1.0, 0.0, 0.0)), 1.0);
        assert_eq!(d3(HeisPoint::new(0.0, 0.0, 1.0)), 4.0);
        assert_eq!(d3(HeisPoint::new(1.0, 1.0, 0.5)), 2.0);
        assert!((d3(HeisPoint::new(1.0, 0.0, 0.3)) - 1.6).abs() < 1e-15);
        assert_eq!(d3(HeisPoint::IDENTITY), 0.0);
    }

    #[test]
    fn product_examples() {
        assert_eq!(dinf(ProdPoint::new(1.0, 0.0, 0.0, 0.0)), 1.0);
        assert_eq!(dinf(ProdPoint::new(0.5, 1.0, 0.0, 0.0)), 1.5);
        assert!((dinf(ProdPoint::new(1.0, 0.0, 0.0, 0.01)) - 1.4).abs() < 1e-15);
    }

    #[test]
    fn dilation_scales_distance() {
        let p = HeisPoint::new(0.0, 0.0, 1.0).dilate_unchecked(4.0);
        assert_eq!(d3(p), 16.0);
    }

    #[test]
    fn region_examples() {
        let k = |x, y, z| Invariants::of(HeisPoint::new(x, y, z)).kind();
        assert_eq!(k(1.0, 1.0, 0.4), GeodesicKind::Staircase);
        assert_eq!(k(1.0, 0.0, 0.3), GeodesicKind::ThreeSided);
        assert_eq!(k(0.0, 0.0, 1.0), GeodesicKind::FourSided);
        // ties resolve downward
        assert_eq!(k(1.0, 1.0, 0.5), GeodesicKind::Staircase);
        assert_eq!(k(1.0, 0.0, 1.0), GeodesicKind::ThreeSided);
    }

    #[test]
    fn abnormal_gap_is_four_root_eps() {
        for i in 1..=100 {
            let eps = i as f64 / 100.0;
            let gap = dinf(ProdPoint::new(1.0, 0.0, 0.0, eps)) - 1.0;
            assert!((gap - 4.0 * eps.sqrt()).abs() < 1e-12);
        }
    }
}
