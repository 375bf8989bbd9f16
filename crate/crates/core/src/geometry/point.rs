//! Continuous group elements of `H₃(ℝ)` and `ℝ × H₃(ℝ)`.
//!
//! Points are stored in exponential coordinates: `(x, y, z)` stands for
//! `exp(xX + yY + zZ)` with `[X, Y] = Z`, so the product carries the
//! Baker–Campbell–Hausdorff half-commutator term.

use serde::{Deserialize, Serialize};
use std::ops::Mul;

use crate::error::{Error, Result};

/// Element of the real Heisenberg group in exponential coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HeisPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HeisPoint {
    pub const IDENTITY: HeisPoint = HeisPoint { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        HeisPoint { x, y, z }
    }

    pub fn inv(self) -> Self {
        HeisPoint::new(-self.x, -self.y, -self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_identity(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// Euclidean distance between coordinate triples.
    pub fn euclid(self, other: HeisPoint) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// BCH product `(p.x+q.x, p.y+q.y, p.z+q.z+½(p.x q.y − p.y q.x))`.
pub fn heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint {
    HeisPoint {
        x: p.x + q.x,
        y: p.y + q.y,
        z: p.z + q.z + 0.5 * (p.x * q.y - p.y * q.x),
    }
}

impl Mul for HeisPoint {
    type Output = HeisPoint;

    fn mul(self, rhs: HeisPoint) -> HeisPoint {
        heis_mul(self, rhs)
    }
}

/// Element `(v; h)` of `ℝ × H₃(ℝ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ProdPoint {
    pub v: f64,
    pub h: HeisPoint,
}

impl ProdPoint {
    pub const IDENTITY: ProdPoint = ProdPoint { v: 0.0, h: HeisPoint::IDENTITY };

    pub const fn new(v: f64, x: f64, y: f64, z: f64) -> Self {
        ProdPoint { v, h: HeisPoint::new(x, y, z) }
    }

    pub fn inv(self) -> Self {
        ProdPoint { v: -self.v, h: self.h.inv() }
    }

    pub fn is_finite(self) -> bool {
        self.v.is_finite() && self.h.is_finite()
    }

    pub fn euclid(self, other: ProdPoint) -> f64 {
        let dv = self.v - other.v;
        let dh = self.h.euclid(other.h);
        (dv * dv + dh * dh).sqrt()
    }
}

impl Mul for ProdPoint {
    type Output = ProdPoint;

    fn mul(self, rhs: ProdPoint) -> ProdPoint {
        ProdPoint { v: self.v + rhs.v, h: heis_mul(self.h, rhs.h) }
    }
}

/// Which way [`coords_convert`] maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordDirection {
    MatrixToExp,
    ExpToMatrix,
}

/// Shear between matrix (second-kind) and exponential coordinates:
/// `z_exp = z_matrix − x·y/2`.
pub fn coords_convert(p: [f64; 3], direction: CoordDirection) -> [f64; 3] {
    let [x, y, z] = p;
    match direction {
        CoordDirection::MatrixToExp => [x, y, z - 0.5 * x * y],
        CoordDirection::ExpToMatrix => [x, y, z + 0.5 * x * y],
    }
}

/// Graded dilations `δ_t`: degree-one coordinates scale by `t`, the centre by `t²`.
pub trait Dilate: Sized {
    fn dilate_unchecked(self, t: f64) -> Self;

    fn dilate(self, t: f64) -> Result<Self> {
        if t > 0.0 && t.is_finite() {
            Ok(self.dilate_unchecked(t))
        } else {
            Err(Error::InvalidParameter(format!("dilation factor must be positive, got {t}")))
        }
    }
}

impl Dilate for HeisPoint {
    fn dilate_unchecked(self, t: f64) -> Self {
        HeisPoint::new(t * self.x, t * self.y, t * t * self.z)
    }
}

impl Dilate for ProdPoint {
    fn dilate_unchecked(self, t: f64) -> Self {
        ProdPoint { v: t * self.v, h: self.h.dilate_unchecked(t) }
    }
}

/// `δ_t(p)`; rejects nonpositive `t`.
pub fn dilate<P: Dilate>(t: f64, p: P) -> Result<P> {
    p.dilate(t)
}
