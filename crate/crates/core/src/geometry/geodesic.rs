//! Geodesic synthesis for `(H₃(ℝ), d₃)`.
//!
//! Every `d₃` geodesic is horizontal, so it is determined by its planar
//! projection. The lift of a planar path picks up `z = ½∫(x dy − y dx)`,
//! the signed area between the path and its closing chord. Geodesics are
//! shortest `ℓ¹` paths enclosing a prescribed area: monotone staircases,
//! three sides of a rectangle, or four sides of a square.

use serde::{Deserialize, Serialize};

use super::metric::{d3, GeodesicKind, Invariants};
use super::point::HeisPoint;
use crate::error::{Error, Result};

/// Axis-parallel unit direction in the horizontal plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    East,
    North,
    West,
    South,
}

impl Direction {
    pub fn unit(self) -> (f64, f64) {
        match self {
            Direction::East => (1.0, 0.0),
            Direction::North => (0.0, 1.0),
            Direction::West => (-1.0, 0.0),
            Direction::South => (0.0, -1.0),
        }
    }

    fn from_unit(dx: f64, dy: f64) -> Direction {
        match (dx > 0.0, dx < 0.0, dy > 0.0) {
            (true, _, _) => Direction::East,
            (_, true, _) => Direction::West,
            (_, _, true) => Direction::North,
            _ => Direction::South,
        }
    }

    fn along_x(signed: f64) -> Direction {
        if signed >= 0.0 {
            Direction::East
        } else {
            Direction::West
        }
    }

    fn along_y(signed: f64) -> Direction {
        if signed >= 0.0 {
            Direction::North
        } else {
            Direction::South
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub direction: Direction,
    pub length: f64,
}

impl Segment {
    /// The group element reached by following this segment from the identity.
    pub fn exp(self) -> HeisPoint {
        let (dx, dy) = self.direction.unit();
        HeisPoint::new(dx * self.length, dy * self.length, 0.0)
    }
}

/// One canonical geodesic from the identity to `target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPlan {
    pub kind: GeodesicKind,
    pub segments: Vec<Segment>,
    pub target: HeisPoint,
    pub length: f64,
}

impl GeodesicPlan {
    /// Endpoint of the horizontal lift of the segment list.
    pub fn endpoint(&self) -> HeisPoint {
        develop_segments(&self.segments)
    }

    /// Vertices of the planar projection, starting at the origin.
    pub fn planar_vertices(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let (mut x, mut y) = (0.0, 0.0);
        out.push((x, y));
        for s in &self.segments {
            let (dx, dy) = s.direction.unit();
            x += dx * s.length;
            y += dy * s.length;
            out.push((x, y));
        }
        out
    }
}

/// Lift of a piecewise axis-parallel path starting at the identity.
pub fn develop_segments(segments: &[Segment]) -> HeisPoint {
    segments.iter().fold(HeisPoint::IDENTITY, |acc, s| acc * s.exp())
}

/// Shape of the geodesics from the identity to `p`.
pub fn classify_geodesic(p: HeisPoint) -> Result<GeodesicKind> {
    if p.is_identity() {
        return Err(Error::OriginRejected);
    }
    Ok(Invariants::of(p).kind())
}

/// Relative snapping tolerance for split parameters that land on a leg end.
const SNAP: f64 = 1e-12;

fn push(segments: &mut Vec<Segment>, direction: Direction, length: f64, scale: f64) {
    if length > SNAP * scale {
        segments.push(Segment { direction, length });
    }
}

/// Builds one geodesic from the identity to `p`.
///
/// Among non-unique geodesics the plan with the fewest segments is chosen,
/// preferring to start along `x`.
pub fn synthesize_geodesic(p: HeisPoint) -> Result<GeodesicPlan> {
    if !p.is_finite() {
        return Err(Error::InvalidParameter("target must be finite".into()));
    }
    let kind = classify_geodesic(p)?;
    let inv = Invariants::of(p);
    let scale = inv.ax.max(inv.ay).max(inv.az.sqrt()).max(f64::MIN_POSITIVE);
    let segments = match kind {
        GeodesicKind::Staircase => staircase(p, scale)?,
        GeodesicKind::ThreeSided => three_sided(p, &inv, scale)?,
        GeodesicKind::FourSided => four_sided(p, scale),
    };
    let length = segments.iter().map(|s| s.length).sum();
    Ok(GeodesicPlan { kind, segments, target: p, length })
}

/// x-leg of length `a`, full y-leg, remaining x-leg; area `a·y − x·y/2`.
fn staircase(p: HeisPoint, scale: f64) -> Result<Vec<Segment>> {
    let HeisPoint { x, y, z } = p;
    let mut segs = Vec::with_capacity(3);
    if y == 0.0 || x == 0.0 {
        push(&mut segs, Direction::along_x(x), x.abs(), scale);
        push(&mut segs, Direction::along_y(y), y.abs(), scale);
        return Ok(segs);
    }
    let mut frac = z / (x * y) + 0.5;
    if !(-SNAP..=1.0 + SNAP).contains(&frac) {
        return Err(Error::Internal(format!("staircase split {frac} outside [0, 1]")));
    }
    frac = frac.clamp(0.0, 1.0);
    if frac > 1.0 - SNAP {
        frac = 1.0;
    } else if frac < SNAP {
        frac = 0.0;
    }
    let a = frac * x;
    push(&mut segs, Direction::along_x(x), a.abs(), scale);
    push(&mut segs, Direction::along_y(y), y.abs(), scale);
    push(&mut segs, Direction::along_x(x), (x - a).abs(), scale);
    Ok(segs)
}

/// U-shaped detour perpendicular to the longer horizontal leg.
fn three_sided(p: HeisPoint, inv: &Invariants, scale: f64) -> Result<Vec<Segment>> {
    let HeisPoint { x, y, z } = p;
    let mut segs = Vec::with_capacity(3);
    if inv.ax >= inv.ay {
        // vertices (0,h), (x,h), (x,y): area x·y/2 − h·x
        let h = (0.5 * x * y - z) / x;
        let back = y - h;
        if h * back > SNAP * scale * scale {
            return Err(Error::Internal(format!("three-sided depth {h} is not a detour")));
        }
        push(&mut segs, Direction::along_y(h), h.abs(), scale);
        push(&mut segs, Direction::along_x(x), x.abs(), scale);
        push(&mut segs, Direction::along_y(back), back.abs(), scale);
    } else {
        // vertices (h,0), (h,y), (x,y): area h·y − x·y/2
        let h = (z + 0.5 * x * y) / y;
        let back = x - h;
        if h * back > SNAP * scale * scale {
            return Err(Error::Internal(format!("three-sided depth {h} is not a detour")));
        }
        push(&mut segs, Direction::along_x(h), h.abs(), scale);
        push(&mut segs, Direction::along_y(y), y.abs(), scale);
        push(&mut segs, Direction::along_x(back), back.abs(), scale);
    }
    Ok(segs)
}

/// Arc of a square of side `√(|z| + |xy|/2)`, built for `x, y ≥ 0, z > 0`
/// and mapped back by reflections.
fn four_sided(p: HeisPoint, scale: f64) -> Vec<Segment> {
    let sx = if p.x < 0.0 { -1.0 } else { 1.0 };
    let sy = if p.y < 0.0 { -1.0 } else { 1.0 };
    let (mut a, mut b, mut c) = (p.x.abs(), p.y.abs(), p.z * sx * sy);
    let swapped = c < 0.0;
    if swapped {
        std::mem::swap(&mut a, &mut b);
        c = -c;
    }
    let side = (c + 0.5 * a * b).sqrt();
    use Direction::*;
    let canonical: Vec<(Direction, f64)> = if a == 0.0 && b == 0.0 {
        vec![(East, side), (North, side), (West, side), (South, side)]
    } else {
        // origin on the left edge, target on the top edge
        vec![(South, side - b), (East, side), (North, side), (West, side - a)]
    };
    let mut segs = Vec::with_capacity(4);
    for (d, len) in canonical {
        let (mut dx, mut dy) = d.unit();
        if swapped {
            std::mem::swap(&mut dx, &mut dy);
        }
        push(&mut segs, Direction::from_unit(dx * sx, dy * sy), len, scale);
    }
    segs
}

/// Length of a plan, checked against the closed form.
pub fn plan_defect(plan: &GeodesicPlan) -> (f64, f64) {
    let end = plan.endpoint();
    (end.euclid(plan.target), (plan.length - d3(plan.target)).abs())
}
