//! Integer group elements in matrix (second-kind) coordinates.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{coords_convert, CoordDirection, HeisPoint, ProdPoint};

/// The three lattices supported by the enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    /// `H₃(ℤ)`
    Heis,
    /// `ℤ × H₃(ℤ)`
    ProdHeisZ,
    /// `ℤ³`
    Z3,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Heis => "heis",
            Group::ProdHeisZ => "prod",
            Group::Z3 => "z3",
        }
    }

    pub fn parse(s: &str) -> Result<Group> {
        match s.to_ascii_lowercase().as_str() {
            "heis" | "h3" => Ok(Group::Heis),
            "prod" | "prodheisz" | "h3xz" => Ok(Group::ProdHeisZ),
            "z3" => Ok(Group::Z3),
            other => Err(Error::InvalidParameter(format!("unknown group `{other}`"))),
        }
    }

    pub(crate) fn has_v(self) -> bool {
        matches!(self, Group::ProdHeisZ)
    }

    pub(crate) fn is_abelian(self) -> bool {
        matches!(self, Group::Z3)
    }
}

/// Lattice element; `v` is zero outside `ProdHeisZ`.
///
/// Heisenberg factor law: `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x·y')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeElement {
    pub group: Group,
    pub v: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticeElement {
    pub const fn heis(x: i64, y: i64, z: i64) -> Self {
        LatticeElement { group: Group::Heis, v: 0, x, y, z }
    }

    pub const fn prod(v: i64, x: i64, y: i64, z: i64) -> Self {
        LatticeElement { group: Group::ProdHeisZ, v, x, y, z }
    }

    pub const fn z3(x: i64, y: i64, z: i64) -> Self {
        LatticeElement { group: Group::Z3, v: 0, x, y, z }
    }

    pub const fn identity(group: Group) -> Self {
        LatticeElement { group, v: 0, x: 0, y: 0, z: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.v == 0 && self.x == 0 && self.y == 0 && self.z == 0
    }

    /// Heisenberg factor in exponential coordinates.
    pub fn heis_exp(&self) -> HeisPoint {
        let [x, y, z] =
            coords_convert([self.x as f64, self.y as f64, self.z as f64], CoordDirection::MatrixToExp);
        HeisPoint::new(x, y, z)
    }

    /// Image in `ℝ × H₃(ℝ)` (exponential coordinates).
    pub fn prod_exp(&self) -> ProdPoint {
        ProdPoint { v: self.v as f64, h: self.heis_exp() }
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            Group::ProdHeisZ => write!(f, "({};{},{},{})", self.v, self.x, self.y, self.z),
            _ => write!(f, "({},{},{})", self.x, self.y, self.z),
        }
    }
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Exact product; overflow is an error.
pub fn lat_mul(p: &LatticeElement, q: &LatticeElement) -> Result<LatticeElement> {
    if p.group != q.group {
        return Err(Error::GroupMismatch { left: p.group, right: q.group });
    }
    let cross = if p.group.is_abelian() { 0 } else { p.x.checked_mul(q.y).ok_or(Error::Overflow)? };
    Ok(LatticeElement {
        group: p.group,
        v: add(p.v, q.v)?,
        x: add(p.x, q.x)?,
        y: add(p.y, q.y)?,
        z: add(add(p.z, q.z)?, cross)?,
    })
}

/// `(x,y,z)⁻¹ = (−x, −y, −z + xy)` on the Heisenberg factor.
pub fn lat_inv(p: &LatticeElement) -> Result<LatticeElement> {
    let neg = |a: i64| a.checked_neg().ok_or(Error::Overflow);
    let z = if p.group.is_abelian() {
        neg(p.z)?
    } else {
        add(neg(p.z)?, p.x.checked_mul(p.y).ok_or(Error::Overflow)?)?
    };
    Ok(LatticeElement { group: p.group, v: neg(p.v)?, x: neg(p.x)?, y: neg(p.y)?, z })
}
