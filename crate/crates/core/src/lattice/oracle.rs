//! Closed-form word distances for the builtin generating sets.
//!
//! A word of length `m` in `a^±1, b^±1` ending at `(x, y, z)` (matrix
//! coordinates) traces a lattice path whose `z` is accumulated by the `b`
//! steps: `b` adds `x`, `b⁻¹` subtracts it. For each `m` and endpoint
//! `(x, y)` the table stores the least and greatest reachable `z`; every
//! value in between is reachable as well, which the tests confirm against
//! breadth-first enumeration.

use super::element::{Group, LatticeElement};
use super::genset::{Builtin, GenSet};
use crate::error::{Error, Result};

const EMPTY: (i32, i32) = (i32::MAX, i32::MIN);

/// Reachable `z`-intervals of `HEIS_STD` words, by exact length.
#[derive(Debug, Clone)]
pub struct AreaTable {
    max_len: u32,
    /// `layers[m]` is a `(2m+1)²` grid indexed by `(x + m, y + m)`.
    layers: Vec<Vec<(i32, i32)>>,
}

impl AreaTable {
    pub fn new(max_len: u32) -> Result<Self> {
        // |z| ≤ m²/4 must fit in i32
        if max_len > 60_000 {
            return Err(Error::InvalidParameter(format!("area table length {max_len} too large")));
        }
        let mut layers: Vec<Vec<(i32, i32)>> = vec![vec![(0, 0)]];
        for m in 1..=max_len as i64 {
            let prev = &layers[m as usize - 1];
            let side = 2 * m + 1;
            let mut grid = vec![EMPTY; (side * side) as usize];
            let get = |x: i64, y: i64| -> (i32, i32) {
                let r = m - 1;
                if x.abs() > r || y.abs() > r {
                    EMPTY
                } else {
                    prev[((x + r) * (2 * r + 1) + (y + r)) as usize]
                }
            };
            for x in -m..=m {
                let rest = m - x.abs();
                let mut y = -rest;
                while y <= rest {
                    let mut lo = i32::MAX;
                    let mut hi = i32::MIN;
                    let xi = x as i32;
                    for (p, shift) in [(get(x - 1, y), 0), (get(x + 1, y), 0), (get(x, y - 1), xi), (get(x, y + 1), -xi)] {
                        if p.0 <= p.1 {
                            lo = lo.min(p.0 + shift);
                            hi = hi.max(p.1 + shift);
                        }
                    }
                    grid[((x + m) * side + (y + m)) as usize] = (lo, hi);
                    y += 2;
                }
            }
            layers.push(grid);
        }
        Ok(AreaTable { max_len, layers })
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    /// `[lo, hi]` for words of exactly `m` letters ending over `(x, y)`.
    pub fn interval(&self, m: u32, x: i64, y: i64) -> Option<(i64, i64)> {
        let mi = m as i64;
        if m > self.max_len || x.abs() > mi || y.abs() > mi {
            return None;
        }
        let (lo, hi) = self.layers[m as usize][((x + mi) * (2 * mi + 1) + (y + mi)) as usize];
        (lo <= hi).then_some((lo as i64, hi as i64))
    }

    /// `ρ(id, (x, y, z))` for `HEIS_STD`; `None` past the table.
    pub fn heis_distance(&self, x: i64, y: i64, z: i64) -> Option<u32> {
        let start = x.unsigned_abs() + y.unsigned_abs();
        let mut m = u32::try_from(start).ok()?;
        while m <= self.max_len {
            if let Some((lo, hi)) = self.interval(m, x, y) {
                if lo <= z && z <= hi {
                    return Some(m);
                }
            }
            m += 2;
        }
        None
    }

    /// `|B(n)|` for `HEIS_STD`, counted from the table.
    pub fn heis_ball_count(&self, n: u32) -> Option<u64> {
        if n > self.max_len {
            return None;
        }
        let ni = n as i64;
        let mut total = 0u64;
        for x in -ni..=ni {
            for y in -(ni - x.abs())..=(ni - x.abs()) {
                // intervals nest as m grows by two; the widest has the top parity
                let m = if (ni - x - y).rem_euclid(2) == 0 { n } else { n - 1 };
                if let Some((lo, hi)) = self.interval(m, x, y) {
                    total += (hi - lo + 1) as u64;
                }
            }
        }
        Some(total)
    }
}

/// Exact `ρ_S(id, ·)` for a builtin generating set.
#[derive(Debug, Clone)]
pub struct BuiltinOracle {
    builtin: Builtin,
    table: AreaTable,
}

impl BuiltinOracle {
    /// Exact for all elements whose Heisenberg-factor words need at most
    /// `max_len` letters.
    pub fn new(builtin: Builtin, max_len: u32) -> Result<Self> {
        let len = if builtin == Builtin::Z3Std { 0 } else { max_len };
        Ok(BuiltinOracle { builtin, table: AreaTable::new(len)? })
    }

    pub fn for_genset(s: &GenSet, max_len: u32) -> Result<Self> {
        let b = s
            .as_builtin()
            .ok_or_else(|| Error::Unsupported(format!("no closed-form distance for `{}`", s.label())))?;
        BuiltinOracle::new(b, max_len)
    }

    pub fn builtin(&self) -> Builtin {
        self.builtin
    }

    pub fn max_len(&self) -> u32 {
        self.table.max_len
    }

    fn budget(&self) -> Error {
        Error::DistanceBudget { budget: self.table.max_len }
    }

    /// `ρ_S(id, g)`.
    pub fn distance(&self, g: &LatticeElement) -> Result<u32> {
        if g.group != self.builtin.group() {
            return Err(Error::GroupMismatch { left: self.builtin.group(), right: g.group });
        }
        let heis = |x, y, z| self.table.heis_distance(x, y, z).ok_or_else(|| self.budget());
        match self.builtin {
            Builtin::HeisStd => heis(g.x, g.y, g.z),
            Builtin::ProdS2 => Ok(u32::try_from(g.v.unsigned_abs()).map_err(|_| Error::Overflow)? + heis(g.x, g.y, g.z)?),
            Builtin::Z3Std => u32::try_from(g.x.unsigned_abs() + g.y.unsigned_abs() + g.z.unsigned_abs())
                .map_err(|_| Error::Overflow),
            Builtin::ProdS1 => self.s1_distance(g),
        }
    }

    pub fn distance_between(&self, g: &LatticeElement, h: &LatticeElement) -> Result<u32> {
        let d = super::element::lat_mul(&super::element::lat_inv(g)?, h)?;
        self.distance(&d)
    }

    /// `S₁` words split into a planar word of length `m` and `k` central
    /// letters `(±1;0,0,±1)`; the latter reach `(v, c)` exactly when
    /// `|v|, |c| ≤ k` and both share the parity of `k`.
    fn s1_distance(&self, g: &LatticeElement) -> Result<u32> {
        let av = g.v.unsigned_abs() as i64;
        let m0 = (g.x.unsigned_abs() + g.y.unsigned_abs()) as i64;
        let max = self.table.max_len as i64;
        if m0 > max {
            return Err(self.budget());
        }
        let mut total = av + m0;
        loop {
            // every split of `total` must be inspectable
            if total - av > max {
                return Err(self.budget());
            }
            let mut m = m0;
            while m <= total - av {
                let k = total - m;
                if (k - av) % 2 == 0 {
                    if let Some((lo, hi)) = self.table.interval(m as u32, g.x, g.y) {
                        // c = z − z_p ranges over [z − hi, z − lo]
                        let mut c_lo = (g.z - hi).max(-k);
                        let c_hi = (g.z - lo).min(k);
                        if (c_lo - k).rem_euclid(2) != 0 {
                            c_lo += 1;
                        }
                        if c_lo <= c_hi {
                            return Ok(total as u32);
                        }
                    }
                }
                m += 2;
            }
            total += 2;
        }
    }

    /// Whether `g` lies in `B_S(n)`.
    pub fn in_ball(&self, g: &LatticeElement, n: u32) -> Result<bool> {
        match self.builtin {
            Builtin::ProdS1 => {
                // cheap rejections before the exact query
                if g.v.unsigned_abs() > n as u64 || g.x.unsigned_abs() + g.y.unsigned_abs() > n as u64 {
                    return Ok(false);
                }
                Ok(self.distance(g)? <= n)
            }
            _ => Ok(self.distance(g)? <= n),
        }
    }

    pub fn group(&self) -> Group {
        self.builtin.group()
    }
}
