//! Layered breadth-first enumeration of word-metric balls.
//!
//! Generating sets are symmetric, so the Cayley graph is undirected and
//! every neighbour of sphere `n` lies in sphere `n − 1`, `n` or `n + 1`.
//! Sphere `n + 1` is therefore the set of right-translates of sphere `n`
//! minus spheres `n` and `n − 1`; no global visited set is kept.
//! Layers are sorted key vectors, so serial and parallel runs agree
//! bit for bit.

use rayon::prelude::*;
use serde::Serialize;

use super::element::{lat_mul, Group, LatticeElement};
use super::genset::GenSet;
use crate::error::{Error, Result};

/// Fixed-width packing of a lattice element, used as the BFS state.
pub(crate) trait StateKey: Copy + Ord + Send + Sync {
    /// Largest coordinate magnitudes representable, `[v, x, y, z]`.
    const LIMITS: [i64; 4];
    fn pack(v: i64, x: i64, y: i64, z: i64) -> Self;
    fn unpack(self) -> [i64; 4];

    fn try_pack(e: &LatticeElement) -> Option<Self> {
        let c = [e.v, e.x, e.y, e.z];
        if c.iter().zip(Self::LIMITS).all(|(a, l)| a.abs() <= l) {
            Some(Self::pack(e.v, e.x, e.y, e.z))
        } else {
            None
        }
    }

    fn fits(bounds: [i64; 4]) -> bool {
        bounds.iter().zip(Self::LIMITS).all(|(b, l)| *b <= l)
    }
}

const V_BITS: u32 = 10;
const XY_BITS: u32 = 12;
const Z_BITS: u32 = 30;

impl StateKey for u64 {
    const LIMITS: [i64; 4] = [
        (1 << (V_BITS - 1)) - 1,
        (1 << (XY_BITS - 1)) - 1,
        (1 << (XY_BITS - 1)) - 1,
        (1 << (Z_BITS - 1)) - 1,
    ];

    fn pack(v: i64, x: i64, y: i64, z: i64) -> u64 {
        let off = |a: i64, bits: u32| (a + (1 << (bits - 1))) as u64;
        (off(v, V_BITS) << (2 * XY_BITS + Z_BITS))
            | (off(x, XY_BITS) << (XY_BITS + Z_BITS))
            | (off(y, XY_BITS) << Z_BITS)
            | off(z, Z_BITS)
    }

    fn unpack(self) -> [i64; 4] {
        let field = |shift: u32, bits: u32| ((self >> shift) & ((1 << bits) - 1)) as i64 - (1 << (bits - 1));
        [
            field(2 * XY_BITS + Z_BITS, V_BITS),
            field(XY_BITS + Z_BITS, XY_BITS),
            field(Z_BITS, XY_BITS),
            field(0, Z_BITS),
        ]
    }
}

impl StateKey for u128 {
    const LIMITS: [i64; 4] = [i32::MAX as i64; 4];

    fn pack(v: i64, x: i64, y: i64, z: i64) -> u128 {
        let off = |a: i64| (a + (1i64 << 31)) as u128;
        (off(v) << 96) | (off(x) << 64) | (off(y) << 32) | off(z)
    }

    fn unpack(self) -> [i64; 4] {
        let field = |shift: u32| ((self >> shift) & 0xffff_ffff) as i64 - (1i64 << 31);
        [field(96), field(64), field(32), field(0)]
    }
}

/// Worst-case coordinate magnitudes reachable in `radius` steps.
pub(crate) fn reach_bounds(s: &GenSet, radius: u32) -> Option<[i64; 4]> {
    let [bv, bx, by, bz] = s.coordinate_bounds();
    let r = radius as i64;
    let cross = if s.group() == Group::Z3 { 0 } else { r.checked_mul(r)?.checked_mul(bx)?.checked_mul(by)? };
    Some([
        r.checked_mul(bv)?,
        r.checked_mul(bx)?,
        r.checked_mul(by)?,
        r.checked_mul(bz)?.checked_add(cross)?,
    ])
}

/// Sphere and ball counts of a word-metric ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallCensus {
    pub label: String,
    pub group: Group,
    /// Largest completed radius.
    pub max_radius: u32,
    /// `|S(n)|` for `n = 0..=max_radius`.
    pub spheres: Vec<u64>,
    /// `|B(n)|` for `n = 0..=max_radius`.
    pub balls: Vec<u64>,
    /// Sorted sphere elements, when requested.
    #[serde(skip)]
    pub layers: Option<Vec<Vec<LatticeElement>>>,
}

impl BallCensus {
    /// Builds a census from sphere counts alone.
    pub fn from_spheres(label: impl Into<String>, group: Group, spheres: Vec<u64>) -> Self {
        let balls = spheres
            .iter()
            .scan(0u64, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect();
        BallCensus {
            label: label.into(),
            group,
            max_radius: spheres.len().saturating_sub(1) as u32,
            spheres,
            balls,
            layers: None,
        }
    }

    pub fn ball(&self, n: u32) -> u64 {
        self.balls[n as usize]
    }

    pub fn sphere(&self, n: u32) -> u64 {
        self.spheres[n as usize]
    }

    /// `radius,sphere,ball` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("radius,sphere,ball\n");
        for (n, (s, b)) in self.spheres.iter().zip(&self.balls).enumerate() {
            out.push_str(&format!("{n},{s},{b}\n"));
        }
        out
    }

    /// Radii `n ≥ 1` violating `|B(n)| ≤ 2n·|S(n)|`.
    pub fn sphere_bound_violations(&self) -> Vec<u32> {
        (1..=self.max_radius)
            .filter(|&n| self.ball(n) > 2 * n as u64 * self.sphere(n))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Keep every sphere's elements.
    pub store: bool,
    /// Expand frontiers with rayon.
    pub parallel: bool,
    /// Cap on simultaneously held states.
    pub max_states: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { store: false, parallel: true, max_states: 60_000_000 }
    }
}

/// Census plus the reason enumeration stopped early, if it did.
#[derive(Debug)]
pub struct CensusOutcome {
    pub census: BallCensus,
    pub stopped: Option<Error>,
}

/// Exact ball census up to `radius`.
pub fn enumerate_ball(s: &GenSet, radius: u32, store: bool) -> Result<BallCensus> {
    enumerate_ball_with(s, radius, EnumerateOptions { store, ..Default::default() })
}

pub fn enumerate_ball_with(s: &GenSet, radius: u32, opts: EnumerateOptions) -> Result<BallCensus> {
    let out = enumerate_ball_partial(s, radius, opts);
    match out.stopped {
        Some(e) => Err(e),
        None => Ok(out.census),
    }
}

/// Like [`enumerate_ball_with`] but returns the completed prefix on failure.
pub fn enumerate_ball_partial(s: &GenSet, radius: u32, opts: EnumerateOptions) -> CensusOutcome {
    match reach_bounds(s, radius) {
        Some(b) if u64::fits(b) => run::<u64>(s, radius, opts),
        _ => run::<u128>(s, radius, opts),
    }
}

fn expand_into<K: StateKey>(s: &GenSet, g: K, out: &mut Vec<K>) -> Result<()> {
    let [v, x, y, z] = g.unpack();
    let e = LatticeElement { group: s.group(), v, x, y, z };
    for gen in s.elements() {
        let p = lat_mul(&e, gen)?;
        out.push(K::try_pack(&p).ok_or(Error::Overflow)?);
    }
    Ok(())
}

/// Sphere `n + 1` from spheres `n` (`cur`) and `n − 1` (`prev`), both sorted.
pub(crate) fn next_layer<K: StateKey>(s: &GenSet, cur: &[K], prev: &[K], parallel: bool) -> Result<Vec<K>> {
    const CHUNK: usize = 4096;
    let mut candidates: Vec<K> = if parallel && cur.len() > CHUNK {
        let parts = cur
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut out = Vec::with_capacity(chunk.len() * s.len());
                for &g in chunk {
                    expand_into(s, g, &mut out)?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        parts.concat()
    } else {
        let mut out = Vec::with_capacity(cur.len() * s.len());
        for &g in cur {
            expand_into(s, g, &mut out)?;
        }
        out
    };
    if parallel {
        candidates.par_sort_unstable();
    } else {
        candidates.sort_unstable();
    }
    candidates.dedup();
    candidates.retain(|k| cur.binary_search(k).is_err() && prev.binary_search(k).is_err());
    Ok(candidates)
}

fn run<K: StateKey>(s: &GenSet, radius: u32, opts: EnumerateOptions) -> CensusOutcome {
    let group = s.group();
    let identity = K::pack(0, 0, 0, 0);
    let mut prev: Vec<K> = Vec::new();
    let mut cur: Vec<K> = vec![identity];
    let mut spheres = vec![1u64];
    let mut layers: Option<Vec<Vec<K>>> = opts.store.then(|| vec![cur.clone()]);
    let mut held: usize = 1;
    let mut stopped = None;

    for n in 0..radius {
        let estimate = cur.len().saturating_mul(s.len());
        let resident = if opts.store { held } else { prev.len() + cur.len() };
        if resident.saturating_add(estimate) > opts.max_states {
            stopped = Some(Error::MemoryBudget { budget: opts.max_states, last_radius: n });
            break;
        }
        let next = match next_layer(s, &cur, &prev, opts.parallel) {
            Ok(next) => next,
            Err(Error::Overflow) => {
                stopped = Some(overflow_at(n));
                break;
            }
            Err(e) => {
                stopped = Some(e);
                break;
            }
        };
        spheres.push(next.len() as u64);
        held += next.len();
        if let Some(ls) = layers.as_mut() {
            ls.push(next.clone());
        }
        prev = std::mem::replace(&mut cur, next);
    }

    let mut census = BallCensus::from_spheres(s.label(), group, spheres);
    census.layers = layers.map(|ls| {
        ls.into_iter()
            .map(|layer| {
                layer
                    .into_iter()
                    .map(|k| {
                        let [v, x, y, z] = k.unpack();
                        LatticeElement { group, v, x, y, z }
                    })
                    .collect()
            })
            .collect()
    });
    CensusOutcome { census, stopped }
}

fn overflow_at(last_radius: u32) -> Error {
    Error::EnumerationOverflow { last_radius }
}
