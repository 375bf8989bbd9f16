//! Exact word distances by meet-in-the-middle breadth-first search.

use super::census::{next_layer, StateKey};
use super::element::{Group, LatticeElement};
use super::genset::GenSet;
use crate::error::{Error, Result};

struct Frontier {
    depth: u32,
    prev: Vec<u128>,
    cur: Vec<u128>,
}

impl Frontier {
    fn new(start: u128) -> Self {
        Frontier { depth: 0, prev: Vec::new(), cur: vec![start] }
    }

    fn advance(&mut self, s: &GenSet) -> Result<()> {
        let next = next_layer(s, &self.cur, &self.prev, true)?;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.depth += 1;
        Ok(())
    }
}

fn meets(a: &[u128], b: &[u128]) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().any(|k| large.binary_search(k).is_ok())
}

fn key(g: &LatticeElement) -> Result<u128> {
    u128::try_pack(g).ok_or(Error::Overflow)
}

/// `ρ_S(id, g)`, or `DistanceBudget` when it exceeds `budget`.
///
/// Both searches keep only their last two spheres. With forward sphere
/// `F_a` and backward sphere `B_b`, the distance is the first `a + b` at
/// which `F_a ∩ B_b` is nonempty; each step raises `a + b` by one.
pub fn word_distance(s: &GenSet, g: &LatticeElement, budget: u32) -> Result<u32> {
    if g.group != s.group() {
        return Err(Error::GroupMismatch { left: s.group(), right: g.group });
    }
    let mut fwd = Frontier::new(key(&LatticeElement::identity(s.group()))?);
    let mut bwd = Frontier::new(key(g)?);
    loop {
        if meets(&fwd.cur, &bwd.cur) {
            return Ok(fwd.depth + bwd.depth);
        }
        if fwd.depth + bwd.depth >= budget {
            return Err(Error::DistanceBudget { budget });
        }
        let side = if fwd.cur.len() <= bwd.cur.len() { &mut fwd } else { &mut bwd };
        side.advance(s)?;
        if side.cur.is_empty() {
            return Err(Error::Internal(format!("{g} is unreachable from the identity")));
        }
    }
}

/// Word length of `target` in `ℤ` under the given steps.
fn line_distance(steps: &[i64], target: i64, budget: u32) -> Result<u32> {
    if target == 0 {
        return Ok(0);
    }
    if steps.is_empty() {
        return Err(Error::Internal(format!("v = {target} is unreachable")));
    }
    // some optimal ordering stays inside this window
    let reach = steps.iter().map(|s| s.abs()).max().unwrap_or(0);
    let (lo, hi) = (target.min(0) - reach, target.max(0) + reach);
    let width = (hi - lo + 1) as usize;
    let mut seen = vec![false; width];
    seen[(-lo) as usize] = true;
    let mut layer = vec![0i64];
    for d in 1..=budget {
        let mut next = Vec::new();
        for &p in &layer {
            for &st in steps {
                let q = p + st;
                if q < lo || q > hi || seen[(q - lo) as usize] {
                    continue;
                }
                if q == target {
                    return Ok(d);
                }
                seen[(q - lo) as usize] = true;
                next.push(q);
            }
        }
        if next.is_empty() {
            return Err(Error::Internal(format!("v = {target} is unreachable")));
        }
        layer = next;
    }
    Err(Error::DistanceBudget { budget })
}

/// Distance for generating sets that split across `ℤ × H₃(ℤ)`: the
/// `ℤ`-factor word length plus a Heisenberg-factor search.
pub fn split_word_distance(s: &GenSet, g: &LatticeElement, budget: u32) -> Result<u32> {
    if g.group != s.group() {
        return Err(Error::GroupMismatch { left: s.group(), right: g.group });
    }
    if !s.is_split() {
        return Err(Error::NotSplit(s.label().to_string()));
    }
    if s.group() == Group::Heis {
        return word_distance(s, g, budget);
    }
    let steps: Vec<i64> = s.elements().iter().filter(|e| e.v != 0).map(|e| e.v).collect();
    let heis: Vec<LatticeElement> = s
        .elements()
        .iter()
        .filter(|e| e.v == 0)
        .map(|e| LatticeElement::heis(e.x, e.y, e.z))
        .collect();
    let dv = line_distance(&steps, g.v, budget)?;
    let h = LatticeElement::heis(g.x, g.y, g.z);
    if h.is_identity() {
        return Ok(dv);
    }
    if heis.is_empty() {
        return Err(Error::Internal(format!("{g} is unreachable")));
    }
    let factor = GenSet::new(format!("{}/H3", s.label()), Group::Heis, heis)?;
    let dh = word_distance(&factor, &h, budget.saturating_sub(dv))?;
    Ok(dv + dh)
}
