//! Extreme-point families of the limit unit balls and scans of their
//! almost-extreme neighbourhoods.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{d3, d3_between, dinf, dinf_between, Dilate, HeisPoint, ProdPoint};
use crate::lattice::Group;

/// Pairwise-distance-2 configuration on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeFamily {
    pub a: f64,
    pub b: f64,
    pub group: Group,
    /// Heisenberg families have `v = 0` throughout.
    pub points: Vec<ProdPoint>,
    /// `max |d(g_i, g_j) − 2|`.
    pub deviation: f64,
    /// `max |d(id, g_i) − 1|`.
    pub sphere_deviation: f64,
}

fn metric(group: Group) -> fn(ProdPoint, ProdPoint) -> f64 {
    match group {
        Group::Heis => |p, q| d3_between(p.h, q.h),
        _ => dinf_between,
    }
}

/// The four-point Heisenberg family with parameters `a, b ∈ [½, 1]`;
/// `ProdHeisZ` prepends `(±1;0,0,0)`.
pub fn extreme_family(a: f64, b: f64, group: Group) -> Result<ExtremeFamily> {
    let ok = |t: f64| (0.5..=1.0).contains(&t);
    if !ok(a) || !ok(b) {
        return Err(Error::InvalidParameter(format!("a, b must lie in [1/2, 1], got ({a}, {b})")));
    }
    let heis = [
        HeisPoint::new(a, 1.0 - a, a * (1.0 - a) / 2.0),
        HeisPoint::new(1.0 - a, a, -a * (1.0 - a) / 2.0),
        HeisPoint::new(-b, -(1.0 - b), b * (1.0 - b) / 2.0),
        HeisPoint::new(-(1.0 - b), -b, -b * (1.0 - b) / 2.0),
    ];
    let mut points: Vec<ProdPoint> = Vec::with_capacity(6);
    match group {
        Group::Heis => {}
        Group::ProdHeisZ => {
            points.push(ProdPoint::new(1.0, 0.0, 0.0, 0.0));
            points.push(ProdPoint::new(-1.0, 0.0, 0.0, 0.0));
        }
        Group::Z3 => return Err(Error::Unsupported("extreme families live in Heisenberg groups".into())),
    }
    points.extend(heis.iter().map(|&h| ProdPoint { v: 0.0, h }));
    let mut f = ExtremeFamily { a, b, group, points, deviation: 0.0, sphere_deviation: 0.0 };
    f.deviation = verify_mutual_distance(&f);
    let d = metric(group);
    f.sphere_deviation = f.points.iter().map(|&p| (d(ProdPoint::IDENTITY, p) - 1.0).abs()).fold(0.0, f64::max);
    Ok(f)
}

/// `max_{i≠j} |d(g_i, g_j) − 2|`.
pub fn verify_mutual_distance(f: &ExtremeFamily) -> f64 {
    let d = metric(f.group);
    let mut worst: f64 = 0.0;
    for (i, &p) in f.points.iter().enumerate() {
        for &q in &f.points[i + 1..] {
            worst = worst.max((d(p, q) - 2.0).abs());
        }
    }
    worst
}

/// Index pairs of a product family whose members have trivial
/// Heisenberg part and lie at distance 2 from every other member.
pub fn isometry_pairs(f: &ExtremeFamily, tol: f64) -> Vec<(usize, usize)> {
    let d = metric(f.group);
    let flat = |p: &ProdPoint| p.h.euclid(HeisPoint::IDENTITY) <= tol;
    let mut out = Vec::new();
    for i in 0..f.points.len() {
        for j in i + 1..f.points.len() {
            let (p, q) = (f.points[i], f.points[j]);
            if !flat(&p) || !flat(&q) {
                continue;
            }
            let far = (0..f.points.len())
                .filter(|&k| k != i && k != j)
                .all(|k| (d(p, f.points[k]) - 2.0).abs() <= tol && (d(q, f.points[k]) - 2.0).abs() <= tol);
            if far {
                out.push((i, j));
            }
        }
    }
    out
}

/// Outcome of an almost-extreme scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
    pub accepted: usize,
    pub sup_defect: f64,
    /// `sup_defect / eps`, or `/ √eps` for the Heisenberg control scan.
    pub ratio: f64,
    /// Accepted point attaining the sup.
    pub witness: Option<ProdPoint>,
}

/// Smallest sampling scale, relative to the unit ball.
const MIN_SCALE: f64 = 1e-4;
const SHARD: usize = 1024;

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=0.2).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("eps must lie in [0, 0.2], got {eps}")))
    }
}

/// One scan: an acceptance test, a defect, and the anchors around which
/// candidates are drawn.
struct Scan<'a> {
    anchors: &'a [ProdPoint],
    with_v: bool,
    accept: &'a (dyn Fn(ProdPoint) -> bool + Sync),
    defect: &'a (dyn Fn(ProdPoint) -> f64 + Sync),
}

impl Scan<'_> {
    fn offset<R: Rng>(&self, rng: &mut R) -> ProdPoint {
        let v = if self.with_v { rng.gen_range(-1.0..1.0) } else { 0.0 };
        ProdPoint::new(v, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn place(&self, anchor: ProdPoint, u: ProdPoint, r: f64) -> ProdPoint {
        anchor * u.dilate_unchecked(r)
    }

    /// Pushes an accepted point outward along its dilation ray, keeping
    /// the last accepted scale.
    fn refine(&self, anchor: ProdPoint, u: ProdPoint, r: f64) -> ProdPoint {
        let mut lo = r;
        let mut hi = r;
        loop {
            hi *= 2.0;
            if hi > 4.0 || !(self.accept)(self.place(anchor, u, hi)) {
                break;
            }
            lo = hi;
        }
        for _ in 0..48 {
            let mid = 0.5 * (lo + hi);
            if (self.accept)(self.place(anchor, u, mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.place(anchor, u, lo)
    }

    /// Multi-scale draws `anchor · δ_r(u)` with `r` log-uniform, each
    /// accepted draw refined along its ray.
    fn run(&self, samples: usize, seed: u64) -> (usize, f64, Option<ProdPoint>) {
        let shards = samples.div_ceil(SHARD);
        let results: Vec<(usize, f64, Option<ProdPoint>)> = (0..shards)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let count = SHARD.min(samples - k * SHARD);
                let (mut accepted, mut sup, mut best) = (0usize, 0.0f64, None);
                for _ in 0..count {
                    let anchor = self.anchors[rng.gen_range(0..self.anchors.len())];
                    let r = (rng.gen_range(MIN_SCALE.ln()..0.0)).exp();
                    let u = self.offset(&mut rng);
                    if !(self.accept)(self.place(anchor, u, r)) {
                        continue;
                    }
                    accepted += 1;
                    let g = self.refine(anchor, u, r);
                    let d = (self.defect)(g);
                    if d > sup {
                        sup = d;
                        best = Some(g);
                    }
                }
                (accepted, sup, best)
            })
            .collect();
        let mut out = (0, 0.0, None);
        for (a, s, g) in results {
            out.0 += a;
            if s > out.1 {
                out.1 = s;
                out.2 = g;
            }
        }
        out
    }
}

fn unit_family() -> Vec<HeisPoint> {
    extreme_family(1.0, 1.0, Group::Heis).expect("a = b = 1 is valid").points.iter().map(|p| p.h).collect()
}

/// Almost-midpoints `p` of the identity and each `hᵢ` of the `a = b = 1`
/// family; returns the largest `d3(id, p)` found.
pub fn midpoint_defect_scan(eps: f64, samples: usize, seed: u64) -> Result<ScanReport> {
    check_eps(eps)?;
    let hs = unit_family();
    let accept = |g: ProdPoint| {
        let p = g.h;
        let dp = d3(p);
        dp <= 1.0 && hs.iter().all(|&h| dp + d3(h) <= d3_between(p, h) + eps)
    };
    let defect = |g: ProdPoint| d3(g.h);
    let scan = Scan { anchors: &[ProdPoint::IDENTITY], with_v: false, accept: &accept, defect: &defect };
    let (accepted, sup, witness) = scan.run(samples, seed);
    Ok(ScanReport { eps, samples, seed, accepted, sup_defect: sup, ratio: ratio(sup, eps), witness })
}

fn ratio(sup: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        sup / scale
    } else {
        0.0
    }
}

/// The `a = b = 1` product family without `(1;0,0,0)`.
pub fn five_point_configuration() -> Vec<ProdPoint> {
    extreme_family(1.0, 1.0, Group::ProdHeisZ).expect("a = b = 1 is valid").points[1..].to_vec()
}

/// Points of `B_{d∞}(1)` at distance `≥ 2 − eps` from the five-point
/// configuration; returns the largest `min(|v|, |v − 1|, |v + 1|)`.
pub fn abnormal_vertical_scan(eps: f64, samples: usize, seed: u64) -> Result<ScanReport> {
    check_eps(eps)?;
    let five = five_point_configuration();
    let accept = |g: ProdPoint| dinf(g) <= 1.0 && five.iter().all(|&q| dinf_between(g, q) >= 2.0 - eps);
    let defect = |g: ProdPoint| g.v.abs().min((g.v - 1.0).abs()).min((g.v + 1.0).abs());
    let mut anchors = extreme_family(1.0, 1.0, Group::ProdHeisZ)?.points;
    anchors.push(ProdPoint::IDENTITY);
    let scan = Scan { anchors: &anchors, with_v: true, accept: &accept, defect: &defect };
    let (accepted, sup, witness) = scan.run(samples, seed);
    Ok(ScanReport { eps, samples, seed, accepted, sup_defect: sup, ratio: ratio(sup, eps), witness })
}

/// Heisenberg analogue: points of `B_{d3}(1)` at distance `≥ 2 − eps` from
/// `(0,1,0), (−1,0,0), (0,−1,0)`; returns the largest `d3` distance to
/// `(1,0,0)`, the only point completing them to an extreme family.
pub fn heisenberg_control_scan(eps: f64, samples: usize, seed: u64) -> Result<ScanReport> {
    check_eps(eps)?;
    let hs = unit_family();
    let target = hs[0];
    let rest = &hs[1..];
    let accept = |g: ProdPoint| d3(g.h) <= 1.0 && rest.iter().all(|&q| d3_between(g.h, q) >= 2.0 - eps);
    let defect = |g: ProdPoint| d3_between(g.h, target);
    let mut anchors: Vec<ProdPoint> = hs.iter().map(|&h| ProdPoint { v: 0.0, h }).collect();
    anchors.push(ProdPoint::IDENTITY);
    let scan = Scan { anchors: &anchors, with_v: false, accept: &accept, defect: &defect };
    let (accepted, sup, witness) = scan.run(samples, seed);
    Ok(ScanReport { eps, samples, seed, accepted, sup_defect: sup, ratio: ratio(sup, eps.sqrt()), witness })
}
