//! Rescaled word metrics against their limit: distortion of the canonical
//! correspondence, the central gap of `S₂`, and distance ratios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::norm::{pansu_norm, project};
use crate::error::{Error, Result};
use crate::geometry::{d3, dilate, dinf};
use crate::lattice::census::reach_bounds;
use crate::lattice::{
    lat_inv, lat_mul, split_word_distance, word_distance, Builtin, BuiltinOracle, GenSet, Group, LatticeElement,
};

/// Exact `ρ_S(id, ·)`: closed form for builtins, search otherwise.
#[derive(Debug, Clone)]
pub enum DistanceSource {
    Oracle(BuiltinOracle),
    Search { set: GenSet, budget: u32 },
}

impl DistanceSource {
    /// Exact for distances up to `budget`.
    pub fn new(s: &GenSet, budget: u32) -> Result<Self> {
        match s.as_builtin() {
            Some(b) => Ok(DistanceSource::Oracle(BuiltinOracle::new(b, budget)?)),
            None => Ok(DistanceSource::Search { set: s.clone(), budget }),
        }
    }

    pub fn distance(&self, g: &LatticeElement) -> Result<u32> {
        match self {
            DistanceSource::Oracle(o) => o.distance(g),
            DistanceSource::Search { set, budget } => word_distance(set, g, *budget),
        }
    }

    /// `ρ_S(id, g)` if it is at most `n`; a budget overrun above `n` is
    /// just a miss.
    pub fn distance_within(&self, g: &LatticeElement, n: u32) -> Result<Option<u32>> {
        match self.distance(g) {
            Ok(d) => Ok((d <= n).then_some(d)),
            Err(Error::DistanceBudget { budget }) if budget >= n => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// `d∞(δ_{1/n} exp g)` for the `ℓ¹` limit norm.
pub fn scaled_limit_distance(g: &LatticeElement, n: u32) -> Result<f64> {
    let t = 1.0 / n as f64;
    Ok(match g.group {
        Group::Heis => d3(dilate(t, g.heis_exp())?),
        Group::ProdHeisZ => dinf(dilate(t, g.prod_exp())?),
        Group::Z3 => t * (g.x.abs() + g.y.abs() + g.z.abs()) as f64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairGap {
    pub name: String,
    pub left: LatticeElement,
    pub right: LatticeElement,
    /// `ρ_S(left, right) / n`
    pub word: f64,
    /// `d∞(δ_{1/n} left, δ_{1/n} right)`
    pub limit: f64,
    pub gap: f64,
}

/// Distortion of `γ ↦ δ_{1/n} exp γ` on sampled pairs of `B_S(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub label: String,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    /// Largest gap over sampled pairs and witnesses.
    pub distortion: f64,
    pub sampled_distortion: f64,
    pub worst_pair: Option<PairGap>,
    pub witnesses: Vec<PairGap>,
    /// Pairs listed for comparison only; not part of the distortion.
    pub reference: Vec<PairGap>,
}

/// `ρ_S` of a word's product, certified when the word length equals the
/// limit-norm lower bound.
fn certified_or_exact(s: &GenSet, word: &[LatticeElement], source: &DistanceSource) -> Result<(LatticeElement, u32)> {
    let mut g = LatticeElement::identity(s.group());
    for w in word {
        g = lat_mul(&g, w)?;
    }
    let norm = pansu_norm(s)?;
    let lower = (norm.gauge(&project(&g)) - 1e-9).ceil() as usize;
    if lower == word.len() {
        return Ok((g, word.len() as u32));
    }
    Ok((g, source.distance(&g)?))
}

fn pair_gap(name: &str, a: LatticeElement, b: LatticeElement, rho: u32, n: u32) -> Result<PairGap> {
    let h = lat_mul(&lat_inv(&a)?, &b)?;
    let word = rho as f64 / n as f64;
    let limit = scaled_limit_distance(&h, n)?;
    Ok(PairGap { name: name.to_string(), left: a, right: b, word, limit, gap: (word - limit).abs() })
}

/// Box containing `B_S(n)`.
fn ball_box(s: &GenSet, n: u32) -> Result<[i64; 4]> {
    reach_bounds(s, n).ok_or(Error::Overflow)
}

fn sample_box<R: Rng>(rng: &mut R, group: Group, b: [i64; 4]) -> LatticeElement {
    let mut draw = |m: i64| if m == 0 { 0 } else { rng.gen_range(-m..=m) };
    let (v, x, y, z) = (draw(b[0]), draw(b[1]), draw(b[2]), draw(b[3]));
    LatticeElement { group, v, x, y, z }
}

/// Uniform element of `B_S(n)` by rejection from its bounding box.
fn sample_ball<R: Rng>(rng: &mut R, s: &GenSet, n: u32, b: [i64; 4], source: &DistanceSource) -> Result<LatticeElement> {
    loop {
        let g = sample_box(rng, s.group(), b);
        if source.distance_within(&g, n)?.is_some() {
            return Ok(g);
        }
    }
}

/// Canonical-correspondence distortion at scale `n`.
///
/// Requires the limit norm to be `ℓ¹`, where `d∞` has a closed form.
pub fn gh_distortion(s: &GenSet, n: u32, samples: usize, seed: u64) -> Result<CorrespondenceReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !pansu_norm(s)?.is_l1() {
        return Err(Error::Unsupported(format!("limit norm of `{}` is not ℓ¹", s.label())));
    }
    let group = s.group();
    let id = LatticeElement::identity(group);
    // sampled pairs need 2n; the vertical reference pair needs about 4√(2n)
    let reach = if samples > 0 { 2 * n } else { (4.0 * (2.0 * n as f64).sqrt()).ceil() as u32 + 8 };
    let source = DistanceSource::new(s, reach)?;

    let mut witnesses = Vec::new();
    let mut reference = Vec::new();
    match group {
        Group::Heis | Group::Z3 => {
            let a = s
                .elements()
                .iter()
                .copied()
                .find(|e| (e.x, e.y, e.z) == (1, 0, 0))
                .unwrap_or(LatticeElement { group, v: 0, x: 1, y: 0, z: 0 });
            let (g, rho) = certified_or_exact(s, &vec![a; n as usize], &source)?;
            witnesses.push(pair_gap("a^n", id, g, rho, n)?);
        }
        Group::ProdHeisZ => {
            let gamma = LatticeElement::prod(n as i64, 0, 0, n as i64);
            let letter = LatticeElement::prod(1, 0, 0, 1);
            let rho = if s.elements().contains(&letter) {
                certified_or_exact(s, &vec![letter; n as usize], &source)?.1
            } else if s.is_split() {
                split_word_distance(s, &gamma, 4 * n + 64)?
            } else {
                source.distance(&gamma)?
            };
            witnesses.push(pair_gap("gamma_n", id, gamma, rho, n)?);
            if s.as_builtin() == Some(Builtin::ProdS1) {
                let down = LatticeElement::prod(n as i64, 0, 0, -(n as i64));
                let h = lat_mul(&lat_inv(&gamma)?, &down)?;
                reference.push(pair_gap("vertical", gamma, down, source.distance(&h)?, n)?);
            }
        }
    }

    let mut sampled_distortion = 0.0;
    let mut worst_pair = None;
    if samples > 0 {
        let b = ball_box(s, n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::with_capacity(samples);
        for _ in 0..samples {
            let p = sample_ball(&mut rng, s, n, b, &source)?;
            let q = sample_ball(&mut rng, s, n, b, &source)?;
            pairs.push((p, q));
        }
        let gaps = pairs
            .par_iter()
            .map(|(p, q)| {
                let h = lat_mul(&lat_inv(p)?, q)?;
                pair_gap("sampled", *p, *q, source.distance(&h)?, n)
            })
            .collect::<Result<Vec<_>>>()?;
        // first maximal entry, independent of scheduling
        for g in gaps {
            if worst_pair.as_ref().map_or(true, |w: &PairGap| g.gap > w.gap) {
                sampled_distortion = g.gap;
                worst_pair = Some(g);
            }
        }
    }
    let distortion = witnesses.iter().map(|w| w.gap).fold(sampled_distortion, f64::max);
    Ok(CorrespondenceReport {
        label: s.label().to_string(),
        n,
        samples,
        seed,
        distortion,
        sampled_distortion,
        worst_pair,
        witnesses,
        reference,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRow {
    pub n: u32,
    /// `ρ₂(id, γₙ) − n`
    pub gap: u32,
    /// `gap / √n`
    pub ratio: f64,
    /// `ρ₁(id, γₙ) − n`
    pub s1_excess: u32,
}

/// Excess of `ρ_{S₂}` over `ρ_{S₁}` along `γₙ = (n;0,0,n)`.
pub fn sqrt_gap_experiment(ns: &[u32]) -> Result<Vec<GapRow>> {
    let s2 = Builtin::ProdS2.genset();
    let s1 = BuiltinOracle::new(Builtin::ProdS1, 8)?;
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidParameter("n must be positive".into()));
            }
            let gamma = LatticeElement::prod(n as i64, 0, 0, n as i64);
            let budget = n + 8 * ((n as f64).sqrt().ceil() as u32) + 8;
            let rho2 = split_word_distance(&s2, &gamma, budget)?;
            let rho1 = s1.distance(&gamma)?;
            let gap = rho2 - n;
            Ok(GapRow { n, gap, ratio: gap as f64 / (n as f64).sqrt(), s1_excess: rho1 - n })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: u32,
    pub samples: usize,
    /// `max |ρ₁/ρ₂ − 1|` over sampled elements of the `ρ₂`-sphere of radius `n`.
    pub max_deviation: f64,
    /// `|ρ₁(γₙ)/ρ₂(γₙ) − 1|` (product groups only).
    pub gamma_deviation: Option<f64>,
}

/// Per-radius ratio deviation between two word metrics on one group.
pub fn ratio_convergence(s1: &GenSet, s2: &GenSet, radius: u32, samples: usize, seed: u64) -> Result<Vec<RatioRow>> {
    if s1.group() != s2.group() {
        return Err(Error::GroupMismatch { left: s1.group(), right: s2.group() });
    }
    // one letter of either set costs at most 5 letters of the other for the builtins
    let src1 = DistanceSource::new(s1, 6 * radius + 8)?;
    let src2 = DistanceSource::new(s2, 6 * radius + 8)?;
    let mut rows = Vec::with_capacity(radius as usize);
    for n in 1..=radius {
        let b = ball_box(s2, n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut sphere = Vec::with_capacity(samples);
        while sphere.len() < samples {
            let g = sample_box(&mut rng, s2.group(), b);
            if src2.distance_within(&g, n)? == Some(n) {
                sphere.push(g);
            }
        }
        let max_deviation = sphere
            .par_iter()
            .map(|g| Ok((src1.distance(g)? as f64 / n as f64 - 1.0).abs()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let gamma_deviation = if s2.group() == Group::ProdHeisZ {
            let g = LatticeElement::prod(n as i64, 0, 0, n as i64);
            Some((src1.distance(&g)? as f64 / src2.distance(&g)? as f64 - 1.0).abs())
        } else {
            None
        };
        rows.push(RatioRow { n, samples, max_deviation, gamma_deviation });
    }
    Ok(rows)
}
