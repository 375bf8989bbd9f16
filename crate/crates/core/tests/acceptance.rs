//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p pansu-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use pansu_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Exact-formula agreement on every element of `B(30)`.
fn oracle_agreement() -> Result<Outcome> {
    let c = enumerate_ball(&Builtin::HeisStd.genset(), 30, true)?;
    let layers = c.layers.as_ref().expect("stored");
    let per_sphere: Vec<f64> = layers
        .iter()
        .enumerate()
        .map(|(n, layer)| layer.iter().map(|g| (n as f64 - d3(g.heis_exp())).abs()).fold(0.0, f64::max))
        .collect();
    let low = per_sphere[1..=15].iter().copied().fold(0.0, f64::max);
    let high = per_sphere[15..=30].iter().copied().fold(0.0, f64::max);
    let c0 = low.max(high);
    Ok(outcome(
        high - low < 1.0,
        format!("|B(30)| = {}, C0 = {c0:.4}, max n∈[1,15] = {low:.4}, max n∈[15,30] = {high:.4}", c.ball(30)),
    ))
}

/// Volume law and sphere sandwich share the radius-60 census.
fn volume_and_spheres() -> Result<(Outcome, Outcome)> {
    let heis = enumerate_ball(&Builtin::HeisStd.genset(), 60, false)?;
    let vol = unit_ball_volume(Metric::D3);
    let fit = fit_volume(&heis, homogeneous_dimension(Group::Heis), (20, 60))?;
    let rel = (fit.c_hat - vol).abs() / vol;
    let (mx, med) = (fit.max_abs_residual(), fit.median_abs_residual());
    let volume = outcome(
        rel <= 0.10 && mx <= 2.0 * med,
        format!(
            "ĉ = {:.5}, vol(B_d3(1)) = {vol:.6}, rel err {:.2}%, max|r| = {mx:.4}, median|r| = {med:.4}",
            fit.c_hat,
            100.0 * rel
        ),
    );

    let ratios: Vec<f64> = (10..=60).map(|n| heis.sphere(n) as f64 / (n as f64).powi(3)).collect();
    let (c1, c2) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    let mut bound_ok = heis.sphere_bound_violations().is_empty();
    let mut radii = vec![format!("HEIS_STD@60")];
    for (b, r) in [(Builtin::ProdS1, 30), (Builtin::ProdS2, 30), (Builtin::Z3Std, 60)] {
        let c = enumerate_ball(&b.genset(), r, false)?;
        bound_ok &= c.sphere_bound_violations().is_empty();
        radii.push(format!("{b}@{r}"));
    }
    let spheres = outcome(
        c2 / c1 <= 4.0 && bound_ok,
        format!(
            "|S(n)|/n³ ∈ [{c1:.4}, {c2:.4}] (ratio {:.3}) over n∈[10,60]; |B|≤2n|S| on {}: {}",
            c2 / c1,
            radii.join(", "),
            if bound_ok { "all hold" } else { "VIOLATED" }
        ),
    );
    Ok((volume, spheres))
}

fn sqrt_gap() -> Result<Outcome> {
    let rows = sqrt_gap_experiment(&[16, 25, 36, 64, 100])?;
    let band = rows.iter().all(|r| (3.0..=5.0).contains(&r.ratio));
    let s1 = Builtin::ProdS1.genset();
    let mut exact = true;
    for n in 1..=12i64 {
        exact &= word_distance(&s1, &LatticeElement::prod(n, 0, 0, n), 40)? == n as u32;
    }
    let table: Vec<String> = rows.iter().map(|r| format!("{}:{}({:.3})", r.n, r.gap, r.ratio)).collect();
    Ok(outcome(band && exact, format!("g_n (g_n/√n) = {}; ρ₁(γ_n) = n for n ≤ 12: {exact}", table.join(" "))))
}

fn gh_rates() -> Result<Outcome> {
    let s1 = Builtin::ProdS1.genset();
    let mut series = Vec::new();
    let mut scaled = Vec::new();
    for n in [25u32, 50, 100, 200, 400] {
        let r = gh_distortion(&s1, n, 0, 0)?;
        let w = r.witnesses[0].gap;
        series.push((n as f64, w));
        scaled.push(w * (n as f64).sqrt());
    }
    let s1_fit = fit_rate(&series)?;
    let scaled_ok = scaled.iter().all(|s| (3.5..=4.5).contains(s));

    let heis = Builtin::HeisStd.genset();
    let mut h_series = Vec::new();
    for n in [8u32, 16, 32, 64] {
        h_series.push((n as f64, gh_distortion(&heis, n, 2000, 17)?.distortion));
    }
    let h_fit = fit_rate(&h_series)?;

    // median over three seeds decreases from n to 4n
    let median = |n: u32| -> Result<f64> {
        let mut v = (1..=3).map(|seed| Ok(gh_distortion(&heis, n, 500, seed)?.distortion)).collect::<Result<Vec<_>>>()?;
        v.sort_by(f64::total_cmp);
        Ok(v[1])
    };
    let (m8, m32) = (median(8)?, median(32)?);

    let pass = (-0.65..=-0.35).contains(&s1_fit.slope) && scaled_ok && h_fit.slope <= -0.8 && m32 < m8;
    Ok(outcome(
        pass,
        format!(
            "PROD_S1 witness slope {:.4}, witness·√n ∈ [{:.4}, {:.4}]; HEIS_STD D_n slope {:.4} (D_8 = {:.4}, D_64 = {:.4}); median D_8 {m8:.4} > D_32 {m32:.4}",
            s1_fit.slope,
            scaled.iter().copied().fold(f64::MAX, f64::min),
            scaled.iter().copied().fold(0.0, f64::max),
            h_fit.slope,
            h_series[0].1,
            h_series[3].1
        ),
    ))
}

fn rigidity() -> Result<Outcome> {
    let epsilons = [0.1, 0.05, 0.025];
    let mut prod = Vec::new();
    let mut ctrl = Vec::new();
    let mut ratios = Vec::new();
    for &eps in &epsilons {
        let a = abnormal_vertical_scan(eps, 100_000, 2024)?;
        let h = heisenberg_control_scan(eps, 100_000, 2024)?;
        prod.push((eps, a.sup_defect));
        ctrl.push((eps, h.sup_defect));
        ratios.push(a.ratio);
    }
    let (pf, cf) = (fit_rate(&prod)?, fit_rate(&ctrl)?);
    let bounded = ratios.iter().all(|&r| r > 0.0 && r <= 2.0);
    Ok(outcome(
        (0.8..=1.2).contains(&pf.slope) && (0.3..=0.7).contains(&cf.slope) && bounded,
        format!(
            "product defect slope {:.4} (defect/eps = {}); Heisenberg control slope {:.4}",
            pf.slope,
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(", "),
            cf.slope
        ),
    ))
}

fn extreme_grid() -> Result<Outcome> {
    let grid: Vec<f64> = (0..=10).map(|k| 0.5 + 0.05 * k as f64).collect();
    let mut worst: f64 = 0.0;
    for group in [Group::Heis, Group::ProdHeisZ] {
        for &a in &grid {
            for &b in &grid {
                let f = extreme_family(a, b, group)?;
                worst = worst.max(f.deviation).max(f.sphere_deviation);
            }
        }
    }
    let pairs = isometry_pairs(&extreme_family(1.0, 1.0, Group::ProdHeisZ)?, 1e-9);
    Ok(outcome(
        worst <= 1e-9 && pairs == vec![(0, 1)],
        format!("242 families, worst deviation {worst:.2e}; pairs with trivial Heisenberg part at distance 2 from the rest: {pairs:?}"),
    ))
}

fn property_suite() -> Result<Outcome> {
    const CASES: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pt = |rng: &mut ChaCha8Rng, s: f64| {
        ProdPoint::new(rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s))
    };
    let (mut tri, mut dil, mut cont, mut geo) = (0usize, 0usize, 0usize, 0usize);
    let mut worst_geo: f64 = 0.0;
    for _ in 0..CASES {
        let (p, q, r) = (pt(&mut rng, 3.0), pt(&mut rng, 3.0), pt(&mut rng, 3.0));
        if d3_between(p.h, r.h) > d3_between(p.h, q.h) + d3_between(q.h, r.h) + 1e-12
            || dinf_between(p, r) > dinf_between(p, q) + dinf_between(q, r) + 1e-12
        {
            tri += 1;
        }
        let t = 2f64.powi(rng.gen_range(-8..8));
        if dinf(dilate(t, p)?) != t * dinf(p) {
            dil += 1;
        }
        let (x, y) = (p.h.x, p.h.y);
        let half = (x * y).abs() / 2.0;
        let m = x.abs().max(y.abs());
        let [a, b, _] = d3_formulas(HeisPoint::new(x, y, half));
        let [_, b2, c2] = d3_formulas(HeisPoint::new(x, y, m * m - half));
        if (a - b).abs() > 1e-12 * (1.0 + a) || (b2 - c2).abs() > 1e-12 * (1.0 + b2) {
            cont += 1;
        }
        if !p.h.is_identity() {
            let (end, len) = plan_defect(&synthesize_geodesic(p.h)?);
            let e = end.max(len) / (1.0 + d3(p.h));
            worst_geo = worst_geo.max(e);
            if e > 1e-9 {
                geo += 1;
            }
        }
    }
    let mut gron_bad = 0usize;
    let mut ratio_range = (f64::MAX, 0.0f64);
    for (k, eps) in [0.2, 0.1, 0.05, 0.025].into_iter().enumerate() {
        for s in sample_gronwall(eps, CASES / 4, 100 + k as u64)? {
            let r = s.halving_ratio();
            ratio_range = (ratio_range.0.min(r), ratio_range.1.max(r));
            if !(2.0 / 1.5..=2.0 * 1.5).contains(&r) {
                gron_bad += 1;
            }
        }
    }
    let pass = tri + dil + cont + geo + gron_bad == 0;
    Ok(outcome(
        pass,
        format!(
            "{CASES} cases each: triangle {tri}, dilation {dil}, boundary {cont}, geodesic {geo} (worst {worst_geo:.1e}) failures; Gronwall halving ratio ∈ [{:.3}, {:.3}], {gron_bad} outside [1.333, 3]",
            ratio_range.0, ratio_range.1
        ),
    ))
}

fn cone_identity() -> Result<Outcome> {
    let (s1, s2) = (Builtin::ProdS1.genset(), Builtin::ProdS2.genset());
    let same = pansu_norm(&s1)?.vertices() == pansu_norm(&s2)?.vertices();
    let rows = ratio_convergence(&s1, &s2, 32, 200, 99)?;
    let (d8, d32) = (rows[7].max_deviation, rows[31].max_deviation);
    Ok(outcome(
        same && d32 < d8,
        format!("identical vertex sets: {same}; max |ρ₁/ρ₂ − 1| at R = 8: {d8:.4}, at R = 32: {d32:.4}"),
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Result<Outcome>)> = Vec::new();
    results.push((1, "exact-formula oracle agreement", oracle_agreement()));
    match volume_and_spheres() {
        Ok((v, s)) => {
            results.push((2, "volume law", Ok(v)));
            results.push((3, "sphere sandwich", Ok(s)));
        }
        Err(e) => {
            let msg = e.to_string();
            results.push((2, "volume law", Err(e)));
            results.push((3, "sphere sandwich", Err(Error::Internal(msg))));
        }
    }
    results.push((4, "sqrt(n) gap", sqrt_gap()));
    results.push((5, "distortion rate contrast", gh_rates()));
    results.push((6, "abnormal rigidity", rigidity()));
    results.push((7, "extreme families", extreme_grid()));
    results.push((8, "geometry property suite", property_suite()));
    results.push((9, "norm and cone identity", cone_identity()));

    let mut failed = 0;
    for (id, name, r) in &results {
        match r {
            Ok(o) => {
                println!("{} criterion {id} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
                failed += usize::from(!o.pass);
            }
            Err(e) => {
                println!("FAIL criterion {id} ({name}): error: {e}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
