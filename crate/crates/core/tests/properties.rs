use pansu_core::*;
use proptest::prelude::*;

fn heis_point() -> impl Strategy<Value = HeisPoint> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| HeisPoint::new(x, y, z))
}

fn prod_point() -> impl Strategy<Value = ProdPoint> {
    (-2.0..2.0f64, heis_point()).prop_map(|(v, h)| ProdPoint { v, h })
}

fn lattice_element() -> impl Strategy<Value = LatticeElement> {
    (-50i64..50, -50i64..50, -50i64..50, -500i64..500).prop_map(|(v, x, y, z)| LatticeElement::prod(v, x, y, z))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn heis_group_laws(p in heis_point(), q in heis_point(), r in heis_point()) {
        let left = (p * q) * r;
        let right = p * (q * r);
        prop_assert!(left.euclid(right) < 1e-12);
        prop_assert!((p * p.inv()).euclid(HeisPoint::IDENTITY) < 1e-15);
        prop_assert_eq!(p * HeisPoint::IDENTITY, p);
    }

    #[test]
    fn coordinate_change_roundtrips(x in -9.0..9.0f64, y in -9.0..9.0f64, z in -9.0..9.0f64) {
        let e = coords_convert([x, y, z], CoordDirection::MatrixToExp);
        let m = coords_convert(e, CoordDirection::ExpToMatrix);
        prop_assert!((m[2] - z).abs() <= 1e-15 * (1.0 + (x * y).abs()) && m[0] == x && m[1] == y);
    }

    #[test]
    fn lattice_laws_are_exact(g in lattice_element(), h in lattice_element(), k in lattice_element()) {
        let gh_k = lat_mul(&lat_mul(&g, &h).unwrap(), &k).unwrap();
        let g_hk = lat_mul(&g, &lat_mul(&h, &k).unwrap()).unwrap();
        prop_assert_eq!(gh_k, g_hk);
        prop_assert!(lat_mul(&g, &lat_inv(&g).unwrap()).unwrap().is_identity());
        // exp is a homomorphism
        let prod = lat_mul(&g, &h).unwrap().prod_exp();
        prop_assert!(prod.euclid(g.prod_exp() * h.prod_exp()) < 1e-9);
    }

    #[test]
    fn d3_is_a_metric(p in heis_point(), q in heis_point()) {
        prop_assert!(d3(p) >= 0.0);
        prop_assert!(close(d3(p), d3(p.inv()), 1e-12));
        prop_assert!(d3(p * q) <= d3(p) + d3(q) + 1e-12);
        prop_assert!(close(d3_between(p, q), d3_between(q, p), 1e-12));
    }

    #[test]
    fn dinf_triangle(p in prod_point(), q in prod_point(), r in prod_point()) {
        prop_assert!(dinf_between(p, r) <= dinf_between(p, q) + dinf_between(q, r) + 1e-12);
    }

    #[test]
    fn dyadic_dilation_is_exact(p in heis_point(), k in -6i32..6) {
        let t = 2f64.powi(k);
        prop_assert_eq!(d3(dilate(t, p).unwrap()), t * d3(p));
    }

    #[test]
    fn dilation_homogeneity(p in prod_point(), t in 0.01..50.0f64) {
        prop_assert!(close(dinf(dilate(t, p).unwrap()), t * dinf(p), 1e-12));
    }

    #[test]
    fn regime_formulas_meet_on_boundaries(x in -3.0..3.0f64, y in -3.0..3.0f64, up in any::<bool>()) {
        prop_assume!(x.abs().max(y.abs()) > 1e-3);
        let half = (x * y).abs() / 2.0;
        let m = x.abs().max(y.abs());
        let [a, b, _] = d3_formulas(HeisPoint::new(x, y, half));
        prop_assert!(close(a, b, 1e-12));
        let z = if up { m * m - half } else { -(m * m - half) };
        let [_, b, c2] = d3_formulas(HeisPoint::new(x, y, z));
        prop_assert!(close(b, c2, 1e-12));
    }

    #[test]
    fn geodesic_synthesis_is_sound(p in heis_point()) {
        prop_assume!(!p.is_identity());
        let plan = synthesize_geodesic(p).unwrap();
        let (end, len) = plan_defect(&plan);
        prop_assert!(end <= 1e-9 * (1.0 + d3(p)), "endpoint off by {}", end);
        prop_assert!(len <= 1e-9 * (1.0 + d3(p)));
        prop_assert_eq!(plan.kind, classify_geodesic(p).unwrap());
    }

    #[test]
    fn pansu_gauge_is_a_norm(u in prop::array::uniform3(-5.0..5.0f64), w in prop::array::uniform3(-5.0..5.0f64), t in -4.0..4.0f64) {
        let hex = GenSet::parse("hex", Group::ProdHeisZ, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 1 1 0\n1 1 0 0\n", true).unwrap();
        let n = pansu_norm(&hex).unwrap();
        let sum = [u[0] + w[0], u[1] + w[1], u[2] + w[2]];
        prop_assert!(n.gauge(&sum) <= n.gauge(&u) + n.gauge(&w) + 1e-12);
        let scaled = [t * u[0], t * u[1], t * u[2]];
        prop_assert!(close(n.gauge(&scaled), t.abs() * n.gauge(&u), 1e-12));
        for g in hex.elements() {
            prop_assert!(n.gauge(&asymptotics::norm::project(g)) <= 1.0 + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn split_distance_matches_full_search(v in -4i64..4, x in -4i64..4, y in -4i64..4, z in -12i64..12) {
        let s2 = Builtin::ProdS2.genset();
        let g = LatticeElement::prod(v, x, y, z);
        prop_assert_eq!(split_word_distance(&s2, &g, 40).unwrap(), word_distance(&s2, &g, 40).unwrap());
    }

    #[test]
    fn oracle_matches_search(x in -5i64..5, y in -5i64..5, z in -20i64..20, v in -3i64..3) {
        for b in [Builtin::HeisStd, Builtin::ProdS1] {
            let g = if b == Builtin::HeisStd { LatticeElement::heis(x, y, z) } else { LatticeElement::prod(v, x, y, z) };
            let o = BuiltinOracle::new(b, 40).unwrap();
            prop_assert_eq!(o.distance(&g).unwrap(), word_distance(&b.genset(), &g, 40).unwrap(), "{} {}", b, g);
        }
    }

    #[test]
    fn word_metric_dominates_limit_metric(x in -30i64..30, y in -30i64..30, z in -200i64..200) {
        // ρ ≥ d3 for HEIS_STD: every word is a horizontal path of the same length
        let o = BuiltinOracle::new(Builtin::HeisStd, 120).unwrap();
        let g = LatticeElement::heis(x, y, z);
        prop_assert!(o.distance(&g).unwrap() as f64 >= d3(g.heis_exp()) - 1e-9);
    }
}

#[test]
fn census_respects_automorphisms() {
    // (x,y,z) ↦ (y,x,−z+xy) and (x,y,z) ↦ (−x,y,−z) permute HEIS_STD
    let c = enumerate_ball(&Builtin::HeisStd.genset(), 10, true).unwrap();
    for layer in c.layers.as_ref().unwrap() {
        let set: std::collections::BTreeSet<_> = layer.iter().copied().collect();
        for g in layer {
            let swap = LatticeElement::heis(g.y, g.x, -g.z + g.x * g.y);
            let flip = LatticeElement::heis(-g.x, g.y, -g.z);
            assert!(set.contains(&swap) && set.contains(&flip), "{g}");
        }
    }
}

#[test]
fn heis_growth_ratio_and_sphere_bound() {
    let c = enumerate_ball(&Builtin::HeisStd.genset(), 40, false).unwrap();
    let ratio = c.ball(40) as f64 / c.ball(20) as f64;
    assert!((12.0..=20.0).contains(&ratio), "{ratio}");
    assert!(c.sphere_bound_violations().is_empty());
}
