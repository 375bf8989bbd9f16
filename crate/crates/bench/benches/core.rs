use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pansu_core::*;

fn limit_metrics(c: &mut Criterion) {
    let pts: Vec<HeisPoint> = (0..1024)
        .map(|i| {
            let t = i as f64 * 0.618;
            HeisPoint::new(t.sin(), (1.7 * t).cos(), 0.3 * (2.3 * t).sin())
        })
        .collect();
    c.bench_function("d3/1024", |b| b.iter(|| pts.iter().map(|&p| d3(black_box(p))).sum::<f64>()));
    c.bench_function("synthesize_geodesic/1024", |b| {
        b.iter(|| pts.iter().filter_map(|&p| synthesize_geodesic(black_box(p)).ok()).count())
    });
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_ball");
    g.sample_size(10);
    for (builtin, radius) in [(Builtin::HeisStd, 20), (Builtin::HeisStd, 30), (Builtin::ProdS1, 12)] {
        let s = builtin.genset();
        for parallel in [false, true] {
            let opts = EnumerateOptions { parallel, ..Default::default() };
            let id = format!("{builtin}/{}", if parallel { "par" } else { "seq" });
            g.bench_with_input(BenchmarkId::new(id, radius), &radius, |b, &r| {
                b.iter(|| enumerate_ball_with(&s, r, opts).unwrap().ball(r))
            });
        }
    }
    g.finish();
}

fn distances(c: &mut Criterion) {
    let heis = Builtin::HeisStd.genset();
    let s2 = Builtin::ProdS2.genset();
    let mut g = c.benchmark_group("distance");
    g.sample_size(20);
    let target = LatticeElement::heis(3, -2, 11);
    g.bench_function("word_distance/heis", |b| b.iter(|| word_distance(&heis, black_box(&target), 64).unwrap()));
    let gamma = LatticeElement::prod(16, 0, 0, 16);
    g.bench_function("split_word_distance/s2/gamma16", |b| {
        b.iter(|| split_word_distance(&s2, black_box(&gamma), 64).unwrap())
    });
    g.bench_function("area_table/128", |b| b.iter(|| AreaTable::new(black_box(128)).unwrap()));
    let oracle = BuiltinOracle::new(Builtin::HeisStd, 128).unwrap();
    g.bench_function("oracle/heis", |b| b.iter(|| oracle.distance(black_box(&target)).unwrap()));
    g.finish();
}

fn experiments(c: &mut Criterion) {
    let mut g = c.benchmark_group("experiments");
    g.sample_size(10);
    let heis = Builtin::HeisStd.genset();
    g.bench_function("gh_distortion/heis/n16/500", |b| b.iter(|| gh_distortion(&heis, 16, 500, 1).unwrap().distortion));
    g.bench_function("abnormal_vertical_scan/0.05/10k", |b| {
        b.iter(|| abnormal_vertical_scan(0.05, 10_000, 1).unwrap().sup_defect)
    });
    g.finish();
}

criterion_group!(benches, limit_metrics, census, distances, experiments);
criterion_main!(benches);
