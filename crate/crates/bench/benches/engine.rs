use criterion::{black_box, criterion_group, criterion_main, Criterion};
use drumzeta::sumrule::{default_series_policy, zeta_box3_separable, zeta_general, Profile};
use drumzeta::{BCPair, Density2, QuadPolicy, Rect, TruncationPolicy};
use drumzeta_bench::annulus_engine;
use std::sync::Arc;

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("engine");
    for p in [2usize, 3, 4] {
        g.bench_function(format!("annulus_dp_p{p}"), |b| {
            b.iter(|| annulus_engine(p, BCPair::DP, black_box(0.5)).unwrap())
        });
    }
    let unit = Rect::new(1.0, 1.0).unwrap();
    g.bench_function("square_dd_p3", |b| {
        b.iter(|| {
            zeta_general(
                3,
                BCPair::DD,
                unit,
                &Density2::Constant(1.0),
                &default_series_policy(),
                &QuadPolicy::default(),
            )
            .unwrap()
        })
    });
    let one: Profile = Arc::new(|_| 1.0);
    let tp = TruncationPolicy { rel_tol: 1e-8, ..default_series_policy() };
    g.sample_size(10);
    g.bench_function("cube_p2", |b| {
        b.iter(|| zeta_box3_separable(2, [1.0; 3], &one, &tp, &QuadPolicy::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
