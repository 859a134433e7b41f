use criterion::{criterion_group, criterion_main, Criterion};
use drumzeta::oracle::{annulus_spectrum, lattice_zeta_2d, sector_spectrum, zeta_bruteforce, TailModel};
use drumzeta::{BCPair, CrossKind, Rect, SectorGeom};
use std::f64::consts::PI;

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("annulus_dd_e1e4", |b| b.iter(|| annulus_spectrum(CrossKind::DD, 0.5, 1e4, 101).unwrap()));
    g.bench_function("sector_half_e1e4", |b| {
        b.iter(|| sector_spectrum(SectorGeom::new(PI / 2.0).unwrap(), 1e4, 101).unwrap())
    });
    let spec = sector_spectrum(SectorGeom::new(PI / 2.0).unwrap(), 1e4, 101).unwrap();
    g.bench_function("bruteforce_sum", |b| b.iter(|| zeta_bruteforce(&spec, 2, TailModel::WeylIntegral).unwrap()));
    let r = Rect::new(1.0, 1.7).unwrap();
    g.bench_function("lattice_nd", |b| b.iter(|| lattice_zeta_2d(BCPair::NDP, r, 2.0).unwrap()));
    g.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
