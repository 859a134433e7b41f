use criterion::{black_box, criterion_group, criterion_main, Criterion};
use drumzeta::closedforms::{
    annulus_z2_dp_polylog, annulus_z2_dp_series, inhom_annulus_z2, sector_zeta, DEFAULT_TERMS,
};
use drumzeta::specialfn::{bessel_j_zeros_below, cross_bessel_zeros_below, digamma, BesselOrder};
use drumzeta::{AnnulusGeom, CrossKind, RadialPower, SectorGeom};

fn closed_forms(c: &mut Criterion) {
    let g = AnnulusGeom::new(0.3).unwrap();
    c.bench_function("annulus_series", |b| b.iter(|| annulus_z2_dp_series(black_box(g), DEFAULT_TERMS)));
    c.bench_function("annulus_polylog", |b| b.iter(|| annulus_z2_dp_polylog(black_box(g), DEFAULT_TERMS)));
    let pw = RadialPower::new(0.7).unwrap();
    c.bench_function("inhom_z2", |b| b.iter(|| inhom_annulus_z2(black_box(g), pw, DEFAULT_TERMS)));
    let s = SectorGeom::new(1.0).unwrap();
    c.bench_function("sector_p4", |b| b.iter(|| sector_zeta(black_box(s), 4).unwrap()));
}

fn special(c: &mut Criterion) {
    c.bench_function("digamma", |b| b.iter(|| digamma(black_box(1.37))));
    let nu = BesselOrder::new(3.5).unwrap();
    c.bench_function("j_zeros_below_200", |b| b.iter(|| bessel_j_zeros_below(nu, black_box(200.0)).unwrap()));
    c.bench_function("cross_zeros_below_200", |b| {
        b.iter(|| cross_bessel_zeros_below(CrossKind::DD, 7, black_box(0.4), 200.0).unwrap())
    });
}

criterion_group!(benches, closed_forms, special);
criterion_main!(benches);
