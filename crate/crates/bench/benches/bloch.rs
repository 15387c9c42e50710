use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use swcnt_core::bloch::LatticePotential;
use swcnt_core::transforms::Sublattice;
use swcnt_core::{
    bloch_sum, make_transform, modified_operator_apply, sample_kappa, verify_bloch_property, Branch, ChiralSpec,
    KPoint, ModelOrbital, SurfaceGrid, TubeGeometry,
};

fn bench_bloch(c: &mut Criterion) {
    let g = TubeGeometry::with_half_count(&ChiralSpec::new(5, 5).unwrap(), 4).unwrap();
    let grid = SurfaceGrid::finite_tube(&g, 64, 64).unwrap();
    let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
    let kappa = sample_kappa(&g, 4).unwrap()[5];
    c.bench_function("bloch_sum (5,5) L=4 64x64", |b| b.iter(|| bloch_sum(black_box(&g), &grid, &orb, kappa).unwrap()));
    let phi = bloch_sum(&g, &grid, &orb, kappa).unwrap();
    let t = make_transform(&g, Branch::Plus, 1);
    c.bench_function("spectral shift 64x64", |b| b.iter(|| black_box(&phi).shifted(t)));
    c.bench_function("verify_bloch_property 64x64", |b| {
        b.iter(|| verify_bloch_property(black_box(&phi), &g, kappa, Branch::Plus, 1))
    });
    let cfg = LatticePotential::new(&g, 0.5).config();
    let k = KPoint::new(0.1, kappa);
    c.bench_function("modified_operator_apply 64x64", |b| b.iter(|| modified_operator_apply(black_box(&phi), k, &cfg)));
}

criterion_group!(benches, bench_bloch);
criterion_main!(benches);
