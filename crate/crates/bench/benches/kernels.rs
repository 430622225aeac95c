use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tetrablock_core::interpolate::{solve_schwarz, verify_interpolant};
use tetrablock_core::linalg::CMat2;
use tetrablock_core::musyn::{bft_lower_bound, mu_diag, mu_scaling_oracle};
use tetrablock_core::sampling::{box_matrix, box_point, seeded};
use tetrablock_core::tetrablock::{membership, membership_grid_oracle, GridSpec};
use tetrablock_core::{Complex64 as C, CPoint3};

fn membership_kernels(c: &mut Criterion) {
    let mut rng = seeded(1);
    let pts: Vec<CPoint3> = (0..256).map(|_| box_point(&mut rng, 1.2)).collect();
    c.bench_function("membership/256", |b| {
        b.iter(|| pts.iter().filter(|x| membership(black_box(x), false, 1e-9).in_set).count())
    });
    c.bench_function("grid_oracle", |b| {
        b.iter(|| membership_grid_oracle(black_box(&pts[0]), false, GridSpec::default()))
    });
}

fn mu_kernels(c: &mut Criterion) {
    let mut rng = seeded(2);
    let mats: Vec<CMat2> = (0..64).map(|_| box_matrix(&mut rng, 1.0)).collect();
    c.bench_function("mu_diag/64", |b| b.iter(|| mats.iter().map(|a| mu_diag(black_box(a), 1e-13)).sum::<f64>()));
    c.bench_function("mu_scaling_oracle", |b| b.iter(|| mu_scaling_oracle(black_box(&mats[0]), 1e-12)));
}

fn interpolation_kernels(c: &mut Criterion) {
    let x = CPoint3::real(0.5, 0.25, 0.5);
    let l0 = C::new(-0.8, 0.0);
    c.bench_function("solve_schwarz/extremal", |b| b.iter(|| solve_schwarz(black_box(l0), black_box(&x))));
    let y = CPoint3::new(C::new(0.2, -0.1), C::new(0.1, 0.3), C::new(-0.05, 0.1));
    let l1 = C::new(0.6, 0.6);
    c.bench_function("solve_schwarz/strict", |b| b.iter(|| solve_schwarz(black_box(l1), black_box(&y))));
    let phi = solve_schwarz(l1, &y).unwrap();
    c.bench_function("verify_interpolant/500", |b| b.iter(|| verify_interpolant(black_box(&phi), 500, 0, 1e-9)));
}

fn bft_kernels(c: &mut Criterion) {
    let z = C::new(0.0, 0.0);
    let one = CMat2::real(0.0, 1.0, 0.0, 0.0);
    let a2 = CMat2::real(0.5, 0.5, -0.5, 0.5);
    let mut g = c.benchmark_group("bft");
    g.sample_size(10);
    g.bench_function("two_points", |b| {
        b.iter(|| bft_lower_bound(&[z, C::new(0.7, 0.0)], black_box(&[one, a2]), 2000))
    });
    g.finish();
}

criterion_group!(benches, membership_kernels, mu_kernels, interpolation_kernels, bft_kernels);
criterion_main!(benches);
