use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dkforms::clifford::CliffordContext;
use dkforms::exterior::{codifferential, d, l2_inner, laplace_beltrami};
use dkforms::monopole::{bessel_j, radial_residual, wigner_basis, Grid, RadialCase};
use dkforms::polyring::haar_integral;
use dkforms::verify::{run_suite, Suite};
use dkforms::{Constants, HalfInt};
use dkforms_bench::su2_form_pairs;

fn exterior(c: &mut Criterion) {
    let pairs = su2_form_pairs(8, 4);
    c.bench_function("su2 laplacian", |b| {
        b.iter(|| {
            for (a, _) in &pairs {
                black_box(laplace_beltrami(black_box(a)).unwrap());
            }
        })
    });
    c.bench_function("su2 adjointness pair", |b| {
        b.iter(|| {
            for (a, beta) in &pairs {
                let lhs = l2_inner(&d(a).unwrap(), beta).unwrap();
                let rhs = l2_inner(a, &codifferential(beta).unwrap()).unwrap();
                black_box((lhs, rhs));
            }
        })
    });
}

fn clifford(c: &mut Criterion) {
    let ctx = CliffordContext::euclidean();
    let tau = dkforms::DifferentialForm::volume(ctx.manifold());
    let gens: Vec<_> = (0..3).map(|a| ctx.generator(a)).collect();
    c.bench_function("kahler product of generators", |b| {
        b.iter(|| {
            for g in &gens {
                black_box(ctx.vee(g, &tau).unwrap());
            }
        })
    });
}

fn harmonics(c: &mut Criterion) {
    c.bench_function("wigner basis j=3/2", |b| {
        b.iter(|| wigner_basis(black_box(HalfInt::from_twice(3))).unwrap())
    });
    let basis = wigner_basis(HalfInt::from_twice(3)).unwrap();
    c.bench_function("haar norms j=3/2", |b| {
        b.iter(|| {
            for e in &basis {
                black_box(haar_integral(&e.poly.conjugate().try_mul(&e.poly).unwrap()).unwrap());
            }
        })
    });
}

fn spectrum(c: &mut Criterion) {
    c.bench_function("bessel j_sqrt2(7.5)", |b| {
        b.iter(|| bessel_j(black_box(2f64.sqrt()), black_box(7.5)).unwrap())
    });
    let case = RadialCase::new(HalfInt::ONE, HalfInt::HALF, 1.0, 1.0).unwrap();
    let grid = Grid::new(0.5, 10.0, 0.01).unwrap();
    c.bench_function("radial residual coarse grid", |b| {
        b.iter(|| radial_residual(&case, &grid).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let constants = Constants::default();
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for suite in Suite::INDIVIDUAL {
        group.bench_function(suite.name(), |b| {
            b.iter(|| run_suite(suite, &constants, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exterior, clifford, harmonics, spectrum, suites);
criterion_main!(benches);
