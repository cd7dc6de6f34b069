use std::hint::black_box;

use approxsym_core::equations::{gardner_basis, kdv_basis, Equation, GARDNER_LABELS};
use approxsym_core::jet::prolong;
use approxsym_core::lie::{mu, LieAlgebra};
use approxsym_core::solver::{approximate_symmetries, exact_symmetries};
use approxsym_core::Poly;
use criterion::{criterion_group, criterion_main, Criterion};

fn polynomials(c: &mut Criterion) {
    let a: Poly = "(x + t + w + w_x + 1)^4".parse().unwrap();
    let b: Poly = "(x - 2*t + 3*w_xx - eps)^4".parse().unwrap();
    c.bench_function("poly_mul_quartics", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

fn prolongation(c: &mut Criterion) {
    let scaling = kdv_basis()[3].with_order(1);
    c.bench_function("prolong_scaling_order_3", |bench| {
        bench.iter(|| prolong(black_box(&scaling), 3).unwrap())
    });
}

fn solving(c: &mut Criterion) {
    let kdv = Equation::kdv();
    let gardner = Equation::gardner();
    let mut group = c.benchmark_group("determining_systems");
    group.sample_size(20);
    group.bench_function("kdv_degree_3", |bench| {
        bench.iter(|| exact_symmetries(black_box(&kdv), 3).unwrap())
    });
    group.bench_function("gardner_degree_3", |bench| {
        bench.iter(|| approximate_symmetries(black_box(&gardner), 3).unwrap())
    });
    group.finish();
}

fn lie_tables(c: &mut Criterion) {
    let g = LieAlgebra::new(gardner_basis(), &GARDNER_LABELS).unwrap();
    c.bench_function("structure_constants", |bench| {
        bench.iter(|| LieAlgebra::new(gardner_basis(), &GARDNER_LABELS).unwrap())
    });
    c.bench_function("adjoint_maps", |bench| {
        let m = mu();
        bench.iter(|| {
            (0..g.dim())
                .map(|i| g.adjoint_map(i, &m).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

criterion_group!(benches, polynomials, prolongation, solving, lie_tables);
criterion_main!(benches);
