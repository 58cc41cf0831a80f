use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hermite_deform::{
    alpha_matrix, biorthogonality_check, deformed_hermite, rep_matrix, AlphaPoint, Coeff, FloatCoeff, HermiteTable,
    Scalar, WeylOp,
};

fn table(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermite_table");
    for level in [4u32, 8, 12] {
        group.bench_with_input(BenchmarkId::new("exact", level), &level, |b, &l| {
            b.iter(|| HermiteTable::<Coeff>::build(black_box(l)))
        });
        group.bench_with_input(BenchmarkId::new("float", level), &level, |b, &l| {
            b.iter(|| HermiteTable::<FloatCoeff>::build(black_box(l)))
        });
    }
    group.finish();
}

fn deform<S: Scalar>(c: &mut Criterion, alpha: &str) {
    let g = alpha_matrix(&AlphaPoint::<S>::parse(alpha).unwrap()).unwrap();
    let mut group = c.benchmark_group(format!("deform_{}", S::BACKEND));
    group.bench_function("deformed_hermite_5_5", |b| b.iter(|| deformed_hermite(&g, black_box(5), 5)));
    group.bench_function("rep_matrix_L8", |b| b.iter(|| rep_matrix(&g, black_box(8))));
    group.sample_size(10);
    group.bench_function("biorth_L4", |b| {
        b.iter(|| biorthogonality_check(&g, black_box(4), 1e-10).unwrap())
    });
    group.finish();
}

fn deform_both(c: &mut Criterion) {
    deform::<Coeff>(c, "3/5");
    deform::<FloatCoeff>(c, "0.6");
}

fn weyl_mul(c: &mut Criterion) {
    let p = AlphaPoint::<Coeff>::parse("5/13").unwrap();
    let x = &p.creator(1) * &p.annihilator(2);
    let y = &p.creator(2) * &p.annihilator(1);
    let pow = |w: &WeylOp<Coeff>, k: u32| (1..k).fold(w.clone(), |acc, _| &acc * w);
    let (x3, y3) = (pow(&x, 3), pow(&y, 3));
    c.bench_function("weyl_mul_bilinear", |b| b.iter(|| black_box(&x) * black_box(&y)));
    c.bench_function("weyl_mul_cubed", |b| b.iter(|| black_box(&x3) * black_box(&y3)));
    c.bench_function("weyl_commutator", |b| b.iter(|| black_box(&x3).commutator(black_box(&y3))));
}

criterion_group!(benches, table, deform_both, weyl_mul);
criterion_main!(benches);
