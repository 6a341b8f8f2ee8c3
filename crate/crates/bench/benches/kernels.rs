use criterion::{black_box, criterion_group, criterion_main, Criterion};
use zetalab::criteria::{evaluate_point, CriteriaConfig};
use zetalab::dirac::{dirac_build, dirac_spectrum};
use zetalab::numkernel::zeta_critical;
use zetalab::prolate::prolate_family;
use zetalab::weilform::{assemble_sigma, WhichTerms};
use zetalab::{BigReal, Real};
use zetalab_bench::{f64_context, mp_context};

fn prolate(c: &mut Criterion) {
    let ctx = mp_context(60);
    let _g = ctx.install();
    let lambda = BigReal::parse("5.5").unwrap().sqrt();
    c.bench_function("prolate_family/12@60d", |b| {
        b.iter(|| prolate_family(12, black_box(&lambda), &ctx).unwrap())
    });
}

fn weil(c: &mut Criterion) {
    let ctx = mp_context(60);
    let _g = ctx.install();
    let mu = BigReal::from_i64(3);
    let mut group = c.benchmark_group("assemble_sigma");
    group.sample_size(10);
    group.bench_function("N=16@60d", |b| {
        b.iter(|| assemble_sigma(black_box(&mu), 16, &WhichTerms::full(), &ctx).unwrap())
    });
    group.finish();
}

fn dirac(c: &mut Criterion) {
    let ctx = f64_context();
    let _g = ctx.install();
    let lambda = 10.5f64.sqrt();
    c.bench_function("dirac_spectrum/f64,k=18,N=60", |b| {
        b.iter(|| {
            let d = dirac_build(black_box(&lambda), 18, 60, &ctx).unwrap();
            dirac_spectrum(&d, &ctx).unwrap()
        })
    });
    let cfg = CriteriaConfig::default();
    c.bench_function("criteria_point/f64,n=5", |b| {
        b.iter(|| evaluate_point(black_box(&9.5f64), 16, 5, &cfg, &ctx).unwrap())
    });
}

fn zeta(c: &mut Criterion) {
    let ctx = mp_context(40);
    let _g = ctx.install();
    let t = BigReal::parse("14.134725141734693790").unwrap();
    c.bench_function("zeta_critical@40d", |b| b.iter(|| zeta_critical(black_box(&t), &ctx)));
}

criterion_group!(benches, prolate, weil, dirac, zeta);
criterion_main!(benches);
