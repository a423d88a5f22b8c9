use criterion::{criterion_group, criterion_main, Criterion};
use hilbsegre_core::tautsegre::{identity_suite, TautBundle, TautSegreEngine};

fn bench_identity_suite(c: &mut Criterion) {
    c.bench_function("identity_suite", |b| {
        b.iter(|| {
            let report = identity_suite().unwrap();
            assert!(report.all_pass());
        })
    });
}

fn bench_symbolic_recursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic_top_integral");
    for k in [2u32, 3] {
        group.bench_function(format!("k{k}"), |b| {
            b.iter(|| {
                let mut eng = TautSegreEngine::new(TautBundle::abstract_symbolic());
                eng.top_integral(k).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_numeric_recursion_k4(c: &mut Criterion) {
    c.bench_function("numeric_total_segre_k4", |b| {
        b.iter(|| {
            let mut eng = TautSegreEngine::new(TautBundle::numeric(3, 37, 59));
            eng.total_segre(4).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_identity_suite,
    bench_symbolic_recursion,
    bench_numeric_recursion_k4
);
criterion_main!(benches);
