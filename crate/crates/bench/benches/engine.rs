use cqg_core::corep::IrrepRegistry;
use cqg_core::haar::compute_haar;
use cqg_core::presets::{c_of_group, cayley, su_q_2};
use cqg_core::regrep::{check_pentagon, regular_unitary};
use cqg_core::dsl::parse_poly;
use criterion::{criterion_group, criterion_main, Criterion};

fn engine(c: &mut Criterion) {
    let alg = su_q_2();
    let mut g = c.benchmark_group("su_q_2");
    g.sample_size(10);
    g.bench_function("verify_hopf_3", |b| b.iter(|| alg.verify_hopf(3)));
    g.bench_function("haar_4", |b| b.iter(|| compute_haar(&alg, 4).unwrap()));
    g.bench_function("fusion_depth_2", |b| {
        b.iter(|| {
            let mut reg = IrrepRegistry::new(&alg).unwrap();
            reg.fusion_table(&alg, 2).unwrap()
        })
    });
    let p = alg.presentation();
    let x = parse_poly(p, "g* a* g a a* g* a g").unwrap();
    g.bench_function("normal_form_degree_8", |b| b.iter(|| p.normal_form(&x).unwrap()));
    g.finish();

    let fa = c_of_group(&cayley("s3").unwrap()).unwrap();
    let mut g = c.benchmark_group("c_s3");
    g.sample_size(10);
    g.bench_function("regular_unitary_and_pentagon", |b| {
        b.iter(|| check_pentagon(&regular_unitary(&fa, false).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
