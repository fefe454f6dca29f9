use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pathtower::{chi3, delta, verify3, Certificate, Derivation, Rewriter};
use pathtower_bench::bench_corpus;

fn bench_normalize(c: &mut Criterion) {
    let rw = Rewriter::new().with_refl_congruence();
    let mut group = c.benchmark_group("normalize");
    for depth in [4usize, 6, 8] {
        let corpus = bench_corpus(11, depth, 64);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &corpus, |b, corpus| {
            b.iter(|| {
                for p in corpus {
                    black_box(rw.normalize(p).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_rweq(c: &mut Criterion) {
    let rw = Rewriter::new().with_refl_congruence();
    let corpus = bench_corpus(12, 6, 32);
    c.bench_function("rweq_pairwise_32", |b| {
        b.iter(|| {
            for p in &corpus {
                for q in &corpus {
                    black_box(rw.rweq(p, q).unwrap());
                }
            }
        })
    });
}

fn bench_contractibility(c: &mut Criterion) {
    let rw = Rewriter::new().with_refl_congruence();
    let corpus = bench_corpus(13, 6, 16);
    let pairs: Vec<(Derivation, Derivation)> = corpus
        .iter()
        .map(|p| {
            let d = delta(&rw, p).unwrap();
            let d2 = Derivation::inv(Derivation::inv(d.clone()));
            (d, d2)
        })
        .collect();
    c.bench_function("chi3_build_and_verify_16", |b| {
        b.iter(|| {
            for (d1, d2) in &pairs {
                let cell = chi3(d1, d2).unwrap();
                verify3(&rw, &cell).unwrap();
            }
        })
    });
}

fn bench_certificate_round_trip(c: &mut Criterion) {
    let rw = Rewriter::new().with_refl_congruence();
    let corpus = bench_corpus(14, 6, 32);
    let certs: Vec<String> = corpus
        .iter()
        .map(|p| Certificate::for_derivation(delta(&rw, p).unwrap()).to_json_string())
        .collect();
    c.bench_function("certificate_parse_verify_32", |b| {
        b.iter(|| {
            for text in &certs {
                let cert = Certificate::from_json_str(text).unwrap();
                cert.verify(&rw).unwrap();
            }
        })
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_rweq,
    bench_contractibility,
    bench_certificate_round_trip
);
criterion_main!(benches);
