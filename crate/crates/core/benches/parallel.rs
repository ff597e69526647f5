use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypertwist::algebra::SampleOptions;
use hypertwist::example;
use hypertwist::families::sample::random_inputs;
use hypertwist::families::{construct, FamilyKind, TwistFamily};
use hypertwist::par::{self, Exec};
use hypertwist::verify::verify_family;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn families() -> Vec<TwistFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    FamilyKind::ALL
        .iter()
        .flat_map(|&k| (0..4).map(move |_| k))
        .map(|k| construct(&random_inputs(k, &mut rng)).unwrap())
        .collect()
}

fn verify_example(c: &mut Criterion) {
    let fam = example::build().unwrap();
    let mut g = c.benchmark_group("verify_example");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = SampleOptions {
            exec,
            ..SampleOptions::new(20, 0)
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| black_box(verify_family(&fam, o)))
        });
    }
    g.finish();
}

fn verify_batch(c: &mut Criterion) {
    let fams = families();
    let mut g = c.benchmark_group("verify_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        // the outer fan-out and the inner checks use the same mode
        let opts = SampleOptions {
            exec,
            ..SampleOptions::new(5, 0)
        };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, o| {
            b.iter(|| black_box(par::map(o.exec, &fams, |f| verify_family(f, o).overall)))
        });
    }
    g.finish();
}

criterion_group!(benches, verify_example, verify_batch);
criterion_main!(benches);
