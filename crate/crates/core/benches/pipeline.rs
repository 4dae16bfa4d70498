use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use repcorr::chartable::{character_table_with, table_for_spec};
use repcorr::cpgraph::Convention;
use repcorr::graphlab::cross_path_batch;
use repcorr::group::{conjugacy, Group};
use repcorr::par::Mode;
use repcorr::rep::RepSpec;

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    group.sample_size(10);
    for spec in ["symmetric:5", "dihedral:30", "product:[4,4,4]"] {
        let g = Arc::new(Group::from_spec(spec).unwrap());
        let cd = conjugacy(&g);
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, spec), &mode, |b, &mode| {
                b.iter(|| character_table_with(Arc::clone(&g), cd.clone(), 0, black_box(mode)).unwrap())
            });
        }
    }
    group.finish();
}

fn k_theory_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("cross_path_sweep");
    group.sample_size(10);
    let t = Arc::new(table_for_spec("symmetric:4", 0).unwrap());
    let reps: Vec<RepSpec> = (0..243u64)
        .map(|x| {
            let m = (0..5).map(|k| x / 3u64.pow(k) % 3).collect();
            RepSpec::from_mults(Arc::clone(&t), m).unwrap()
        })
        .collect();
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new(name, "symmetric:4 x 243"), |b| {
            b.iter(|| cross_path_batch(black_box(&reps), Convention::ModuleCount, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, character_tables, k_theory_sweep);
criterion_main!(benches);
