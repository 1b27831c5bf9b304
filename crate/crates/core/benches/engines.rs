use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vbranch_core::branching::{branch_multiplicities, VermaSpec};
use vbranch_core::pairs::build_pair;
use vbranch_core::parabolic::{closed_orbit_census, ParabolicChoice};
use vbranch_core::Exec;

fn strategies() -> [(&'static str, Exec); 2] {
    [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)]
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (id, choice) in [("sp_down_gl:n=3", ParabolicChoice::Borel), ("sl_s_glgl:p=2,q=3", ParabolicChoice::Heisenberg)] {
        let pair = build_pair(id.parse().unwrap()).unwrap();
        let subset = choice.subset(&pair.g).unwrap().unwrap();
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, id), &subset, |b, s| {
                b.iter(|| closed_orbit_census(black_box(&pair), s, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn branching(c: &mut Criterion) {
    let mut group = c.benchmark_group("branch");
    group.sample_size(10);
    for (id, choice, n) in [("so_down_so:m=6", ParabolicChoice::Borel, 5), ("sl_s_glgl:p=2,q=2", ParabolicChoice::Heisenberg, 5)] {
        let pair = build_pair(id.parse().unwrap()).unwrap();
        let spec = VermaSpec::generic(choice.build(&pair.g).unwrap());
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, id), &n, |b, &n| {
                b.iter(|| branch_multiplicities(black_box(&spec), &pair, n, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, census, branching);
criterion_main!(benches);
