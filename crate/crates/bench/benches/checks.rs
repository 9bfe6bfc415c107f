use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wallspan_core::clifford::{build_family, verify_family};
use wallspan_core::f2cohomology::{sw_upper_bound, virtual_sw_rules_out};
use wallspan_core::fields::{check_point, sample_point, sample_rng, Tolerances, WallFields};
use wallspan_core::WallParams;

fn clifford(c: &mut Criterion) {
    let mut group = c.benchmark_group("clifford");
    for n in [1u64, 7, 15, 31] {
        group.bench_with_input(BenchmarkId::new("build_and_verify", n), &n, |b, &n| {
            b.iter(|| verify_family(&build_family(black_box(n)).unwrap()).all_passed())
        });
    }
    group.finish();
}

fn obstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("obstruction");
    for (m, n) in [(2u64, 2u64), (4, 4), (4, 8)] {
        let p = WallParams::new(m, n).unwrap();
        group.bench_with_input(BenchmarkId::new("rules_out_m_plus_2", format!("{m}x{n}")), &p, |b, &p| {
            b.iter(|| virtual_sw_rules_out(black_box(p), m + 2).unwrap().ruled_out)
        });
        group.bench_with_input(BenchmarkId::new("upper_bound", format!("{m}x{n}")), &p, |b, &p| {
            b.iter(|| sw_upper_bound(black_box(p)))
        });
    }
    group.finish();
}

fn fields(c: &mut Criterion) {
    let mut group = c.benchmark_group("fields");
    let tol = Tolerances::default();
    for (m, n) in [(1u64, 1u64), (4, 7), (4, 15)] {
        let p = WallParams::new(m, n).unwrap();
        let fields = WallFields::new(p).unwrap();
        let point = sample_point(n as usize, m as usize, &mut sample_rng(1, 0));
        group.bench_with_input(BenchmarkId::new("check_point", format!("{m}x{n}")), &point, |b, pt| {
            b.iter(|| check_point(black_box(pt), &fields, &tol).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, clifford, obstruction, fields);
criterion_main!(benches);
