use bridge_forge::farey::orbit_contains;
use bridge_forge::freeness::{check_claim2, SignPattern};
use bridge_forge::presentation::relator;
use bridge_forge::sl2_oracle::riley_polynomials;
use bridge_forge::smallcancel::{knot_symmetrized_set, min_pieces};
use bridge_forge::{Fraction, GenusOneKnot, ReducedWord, Sign};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn knot(m: u32, n: u32) -> GenusOneKnot {
    GenusOneKnot::new(m, n, Sign::Minus).unwrap()
}

fn bench_relator(c: &mut Criterion) {
    let mut g = c.benchmark_group("relator");
    for (m, n) in [(2, 2), (5, 5), (10, 10)] {
        let f = Fraction::new(2 * n as i64, (4 * m * n - 1) as i64).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &f, |b, f| {
            b.iter(|| relator(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn bench_pieces(c: &mut Criterion) {
    let mut g = c.benchmark_group("pieces");
    for (m, n) in [(2, 2), (4, 4)] {
        let k = knot(m, n);
        let set = knot_symmetrized_set(&k).unwrap();
        g.bench_function(BenchmarkId::new("piece_table", format!("{m}x{n}")), |b| {
            b.iter(|| black_box(&set).piece_table())
        });
        let r = &set.elements()[0];
        let v: ReducedWord = r.to_string()[..r.len() / 2].parse().unwrap();
        g.bench_function(BenchmarkId::new("min_pieces_dp", format!("{m}x{n}")), |b| {
            b.iter(|| min_pieces(black_box(&v), &set).unwrap())
        });
    }
    g.finish();
}

fn bench_claim2(c: &mut Criterion) {
    let k = knot(3, 3);
    let patterns = SignPattern::all(2);
    c.bench_function("claim2/3x3_t2", |b| {
        b.iter(|| {
            for s in &patterns {
                black_box(check_claim2(&k, s).unwrap());
            }
        })
    });
}

fn bench_riley(c: &mut Criterion) {
    let mut g = c.benchmark_group("riley");
    g.sample_size(20);
    for (q, p) in [(4, 15), (6, 35), (8, 63)] {
        let f = Fraction::new(q, p).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{q}/{p}")), &f, |b, f| {
            b.iter(|| riley_polynomials(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn bench_orbit(c: &mut Criterion) {
    let r = Fraction::new(4, 15).unwrap();
    let unreachable = Fraction::new(1, 7).unwrap();
    c.bench_function("orbit/4_15_depth3", |b| {
        b.iter(|| orbit_contains(&r, black_box(&unreachable), 3, 3).unwrap())
    });
}

criterion_group!(benches, bench_relator, bench_pieces, bench_claim2, bench_riley, bench_orbit);
criterion_main!(benches);
