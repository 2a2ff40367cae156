use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use intmat_bench::{m2_member, poly, ratpoly, sweep_numerator};
use intmat_core::{member_mn, member_mnp_bruteforce, member_mnp_divdiff, MatZ, Options, RatPoly, SplitAlgebra};
use num_bigint::BigInt;

fn sweeps(c: &mut Criterion) {
    let p = poly(&[1, 1, 1]);
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for d in [6, 36] {
        let f = RatPoly::canonicalize(sweep_numerator(), BigInt::from(d)).unwrap();
        for jobs in [1, 4] {
            let opts = Options {
                jobs,
                ..Options::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("m2_mod_{d}"), jobs), &opts, |b, opts| {
                b.iter(|| member_mnp_bruteforce(black_box(&f), &p, opts).unwrap())
            });
        }
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let m = MatZ::from_rows(&[
        vec![3, -1, 4, 1],
        vec![5, 9, -2, 6],
        vec![5, 3, 5, -8],
        vec![9, 7, 9, 3],
    ])
    .unwrap();
    c.bench_function("char_poly_4x4", |b| b.iter(|| black_box(&m).char_poly()));

    let quartic = poly(&[7, -3, 0, 2, 1]);
    c.bench_function("split_algebra_deg4", |b| {
        b.iter(|| SplitAlgebra::new(black_box(&quartic)).unwrap())
    });

    let f = ratpoly(&[0, -1, 0, 0, 0, 0, 1], 6);
    let cubic = poly(&[1, -1, 0, 1]);
    c.bench_function("divdiff_deg3", |b| {
        b.iter(|| member_mnp_divdiff(black_box(&f), &cubic, &Options::default()).unwrap())
    });

    let member = m2_member();
    c.bench_function("member_m2", |b| {
        b.iter(|| member_mn(black_box(&member), 2, &Options::default()).unwrap())
    });
}

criterion_group!(benches, sweeps, kernels);
criterion_main!(benches);
