// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hartogs_bench::{instances, DISC_POINT};
use hartogs_core::algebra::rat;
use hartogs_core::cartan::make_params;
use hartogs_core::classify::{classify, dual_positivity_bound, ke_identity};
use hartogs_core::genfun::{cross_validate, f_rational};
use hartogs_core::geometry::{
    metric_tensor, ricci_tensor, sectional_curvature_with, CurvatureConvention, FdConfig, PotentialField,
    PotentialKind, DEFAULT_STEP,
};

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    for (name, p, mu) in instances() {
        g.bench_function(format!("f_rational/{name}"), |b| b.iter(|| f_rational(black_box(&p), black_box(&mu))));
        let rep = f_rational(&p, &mu).expect("valid");
        let order = 20.max(rep.big_d + 2);
        g.bench_function(format!("cross_validate/{name}"), |b| b.iter(|| cross_validate(black_box(&rep), order)));
        g.bench_function(format!("ke_identity/{name}"), |b| b.iter(|| ke_identity(black_box(&p), black_box(&mu))));
        g.bench_function(format!("dual_bound/{name}"), |b| {
            b.iter(|| dual_positivity_bound(black_box(&p), black_box(&mu)))
        });
    }
    g.sample_size(10);
    for (name, p, mu) in instances() {
        g.bench_function(format!("classify/{name}"), |b| b.iter(|| classify(black_box(&p), black_box(&mu))));
    }
    g.finish();
}

fn geometry(c: &mut Criterion) {
    let p = make_params(1, 0, 0).expect("valid");
    let bergman = PotentialField::new(PotentialKind::BergmanLog, p.clone(), &rat(2, 1)).expect("field");
    let dual = PotentialField::new(PotentialKind::DualBergmanLog, p, &rat(2, 1)).expect("field");
    let mut g = c.benchmark_group("geometry");
    g.bench_function("metric", |b| b.iter(|| metric_tensor(&bergman, black_box(&DISC_POINT), DEFAULT_STEP)));
    g.bench_function("ricci", |b| b.iter(|| ricci_tensor(&bergman, black_box(&DISC_POINT), DEFAULT_STEP)));
    let ex = [1.0, 0.0, 0.0, 0.0];
    let ev = [0.0, 0.0, 0.0, 1.0];
    let cfg = FdConfig::curvature(DEFAULT_STEP);
    g.bench_function("curvature", |b| {
        b.iter(|| {
            sectional_curvature_with(
                &dual,
                black_box(&[0.0, 0.0, 0.0, 0.5]),
                (&ex, &ev),
                &cfg,
                CurvatureConvention::ClosedFormDual,
            )
        })
    });
    g.finish();
}

criterion_group!(benches, exact, geometry);
criterion_main!(benches);
