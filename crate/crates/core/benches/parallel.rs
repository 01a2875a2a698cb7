//! Hot-path benchmarks for the data-parallel inner loops.
//!
//! Benchmark names carry the compiled mode, so comparing the rayon path
//! against the sequential fallback is two runs:
//!
//! ```text
//! cargo bench -p decaycheck                          # .../parallel
//! cargo bench -p decaycheck --no-default-features    # .../serial
//! ```

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use decaycheck::funcspace::{catalog_slope_fn, UnivariateFn};
use decaycheck::hypothesis::{build_f, growth_bound_check, CheckConfig, GrowthMode};
use decaycheck::odesolve::peano_iterates;
use decaycheck::pde::{dissipativity_probe, Grid1D, Nonlinearity, PdeScenario, SpaceProfile};

fn mode() -> &'static str {
    if decaycheck::par::is_parallel() {
        "parallel"
    } else {
        "serial"
    }
}

fn bench_probe(c: &mut Criterion) {
    let scenario = PdeScenario {
        gamma: UnivariateFn::power_law(1.0, 0.5, 1.0).unwrap(),
        nonlinearity: Nonlinearity::Cubic,
        forcing: None,
        initial: SpaceProfile::Zero,
        forcing_decay_exponent: None,
    };
    let grid = Grid1D::unit_pi(199).unwrap();
    c.bench_function(&format!("dissipativity_probe_200_pairs/{}", mode()), |b| {
        b.iter(|| {
            let report = dissipativity_probe(
                black_box(&scenario),
                &grid,
                200,
                &[0.0, 1.0, 10.0],
                1e-10,
                42,
            )
            .unwrap();
            black_box(report.worst_margin)
        })
    });
}

fn bench_growth_check(c: &mut Criterion) {
    let f = decaycheck::funcspace::BivariateFn::separable(
        UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap(),
        UnivariateFn::identity(),
        UnivariateFn::constant(0.0).unwrap(),
    )
    .unwrap();
    let phi = UnivariateFn::power_law(1.0, 1.0, 1.0).unwrap();
    let config = CheckConfig::default();
    c.bench_function(&format!("growth_bound_check_16x16/{}", mode()), |b| {
        b.iter(|| {
            let check = growth_bound_check(
                black_box(&f),
                1.0,
                &phi,
                GrowthMode::IntegralTheta,
                &config,
            )
            .unwrap();
            black_box(check.fitted)
        })
    });
}

fn bench_majorant(c: &mut Criterion) {
    let f = catalog_slope_fn();
    let config = CheckConfig::default();
    let grid: Vec<f64> = (0..=400).map(|i| 200.0 * i as f64 / 400.0).collect();
    c.bench_function(&format!("build_majorant_400_cells/{}", mode()), |b| {
        b.iter(|| black_box(build_f(black_box(&f), 2.0, &grid, &config).unwrap()))
    });
}

fn bench_peano_batch(c: &mut Criterion) {
    let field = |_t: f64, u: &[f64], du: &mut [f64]| du[0] = -u[0];
    let forcing = |_t: f64, _f: &mut [f64]| {};
    c.bench_function(&format!("peano_batch_4_delays/{}", mode()), |b| {
        b.iter(|| {
            let iterates = peano_iterates(
                field,
                forcing,
                black_box(&[1.0]),
                &[8, 16, 32, 64],
                2.0,
                1.0 / 512.0,
            )
            .unwrap();
            black_box(iterates.len())
        })
    });
}

fn benches(c: &mut Criterion) {
    bench_probe(c);
    bench_growth_check(c);
    bench_majorant(c);
    bench_peano_batch(c);
}

criterion_group! {
    name = suite;
    config = Criterion::default().sample_size(20);
    targets = benches
}
criterion_main!(suite);
