use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use appell4::catalog::{audit_catalog, builtin_catalog, AuditFilter, ParamSampler, VerifyOptions};
use appell4::exec::Execution;
use appell4::series::{coefficient_grid, F41Params, SeriesSpec};
use appell4::ComplexScalar;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Execution::Parallel));
    }
    v
}

fn audit(c: &mut Criterion) {
    let catalog = builtin_catalog();
    let sampler = ParamSampler::new(42, 4);
    let opts = VerifyOptions::default();
    let filter = AuditFilter::default();
    let mut g = c.benchmark_group("audit");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| audit_catalog(&catalog, &sampler, &opts, &filter, exec))
        });
    }
    g.finish();
}

fn grid_sweep(c: &mut Criterion) {
    let z = |re: f64, im: f64| ComplexScalar::new(re, im);
    let specs: Vec<SeriesSpec> = (0..64)
        .map(|i| {
            let s = i as f64 / 64.0;
            SeriesSpec::F41(F41Params {
                a: z(0.5 + s, 0.3),
                b: z(1.1, -s),
                c1: z(1.7, 0.2),
                c2: z(0.6 + s, 0.1),
                t1: z(2.5 * s, 0.4),
                t2: z(1.3, -0.2),
                k1: 1 + (i % 3) as u32,
                k2: 1 + (i % 2) as u32,
                x: z(0.1, 0.05),
                y: z(-0.05, 0.1),
            })
        })
        .collect();
    let mut g = c.benchmark_group("grid_sweep");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(&specs, |s| coefficient_grid(s, 40, 40).map(|g| g.get(40, 40))))
        });
    }
    g.finish();
}

criterion_group!(benches, audit, grid_sweep);
criterion_main!(benches);
