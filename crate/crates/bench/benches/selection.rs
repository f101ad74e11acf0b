use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use ust_bench::uncertain_walks;
use ust_core::shapelet::assess_candidate;
use ust_core::{select_shapelets, transform_fit, Measure, OrderingStrategy, SelectionConfig};

fn assessment(c: &mut Criterion) {
    let data = uncertain_walks(60, 64, 0.4, 3);
    let cfg = SelectionConfig::new(5, Measure::Ued, OrderingStrategy::interval());
    let candidate = data.series()[0].window(5, 20);
    c.bench_function("assess_candidate/60x64/len20", |b| b.iter(|| assess_candidate(candidate, &data, &cfg).unwrap()));
}

fn search(c: &mut Criterion) {
    let data = uncertain_walks(20, 24, 0.4, 4);
    let mut group = c.benchmark_group("select_shapelets");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, ord) in [("simple", OrderingStrategy::simple()), ("interval", OrderingStrategy::interval())] {
        let cfg = SelectionConfig::new(5, Measure::Ued, ord).with_workers(1);
        group.bench_function(name, |b| b.iter(|| select_shapelets(&data, &cfg).unwrap()));
    }
    group.finish();

    let cfg = SelectionConfig::new(5, Measure::Ued, OrderingStrategy::interval());
    let shapelets = select_shapelets(&data, &cfg).unwrap().shapelets;
    c.bench_function("transform_fit/20x24/k5", |b| {
        b.iter(|| transform_fit(&data, &shapelets, Measure::Ued, &OrderingStrategy::interval()).unwrap())
    });
}

criterion_group!(benches, assessment, search);
criterion_main!(benches);
