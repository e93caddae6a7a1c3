use std::hint::black_box;

use anarchy_core::sample::random_connected_graph_mixed;
use anarchy_core::{
    enumerate_equilibria, is_pairwise_stable, AdversaryKind, EquilibriumConcept, Execution, GameParams, Graph,
    Rational, SearchOptions,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn exhaustive_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_ps");
    group.sample_size(10);
    let alpha = Rational::from_integer(1.into());
    for n in [5usize, 6] {
        for (name, execution) in MODES {
            let opts = SearchOptions {
                execution,
                ..SearchOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| {
                    enumerate_equilibria(
                        n,
                        &alpha,
                        &AdversaryKind::SimpleMinded,
                        EquilibriumConcept::PairwiseStableBlf,
                        opts,
                    )
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn stability_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs: Vec<Graph> = (0..64).map(|_| random_connected_graph_mixed(&mut rng, 24)).collect();
    let params = GameParams::bilateral(24, Rational::from_integer(2.into()), AdversaryKind::Smart).unwrap();
    let mut group = c.benchmark_group("ps_batch_n24");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| execution.map_slice(black_box(&graphs), |g| is_pairwise_stable(g, &params).unwrap().holds))
        });
    }
    group.finish();
}

criterion_group!(benches, exhaustive_search, stability_batch);
criterion_main!(benches);
