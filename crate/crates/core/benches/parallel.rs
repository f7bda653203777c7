use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use adaptecc_core::codecs::{ConvCodec, ConvSpec};
use adaptecc_core::config::parse_config_str;
use adaptecc_core::gainlab::{simulate_ber_point, BerBudget, Chain};
use adaptecc_core::simkernel::{run_simulation, Scheme, SimContext};
use adaptecc_core::Exec;

const MODES: [(&str, Exec); 2] = [("serial", Exec::Serial), ("parallel", Exec::Parallel)];

fn ber_point(c: &mut Criterion) {
    let codec = ConvCodec::new(ConvSpec::default()).unwrap();
    let chains = [Chain::ConvHard(codec.clone()), Chain::ConvSoft(codec)];
    let budget = BerBudget {
        min_bits: 65_024,
        min_errors: 0,
        max_bits: 65_024,
        ..BerBudget::default()
    };
    let mut group = c.benchmark_group("ber_point_3db");
    group.sample_size(10);
    for chain in &chains {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(chain.label(), name), &exec, |b, &exec| {
                b.iter(|| simulate_ber_point(black_box(chain), 3.0, &budget, 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let cfg = parse_config_str("").unwrap();
    let table = cfg.policy().unwrap();
    let ctx = SimContext {
        policy: &table,
        params: &cfg.link,
    };
    let mut group = c.benchmark_group("simulation_500x100");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_simulation(black_box(&cfg.field), &Scheme::ALL, &ctx, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ber_point, simulation);
criterion_main!(benches);
