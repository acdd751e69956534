use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polariton_core::dynamics::propagate::{propagate_wigner, ConvolutionMethod, PropagateOptions};
use polariton_core::dynamics::tight_binding::tb_evolve_state;
use polariton_core::models::hybrid::{Atom, HybridState};
use polariton_core::models::jc::{jc_spectrum, JcParams};
use polariton_core::models::rabi::{RabiEvolver, RabiParams};
use polariton_core::phase_space::wigner::wigner_from_state;
use polariton_core::{LatticeMode, LatticeState, QuasiMomentumGrid, C64};

fn state(len: usize) -> LatticeState {
    let amps = (0..len).map(|i| C64::new((0.7 * i as f64).sin() + 1.1, (1.3 * i as f64).cos())).collect();
    LatticeState::normalize(-(len as i64) / 2, amps).unwrap()
}

fn wigner(c: &mut Criterion) {
    let mut g = c.benchmark_group("wigner_from_state");
    for len in [32, 128] {
        let psi = state(len);
        let grid = QuasiMomentumGrid::full(256).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(len), &psi, |b, psi| {
            b.iter(|| wigner_from_state(psi, grid, LatticeMode::HalfInteger).unwrap())
        });
    }
    g.finish();
}

fn propagate(c: &mut Criterion) {
    let spectrum = jc_spectrum(&JcParams::new(1.0, 0.5, 1.0).unwrap());
    let w0 = wigner_from_state(&state(32), QuasiMomentumGrid::full(256).unwrap(), LatticeMode::HalfInteger).unwrap();
    let mut g = c.benchmark_group("propagate_wigner");
    for (name, method) in [("fft", ConvolutionMethod::Fft), ("direct", ConvolutionMethod::Direct)] {
        let opts = PropagateOptions { method, ..Default::default() };
        g.bench_function(name, |b| b.iter(|| propagate_wigner(&w0, &spectrum, 5.0, opts).unwrap()));
    }
    g.finish();
}

fn tight_binding(c: &mut Criterion) {
    let psi = state(8);
    c.bench_function("tb_evolve_state_t20", |b| b.iter(|| tb_evolve_state(&psi, 20.0).unwrap()));
}

fn rabi(c: &mut Criterion) {
    let p = RabiParams::from_jc(&JcParams::new(1.0, 1.5, 1.0).unwrap());
    let mut g = c.benchmark_group("rabi");
    g.sample_size(10);
    g.bench_function("eigendecomposition_n200", |b| b.iter(|| RabiEvolver::new(&p, 200)));
    let ev = RabiEvolver::new(&p, 200);
    let mut h = HybridState::zeros(200);
    h.set(100, Atom::Excited, C64::new(1.0, 0.0));
    g.bench_function("evolve_n200", |b| b.iter(|| ev.evolve(&h, 2.0).unwrap()));
    g.finish();
}

criterion_group!(benches, wigner, propagate, tight_binding, rabi);
criterion_main!(benches);
