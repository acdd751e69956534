//! Oracle comparison suite behind `polariton verify`.
//!
//! Each check draws its inputs from a fixed-seed generator, runs one fast path
//! and one oracle, and reports the worst pointwise disagreement.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::propagate::{propagate_wigner, PropagateOptions};
use crate::dynamics::spectrum::SpectrumModel;
use crate::dynamics::tight_binding::tb_evolve_state_in;
use crate::error::Result;
use crate::models::coherent::jc_coherent_wigner_closed;
use crate::oracle::{direct_transform, eigenphase_evolve, naive_wigner, ode_tb_evolve_in, OracleReport, DEFAULT_RTOL};
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::phase_space::lattice::{DensityWindow, LatticeMode, LatticeState};
use crate::phase_space::marginals::{marginal_momentum, marginal_position, reconstruct_from_field};
use crate::phase_space::wigner::{wigner_from_density, wigner_from_state, wigner_point};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    #[default]
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub level: VerifyLevel,
    pub seed: u64,
    /// Test fixture: evolve the kernel path with `-t`, i.e. a flipped phase.
    pub inject_kernel_sign_error: bool,
}

struct Scale {
    sites: usize,
    tb_sites: i64,
    tb_time: f64,
    k_count: usize,
    times: &'static [f64],
}

impl VerifyLevel {
    fn scale(self) -> Scale {
        match self {
            VerifyLevel::Fast => Scale { sites: 8, tb_sites: 60, tb_time: 2.0, k_count: 32, times: &[0.5, 5.0] },
            VerifyLevel::Full => Scale { sites: 32, tb_sites: 120, tb_time: 5.0, k_count: 256, times: &[0.5, 5.0, 50.0] },
        }
    }
}

pub fn random_state(rng: &mut impl Rng, n_min: i64, len: usize) -> LatticeState {
    let amps = (0..len).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    LatticeState::normalize(n_min, amps).expect("random amplitudes are nonzero")
}

/// Random mixed state: a convex combination of three random pure states.
pub fn random_density(rng: &mut impl Rng, n_min: i64, dim: usize) -> DensityWindow {
    let states: Vec<LatticeState> = (0..3).map(|_| random_state(rng, n_min, dim)).collect();
    let mut w: Vec<f64> = (0..3).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    let parts: Vec<(f64, &LatticeState)> = w.iter().copied().zip(states.iter()).collect();
    DensityWindow::mixture(&parts).expect("weights sum to one")
}

fn check_wigner_points(rng: &mut ChaCha8Rng, s: &Scale) -> OracleReport {
    let psi = random_state(rng, -(s.sites as i64) / 2, s.sites);
    let (mut reference, mut comparison) = (Vec::new(), Vec::new());
    for _ in 0..100 {
        let n2 = rng.gen_range(2 * psi.n_min()..=2 * psi.n_max());
        let k = rng.gen_range(0.0..2.0 * PI);
        reference.push(naive_wigner(&psi, n2, k).re);
        comparison.push(wigner_point(&psi, n2, k).re);
    }
    OracleReport::compare("wigner_point_vs_naive_sum", reference, comparison, 1e-12)
}

fn check_wigner_grid(rng: &mut ChaCha8Rng, s: &Scale) -> Result<OracleReport> {
    let psi = random_state(rng, 3, s.sites);
    let grid = QuasiMomentumGrid::full(s.k_count)?;
    let w = wigner_from_state(&psi, grid, LatticeMode::HalfInteger)?;
    let (mut reference, mut comparison) = (Vec::new(), Vec::new());
    for r in 0..w.rows() {
        for j in 0..grid.count() {
            reference.push(naive_wigner(&psi, w.n_twice(r), grid.k(j)).re);
            comparison.push(w.row(r)[j]);
        }
    }
    Ok(OracleReport::compare("wigner_grid_vs_naive_sum", reference, comparison, 1e-12))
}

fn check_marginals(rng: &mut ChaCha8Rng, s: &Scale) -> Result<Vec<OracleReport>> {
    let psi = random_state(rng, -2, s.sites);
    let grid = QuasiMomentumGrid::full(4 * s.sites)?;
    let w = wigner_from_state(&psi, grid, LatticeMode::HalfInteger)?;
    let pos = marginal_position(&w)?;
    let reference = pos.iter().map(|&(n2, _)| if n2 % 2 == 0 { psi.amp(n2 / 2).norm_sqr() } else { 0.0 }).collect();
    let comparison = pos.iter().map(|&(_, v)| v).collect();
    let a = OracleReport::compare("position_marginal", reference, comparison, 1e-10);
    let mom = marginal_momentum(&w)?;
    let reference = (0..grid.count()).map(|j| direct_transform(&psi, grid.k(j)).norm_sqr() / (2.0 * PI)).collect();
    let b = OracleReport::compare("momentum_marginal", reference, mom, 1e-10);
    Ok(vec![a, b])
}

fn check_parseval(rng: &mut ChaCha8Rng, s: &Scale) -> OracleReport {
    let psi = random_state(rng, -5, s.sites);
    let m = 8 * s.sites;
    let integral: f64 = (0..m).map(|j| direct_transform(&psi, 2.0 * PI * j as f64 / m as f64).norm_sqr()).sum::<f64>() / m as f64;
    OracleReport::compare("parseval", vec![psi.norm_sqr()], vec![integral], 1e-10)
}

fn check_tight_binding(rng: &mut ChaCha8Rng, s: &Scale) -> Result<OracleReport> {
    let half = s.tb_sites / 2;
    let psi = random_state(rng, -2, 5);
    let fast = tb_evolve_state_in(&psi, s.tb_time, -half, half - 1)?;
    let slow = ode_tb_evolve_in(&psi, s.tb_time, DEFAULT_RTOL, -half, half - 1)?.state;
    let (mut reference, mut comparison) = (Vec::new(), Vec::new());
    for n in -half..half {
        let (a, b) = (slow.amp(n), fast.amp(n));
        reference.extend([a.re, a.im]);
        comparison.extend([b.re, b.im]);
    }
    Ok(OracleReport::compare("tight_binding_green_vs_ode", reference, comparison, 1e-8))
}

fn check_kernel(rng: &mut ChaCha8Rng, s: &Scale, inject: bool) -> Result<Vec<OracleReport>> {
    let spectrum = SpectrumModel::Jc { omega: 1.0, delta: 0.5, g: 1.0 };
    let psi = random_state(rng, -5, 10);
    let grid = QuasiMomentumGrid::full(s.k_count)?;
    let w0 = wigner_from_state(&psi, grid, LatticeMode::HalfInteger)?;
    let mut out = Vec::new();
    for &t in s.times {
        let kt = if inject { -t } else { t };
        let got = propagate_wigner(&w0, &spectrum, kt, PropagateOptions::default())?;
        let evolved = eigenphase_evolve(&psi, &spectrum, t)?;
        let (mut reference, mut comparison) = (Vec::new(), Vec::new());
        for r in 0..got.rows() {
            for j in 0..grid.count() {
                reference.push(naive_wigner(&evolved, got.n_twice(r), grid.k(j)).re);
                comparison.push(got.row(r)[j]);
            }
        }
        out.push(OracleReport::compare(format!("kernel_propagation_t{t}"), reference, comparison, 1e-8));
    }
    Ok(out)
}

fn check_reconstruction(rng: &mut ChaCha8Rng) -> Result<OracleReport> {
    let rho = random_density(rng, -3, 8);
    let w = wigner_from_density(&rho, QuasiMomentumGrid::full(32)?, LatticeMode::HalfInteger)?;
    let back = reconstruct_from_field(&w)?;
    Ok(OracleReport::scalar("reconstruction_round_trip", back.max_abs_diff(&rho), 1e-10))
}

fn check_coherent(rng: &mut ChaCha8Rng) -> Result<OracleReport> {
    let alpha = C64::from_polar(2.0, rng.gen_range(0.0..2.0 * PI));
    let cutoff = 40;
    // lattice image of a field coherent state, built from its definition
    let mut amps = Vec::new();
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut poisson = vec![c];
    for m in 1..=cutoff {
        c = c * alpha / (m as f64).sqrt();
        poisson.push(c);
    }
    for n in -(cutoff as i64)..=cutoff as i64 {
        let m = n.unsigned_abs() as usize;
        amps.push(match n.signum() {
            0 => poisson[0],
            1 => poisson[m] * std::f64::consts::FRAC_1_SQRT_2,
            _ => -poisson[m] * std::f64::consts::FRAC_1_SQRT_2,
        });
    }
    let psi = LatticeState::new_unnormalized(-(cutoff as i64), amps);
    let (mut reference, mut comparison) = (Vec::new(), Vec::new());
    for _ in 0..10 {
        let n2 = rng.gen_range(-16..=16);
        let k = rng.gen_range(0.0..2.0 * PI);
        reference.push(naive_wigner(&psi, n2, k).re);
        comparison.push(jc_coherent_wigner_closed(alpha, n2, k, cutoff));
    }
    Ok(OracleReport::compare("coherent_closed_form", reference, comparison, 1e-10))
}

/// Runs every check. Errors inside a check become failing reports named after
/// the check, so a broken path never hides the others.
pub fn run_verification(opts: &VerifyOptions) -> Vec<OracleReport> {
    let s = opts.level.scale();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = vec![check_wigner_points(&mut rng, &s)];
    let mut push = |name: &str, r: Result<Vec<OracleReport>>| match r {
        Ok(v) => out.extend(v),
        Err(e) => {
            log::error!("{name}: {e}");
            out.push(OracleReport::scalar(name, f64::INFINITY, 0.0));
        }
    };
    push("wigner_grid_vs_naive_sum", check_wigner_grid(&mut rng, &s).map(|r| vec![r]));
    push("marginals", check_marginals(&mut rng, &s));
    push("parseval", Ok(vec![check_parseval(&mut rng, &s)]));
    push("tight_binding_green_vs_ode", check_tight_binding(&mut rng, &s).map(|r| vec![r]));
    push("kernel_propagation", check_kernel(&mut rng, &s, opts.inject_kernel_sign_error));
    push("reconstruction_round_trip", check_reconstruction(&mut rng).map(|r| vec![r]));
    push("coherent_closed_form", check_coherent(&mut rng).map(|r| vec![r]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_passes() {
        let reports = run_verification(&VerifyOptions::default());
        for r in &reports {
            assert!(r.pass, "{} err {:e}", r.quantity, r.max_abs_error);
        }
        assert!(reports.len() >= 9);
    }

    #[test]
    fn injected_sign_error_is_caught_by_name() {
        let opts = VerifyOptions { inject_kernel_sign_error: true, ..Default::default() };
        let failed: Vec<String> = run_verification(&opts).into_iter().filter(|r| !r.pass).map(|r| r.quantity).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|q| q.starts_with("kernel_propagation")));
    }
}
