use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use log::{info, warn};
use polariton_core::dynamics::kernel::PropagatorKernel;
use polariton_core::dynamics::propagate::{propagate_delta_field, propagate_wigner, PropagateOptions};
use polariton_core::dynamics::tight_binding::{tb_evolve_state_in, wavefront_margin};
use polariton_core::io::{field_to_csv, field_to_pgm, kernels_to_csv, write_atomic, ModelKind};
use polariton_core::models::caustics::caustics;
use polariton_core::models::coherent::eigenphase_state;
use polariton_core::models::dressed::{bare_to_dressed, dressed_to_bare};
use polariton_core::models::rabi::rabi_evolve;
use polariton_core::oracle::OracleReport;
use polariton_core::phase_space::marginals::{marginal_momentum, marginal_position};
use polariton_core::phase_space::wigner::wigner_from_state_in;
use polariton_core::verify::{run_verification, VerifyLevel, VerifyOptions};
use polariton_core::{LatticeState, WignerField};
use serde::Serialize;

use crate::config::RunConfig;

/// Extra sites around the initial support for the Rabi route's default window.
const RABI_WINDOW_PAD: i64 = 40;

pub struct Output {
    dir: PathBuf,
}

impl Output {
    pub fn new(dir: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn write(&self, name: &str, bytes: &[u8]) -> anyhow::Result<()> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        info!("wrote {}", path.display());
        Ok(())
    }

    fn field(&self, stem: &str, w: &WignerField) -> anyhow::Result<()> {
        self.write(&format!("{stem}.csv"), field_to_csv(w).as_bytes())?;
        self.write(&format!("{stem}.pgm"), &field_to_pgm(w))
    }

    fn json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(name, s.as_bytes())
    }
}

fn portrait(cfg: &RunConfig, psi: &LatticeState, window: (i64, i64)) -> anyhow::Result<WignerField> {
    Ok(wigner_from_state_in(psi, cfg.k_grid()?, cfg.lattice_mode(), window.0, window.1)?)
}

fn position_marginal_csv(psi: &LatticeState, window: (i64, i64)) -> String {
    let norm = psi.norm_sqr();
    let mut s = String::from("n,probability\n");
    for n in window.0..=window.1 {
        s.push_str(&format!("{n},{:.16e}\n", psi.amp(n).norm_sqr() / norm));
    }
    s
}

pub fn wigner(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    let w = match cfg.lattice_state()? {
        Some(psi) => portrait(cfg, &psi, cfg.window_for(&psi))?,
        None => cfg.delta_field()?.expect("momentum state").render(cfg.k_grid()?),
    };
    out.field("wigner", &w)
}

#[derive(Serialize)]
struct EvolveStep {
    index: usize,
    t: f64,
    route: &'static str,
    /// Largest pointwise difference between the kernel and direct routes.
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
}

pub fn evolve(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    if cfg.times.is_empty() {
        bail!("evolve needs at least one time (--times)");
    }
    let Some(psi) = cfg.lattice_state()? else {
        return evolve_delta(cfg, out);
    };
    let t_max = cfg.times.iter().cloned().fold(0.0, f64::max);
    let kind = cfg.model_kind();
    let window = match (cfg.grid.window, kind) {
        (Some(w), _) => w,
        (None, Some(ModelKind::TightBinding)) => {
            let m = wavefront_margin(t_max);
            (psi.n_min() - m, psi.n_max() + m)
        }
        (None, Some(ModelKind::Rabi)) => (psi.n_min() - RABI_WINDOW_PAD, psi.n_max() + RABI_WINDOW_PAD),
        (None, _) => (psi.n_min(), psi.n_max()),
    };

    let mut steps = Vec::new();
    let rabi_states = if kind == Some(ModelKind::Rabi) {
        Some(evolve_rabi(cfg, &psi)?)
    } else {
        None
    };
    let w0 = portrait(cfg, &psi, window)?;
    for (i, &t) in cfg.times.iter().enumerate() {
        let mut step = EvolveStep { index: i, t, route: "identity", cross_check: None, n_max: None };
        let state = if t == 0.0 {
            psi.clone()
        } else {
            let evolved = match kind {
                Some(ModelKind::TightBinding) => {
                    step.route = "tight_binding";
                    tb_evolve_state_in(&psi, t, window.0, window.1)?
                }
                Some(ModelKind::Rabi) => {
                    let (n_max, states) = rabi_states.as_ref().unwrap();
                    step.route = "rabi";
                    step.n_max = Some(*n_max);
                    states[i].clone()
                }
                _ => {
                    step.route = "eigenphase";
                    eigenphase_state(&psi, &cfg.spectrum()?, t)?
                }
            };
            LatticeState::normalize(evolved.n_min(), evolved.amplitudes().to_vec())?
        };
        let w = portrait(cfg, &state, window)?;
        if step.route == "eigenphase" {
            let opts = PropagateOptions { n_prime: cfg.n_prime, ..Default::default() };
            match propagate_wigner(&w0, &cfg.spectrum()?, t, opts) {
                Ok(wk) => {
                    let d = wk.max_abs_diff(&w)?;
                    info!("t = {t}: kernel vs eigenphase max discrepancy {d:.3e}");
                    step.cross_check = Some(d);
                }
                Err(e) => warn!("t = {t}: kernel route skipped: {e}"),
            }
        }
        out.field(&format!("wigner_t{i:03}"), &w)?;
        out.write(&format!("marginal_t{i:03}.csv"), position_marginal_csv(&state, window).as_bytes())?;
        steps.push(step);
    }
    out.json("evolve.json", &steps)
}

/// Certified Rabi evolution of a JC dressed state, mapped back to the lattice.
fn evolve_rabi(cfg: &RunConfig, psi: &LatticeState) -> anyhow::Result<(usize, Vec<LatticeState>)> {
    let model = cfg.model.as_ref().context("rabi route needs a model section")?;
    let map = model.dressed_map()?;
    let reach = psi.n_min().unsigned_abs().max(psi.n_max().unsigned_abs()) as usize;
    let n_max = model.n_max.unwrap_or(reach + 60);
    let h0 = dressed_to_bare(psi, &map, n_max)?;
    let ev = rabi_evolve(&model.rabi(), &h0, &cfg.times, n_max)?;
    info!("rabi truncation certified at n_max = {} (leakage {:.2e})", ev.n_max, ev.max_leakage);
    let states = ev.states.iter().map(|h| bare_to_dressed(h, &map)).collect::<Result<Vec<_>, _>>()?;
    Ok((ev.n_max, states))
}

fn evolve_delta(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    let field = cfg.delta_field()?.expect("momentum state");
    let spectrum = cfg.spectrum()?;
    let grid = cfg.k_grid()?;
    let n_prime = cfg.n_prime.unwrap_or(((field.n_max - field.n_min + 1) / 2) as usize);
    let mut steps = Vec::new();
    for (i, &t) in cfg.times.iter().enumerate() {
        let w = if t == 0.0 { field.render(grid) } else { propagate_delta_field(&field, &spectrum, t, grid, n_prime)? };
        out.field(&format!("wigner_t{i:03}"), &w)?;
        steps.push(EvolveStep { index: i, t, route: "kernel", cross_check: None, n_max: None });
    }
    out.json("evolve.json", &steps)
}

pub fn kernel(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    let spectrum = cfg.spectrum()?;
    let grid = cfg.k_grid()?;
    let (lo, hi) = cfg.grid.window.unwrap_or((-10, 10));
    let n_prime = cfg.n_prime.unwrap_or(((hi - lo + 1) / 2) as usize);
    let times = if cfg.times.is_empty() { vec![0.0] } else { cfg.times.clone() };
    let step = cfg.lattice_mode().row_step();
    let mut kernels = Vec::new();
    for &t in &times {
        let mut n2 = 2 * lo;
        while n2 <= 2 * hi {
            kernels.push(PropagatorKernel::sample(&spectrum, n2, grid, t, n_prime)?);
            n2 += step;
        }
    }
    out.write("kernel.csv", kernels_to_csv(&kernels, cfg.lattice_mode())?.as_bytes())
}

pub fn marginals(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    let psi = cfg.lattice_state()?.context("marginals need a normalizable lattice state")?;
    let w = portrait(cfg, &psi, cfg.window_for(&psi))?;
    let mut s = String::from("n_twice,value\n");
    for (n2, v) in marginal_position(&w)? {
        s.push_str(&format!("{n2},{v:.16e}\n"));
    }
    out.write("marginal_position.csv", s.as_bytes())?;
    let grid = w.grid();
    let mut s = String::from("k_index,k,value\n");
    for (j, v) in marginal_momentum(&w)?.into_iter().enumerate() {
        s.push_str(&format!("{j},{:.16e},{v:.16e}\n", grid.k(j)));
    }
    out.write("marginal_momentum.csv", s.as_bytes())
}

#[derive(Serialize)]
struct CausticResult {
    query: polariton_core::models::caustics::CausticQuery,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<polariton_core::models::caustics::CausticPoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn caustic(cfg: &RunConfig, out: &Output) -> anyhow::Result<()> {
    if cfg.caustics.is_empty() {
        bail!("config has no `caustics` queries");
    }
    let results: Vec<CausticResult> = cfg
        .caustics
        .iter()
        .map(|q| match caustics(q) {
            Ok(p) => CausticResult { query: *q, points: Some(p), error: None },
            Err(e) => CausticResult { query: *q, points: None, error: Some(e.to_string()) },
        })
        .collect();
    out.json("caustics.json", &results)
}

/// Returns whether every check passed.
pub fn verify(level: VerifyLevel, inject: bool, out: Option<&Output>) -> anyhow::Result<bool> {
    let start = Instant::now();
    let reports: Vec<OracleReport> =
        run_verification(&VerifyOptions { level, seed: 0, inject_kernel_sign_error: inject });
    for r in &reports {
        println!(
            "{} {:<32} err={:.3e} tol={:.1e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.quantity,
            r.max_abs_error,
            r.tolerance
        );
    }
    let ok = reports.iter().all(|r| r.pass);
    println!("{} checks, {} failed, {:.2}s", reports.len(), reports.iter().filter(|r| !r.pass).count(), start.elapsed().as_secs_f64());
    if let Some(out) = out {
        out.json("verify.json", &reports)?;
    }
    Ok(ok)
}
