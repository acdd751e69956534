//! Dormand-Prince 5(4) integration of `d psi_n/dt = psi_{n-1} - psi_{n+1}`.

use crate::error::{Error, Result};
use crate::phase_space::lattice::LatticeState;
use crate::C64;

pub const DEFAULT_RTOL: f64 = 1e-10;

const MIN_STEP: f64 = 1e-12;
const MAX_STEPS: usize = 10_000_000;

// Butcher tableau; the system is autonomous so the nodes are not needed
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub state: LatticeState,
    /// `|norm^2(t) - norm^2(0)|`.
    pub norm_drift: f64,
    pub steps: usize,
    pub rejected: usize,
}

fn rhs(y: &[C64], out: &mut [C64]) {
    let n = y.len();
    let zero = C64::new(0.0, 0.0);
    for i in 0..n {
        let left = if i > 0 { y[i - 1] } else { zero };
        let right = if i + 1 < n { y[i + 1] } else { zero };
        out[i] = left - right;
    }
}

/// Padding wide enough for the Bessel tail to fall below 1e-14.
fn padding(t: f64) -> i64 {
    let t = t.abs();
    (2.0 * t).ceil() as i64 + 40 + (16.0 * t.cbrt()).ceil() as i64
}

/// Integrates on `psi0`'s window widened by a generous light-cone margin.
pub fn ode_tb_evolve(psi0: &LatticeState, t: f64, rtol: f64) -> Result<OdeSolution> {
    let pad = padding(t);
    ode_tb_evolve_in(psi0, t, rtol, psi0.n_min() - pad, psi0.n_max() + pad)
}

/// Integrates on the fixed window `lo ..= hi` with zero boundary values.
pub fn ode_tb_evolve_in(psi0: &LatticeState, t: f64, rtol: f64, lo: i64, hi: i64) -> Result<OdeSolution> {
    if !(rtol > 0.0) || lo > psi0.n_min() || hi < psi0.n_max() {
        return Err(Error::InvalidParameter("ode window must contain the state and rtol must be positive".into()));
    }
    let dim = (hi - lo + 1) as usize;
    let mut y: Vec<C64> = (lo..=hi).map(|n| psi0.amp(n)).collect();
    let norm0: f64 = y.iter().map(|a| a.norm_sqr()).sum();
    let atol = rtol;
    let dir = t.signum();
    let mut tc = 0.0_f64;
    let mut h = dir * 0.01_f64.min(t.abs());
    let mut k = vec![vec![C64::new(0.0, 0.0); dim]; 7];
    let mut tmp = vec![C64::new(0.0, 0.0); dim];
    let mut y5 = vec![C64::new(0.0, 0.0); dim];
    let (mut steps, mut rejected) = (0, 0);
    rhs(&y, &mut k[0]);

    while dir * (t - tc) > 0.0 {
        if dir * (tc + h - t) > 0.0 {
            h = t - tc;
        }
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += kj[i] * (h * A[s][j]);
                }
                tmp[i] = acc;
            }
            rhs(&tmp, &mut k[s]);
        }
        let mut err = 0.0_f64;
        for i in 0..dim {
            let mut hi5 = y[i];
            let mut lo4 = y[i];
            for s in 0..7 {
                hi5 += k[s][i] * (h * B5[s]);
                lo4 += k[s][i] * (h * B4[s]);
            }
            y5[i] = hi5;
            let scale = atol + rtol * y[i].norm().max(hi5.norm());
            err = err.max((hi5 - lo4).norm() / scale);
        }
        if err <= 1.0 {
            tc += h;
            std::mem::swap(&mut y, &mut y5);
            // first-same-as-last: stage 7 is f(y_{n+1})
            k.swap(0, 6);
            steps += 1;
        } else {
            rejected += 1;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < MIN_STEP && dir * (t - tc) > MIN_STEP {
            return Err(Error::StepUnderflow { t: tc });
        }
        if steps + rejected > MAX_STEPS {
            return Err(Error::StepUnderflow { t: tc });
        }
    }
    let norm1: f64 = y.iter().map(|a| a.norm_sqr()).sum();
    Ok(OdeSolution {
        state: LatticeState::new_unnormalized(lo, y),
        norm_drift: (norm1 - norm0).abs(),
        steps,
        rejected,
    })
}
