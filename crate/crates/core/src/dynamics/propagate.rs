//! Wigner propagation `W(n, k; t) = int dk' K(n, k - k'; t) W(n, k'; 0)` as a
//! cyclic convolution on the uniform grid.
//!
//! Every row of a window-truncated field is a trigonometric polynomial: row
//! `n_twice` only holds harmonics `d = b - a` with `a, b` in the window. The
//! kernel terms beyond that reach multiply zero coefficients, so each row's
//! kernel is cut at `min(2 N', reach)`. The discrete convolution is then exact
//! whenever the grid resolves the combined harmonic range.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::dynamics::kernel::{kernel_from_terms, kernel_terms};
use crate::dynamics::spectrum::SpectrumModel;
use crate::error::{Error, Result};
use crate::phase_space::cats::DeltaLineField;
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::{Period, QuasiMomentumGrid};
use crate::phase_space::lattice::LatticeMode;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvolutionMethod {
    #[default]
    Fft,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PropagateOptions {
    /// Kernel truncation `N'`; defaults to half the window width, rounded up.
    pub n_prime: Option<usize>,
    pub method: ConvolutionMethod,
}

/// Cyclic convolution `out_i = weight * sum_j kernel[(i - j) mod M] w[j]`.
pub struct Convolver {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Convolver {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { len, forward: planner.plan_fft_forward(len), inverse: planner.plan_fft_inverse(len) }
    }

    pub fn convolve(&self, kernel: &[f64], w: &[f64], weight: f64, method: ConvolutionMethod) -> Vec<f64> {
        assert_eq!(kernel.len(), self.len);
        assert_eq!(w.len(), self.len);
        match method {
            ConvolutionMethod::Direct => convolve_direct(kernel, w, weight),
            ConvolutionMethod::Fft => {
                let mut a: Vec<C64> = kernel.iter().map(|&x| C64::new(x, 0.0)).collect();
                let mut b: Vec<C64> = w.iter().map(|&x| C64::new(x, 0.0)).collect();
                self.forward.process(&mut a);
                self.forward.process(&mut b);
                for (x, y) in a.iter_mut().zip(&b) {
                    *x *= y;
                }
                self.inverse.process(&mut a);
                let s = weight / self.len as f64;
                a.into_iter().map(|z| z.re * s).collect()
            }
        }
    }
}

fn convolve_direct(kernel: &[f64], w: &[f64], weight: f64) -> Vec<f64> {
    let m = kernel.len();
    (0..m)
        .map(|i| {
            let s: f64 = (0..m).map(|j| kernel[(i + m - j) % m] * w[j]).sum();
            s * weight
        })
        .collect()
}

/// Harmonic step of the grid: a `pi` grid only represents even `d`.
fn harmonic_divisor(grid: &QuasiMomentumGrid) -> i64 {
    match grid.period() {
        Period::TwoPi => 1,
        Period::Pi => 2,
    }
}

/// Propagates every row of `w0` for time `t` under `spectrum`.
pub fn propagate_wigner(w0: &WignerField, spectrum: &SpectrumModel, t: f64, opts: PropagateOptions) -> Result<WignerField> {
    let grid = *w0.grid();
    if w0.mode() == LatticeMode::HalfInteger && grid.period() != Period::TwoPi {
        return Err(Error::Unsupported { required: "a 2pi grid for half-integer propagation" });
    }
    let lo2 = w0.n_min_twice();
    let hi2 = w0.n_max_twice();
    // reach of row n_twice: max |b - a| with a, b integers in the window
    let lo = lo2.div_euclid(2) + lo2.rem_euclid(2);
    let hi = hi2.div_euclid(2);
    let n_prime = opts.n_prime.unwrap_or(((hi - lo + 1) / 2) as usize);
    let s = harmonic_divisor(&grid);
    let reach = |n_twice: i64| (n_twice - 2 * lo).min(2 * hi - n_twice).max(0);
    let mut required = 0;
    for r in 0..w0.rows() {
        let n2 = w0.n_twice(r);
        let dw = reach(n2);
        let dk = dw.min(2 * n_prime as i64);
        required = required.max((dk + dw) / s + 1);
    }
    let required = (required + required % 2) as usize;
    if grid.count() < required {
        return Err(Error::Aliasing { count: grid.count(), required });
    }

    let conv = Convolver::new(grid.count());
    let weight = grid.full_period_weight();
    let mut out = w0.clone();
    for r in 0..w0.rows() {
        let n2 = w0.n_twice(r);
        let d_max = reach(n2).min(2 * n_prime as i64) as usize;
        let terms = kernel_terms(spectrum, n2, t, d_max)?;
        let kernel: Vec<f64> = (0..grid.count()).map(|j| kernel_from_terms(n2, &terms, grid.k(j))).collect();
        let row = conv.convolve(&kernel, w0.row(r), weight, opts.method);
        out.row_mut(r).copy_from_slice(&row);
    }
    Ok(out)
}

/// Evolves a field of delta lines exactly: each line `w(n) delta(k - k0)`
/// becomes `w(n) K(n, k - k0; t)`, sampled on `grid` with truncation `n_prime`.
pub fn propagate_delta_field(
    field: &DeltaLineField,
    spectrum: &SpectrumModel,
    t: f64,
    grid: QuasiMomentumGrid,
    n_prime: usize,
) -> Result<WignerField> {
    let mut out = WignerField::for_window(field.mode, grid, field.n_min, field.n_max);
    for r in 0..out.rows() {
        let n2 = out.n_twice(r);
        let terms = kernel_terms(spectrum, n2, t, 2 * n_prime)?;
        let weights = field.weights(n2);
        let row = out.row_mut(r);
        for (j, v) in row.iter_mut().enumerate() {
            let k = grid.k(j);
            *v = weights.iter().map(|&(k0, wt)| wt * kernel_from_terms(n2, &terms, k - k0)).sum();
        }
    }
    Ok(out)
}
