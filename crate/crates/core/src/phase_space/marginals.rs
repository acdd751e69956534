//! Marginals, coherence extraction and operator reconstruction.
//!
//! All of these need the half-integer lattice and the full `2 pi` period: on
//! the integer lattice half of the off-diagonal elements of `rho` have no row
//! to live in. `k` integrals use the trapezoid rule on the uniform periodic
//! grid, which is exact for trigonometric polynomials of degree below the
//! sample count.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::{Period, QuasiMomentumGrid};
use crate::phase_space::lattice::{DensityWindow, LatticeMode};
use crate::C64;

fn require_exact_marginals(w: &WignerField) -> Result<()> {
    if w.mode() != LatticeMode::HalfInteger || w.grid().period() != Period::TwoPi {
        return Err(Error::Unsupported { required: "half-integer mode with period 2pi" });
    }
    Ok(())
}

/// `int_0^{2 pi} dk W(n, k)` for every row, as `(n_twice, value)`.
/// Integer rows give `<n|rho|n>`; half-integer rows integrate to zero.
pub fn marginal_position(w: &WignerField) -> Result<Vec<(i64, f64)>> {
    require_exact_marginals(w)?;
    let h = w.grid().full_period_weight();
    Ok((0..w.rows()).map(|r| (w.n_twice(r), w.row(r).iter().sum::<f64>() * h)).collect())
}

/// `sum_n W(n, k_j)` over all integer and half-integer rows: `<k|rho|k>`.
pub fn marginal_momentum(w: &WignerField) -> Result<Vec<f64>> {
    require_exact_marginals(w)?;
    let m = w.grid().count();
    let mut out = vec![0.0; m];
    for r in 0..w.rows() {
        for (o, v) in out.iter_mut().zip(w.row(r)) {
            *o += v;
        }
    }
    Ok(out)
}

/// `int dk exp(2 i m k) W(n, k) = <n+m|rho|n-m>` for every row where `n +- m`
/// is an integer. `m` is given doubled.
pub fn coherence_extract(w: &WignerField, m_twice: i64) -> Result<Vec<(i64, C64)>> {
    require_exact_marginals(w)?;
    let width = w.n_max_twice() - w.n_min_twice();
    if m_twice.abs() > width {
        return Err(Error::InvalidParameter(format!("coherence offset m = {m_twice}/2 exceeds the window")));
    }
    let grid = w.grid();
    let h = grid.full_period_weight();
    let phases: Vec<C64> = (0..grid.count()).map(|j| C64::from_polar(1.0, m_twice as f64 * grid.k(j))).collect();
    let mut out = Vec::new();
    for r in 0..w.rows() {
        let n_twice = w.n_twice(r);
        if (n_twice + m_twice).rem_euclid(2) != 0 {
            continue;
        }
        let v: C64 = w.row(r).iter().zip(&phases).map(|(x, p)| p * *x).sum::<C64>() * h;
        out.push((n_twice, v));
    }
    Ok(out)
}

/// Rebuilds `<b|O|a> = int dk exp(i k (b - a)) W((a + b)/2, k)` on the window
/// `n_min ..= n_min + dim - 1` from point samples of `W`.
///
/// `sampler(n_twice, k)` is evaluated on a `2 pi` grid of `count` points;
/// the quadrature is exact when `count >= 2 dim`.
pub fn reconstruct_operator<F>(sampler: F, n_min: i64, dim: usize, count: usize) -> Result<DensityWindow>
where
    F: Fn(i64, f64) -> f64,
{
    if dim == 0 {
        return Err(Error::InvalidParameter("empty reconstruction window".into()));
    }
    if count < 2 * dim {
        return Err(Error::Aliasing { count, required: 2 * dim });
    }
    let grid = QuasiMomentumGrid::full(count)?;
    let h = grid.full_period_weight();
    let rows = 2 * dim - 1;
    let samples: Vec<Vec<f64>> = (0..rows)
        .map(|r| {
            let n_twice = 2 * n_min + r as i64;
            (0..count).map(|j| sampler(n_twice, grid.k(j))).collect()
        })
        .collect();
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for bi in 0..dim {
        for ai in 0..dim {
            let row = &samples[ai + bi];
            let d = bi as f64 - ai as f64;
            let v: C64 = row
                .iter()
                .enumerate()
                .map(|(j, x)| C64::from_polar(*x, d * grid.k(j)))
                .sum::<C64>()
                * h;
            data[bi * dim + ai] = v;
        }
    }
    Ok(DensityWindow::from_raw(n_min, dim, data))
}

/// Reconstruction from an already sampled field covering the window.
pub fn reconstruct_from_field(w: &WignerField) -> Result<DensityWindow> {
    require_exact_marginals(w)?;
    if w.n_min_twice().rem_euclid(2) != 0 || w.n_max_twice().rem_euclid(2) != 0 {
        return Err(Error::InvalidParameter("field window must start and end on integers".into()));
    }
    let n_min = w.n_min_twice() / 2;
    let dim = ((w.n_max_twice() - w.n_min_twice()) / 2 + 1) as usize;
    let count = w.grid().count();
    let grid = *w.grid();
    reconstruct_operator(
        |n_twice, k| {
            let j = ((k / grid.spacing()).round() as usize) % count;
            w.get(n_twice, j)
        },
        n_min,
        dim,
        count,
    )
}

/// `|<k|psi>|^2 = |sum_n psi_n exp(-i k n)|^2 / 2 pi`.
pub fn momentum_density(psi: &crate::LatticeState, k: f64) -> f64 {
    crate::phase_space::fourier::fourier_transform(psi, k).norm_sqr() / (2.0 * PI)
}
