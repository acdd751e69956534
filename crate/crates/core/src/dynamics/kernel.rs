//! The Wigner propagator of a lattice-diagonal Hamiltonian,
//!
//! ```text
//! K(n, k; t) = 1/(2 pi) + 1/pi sum_{n' >= 1} cos(t [eps_{n+n'} - eps_{n-n'}] + 2 n' k)
//! ```
//!
//! On a half-integer row `n'` runs over half-integers and the constant term is
//! absent. Internally `d = 2 n'`, so a row `n_twice` uses the `d` of matching
//! parity.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dynamics::spectrum::SpectrumModel;
use crate::error::Result;
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::C64;

/// Cosine terms `(d, t (eps_b - eps_a))` of row `n_twice` for `1 <= d <= d_max`,
/// where `a = (n_twice - d)/2` and `b = (n_twice + d)/2`.
pub fn kernel_terms(spectrum: &SpectrumModel, n_twice: i64, t: f64, d_max: usize) -> Result<Vec<(i64, f64)>> {
    let first = if n_twice.rem_euclid(2) == 0 { 2 } else { 1 };
    let mut out = Vec::with_capacity(d_max / 2 + 1);
    let mut d = first;
    while d <= d_max as i64 {
        let a = (n_twice - d) / 2;
        let b = (n_twice + d) / 2;
        let phase = t * (spectrum.energy_checked(b)? - spectrum.energy_checked(a)?);
        out.push((d, phase));
        d += 2;
    }
    Ok(out)
}

fn constant_term(n_twice: i64) -> f64 {
    if n_twice.rem_euclid(2) == 0 {
        1.0 / (2.0 * PI)
    } else {
        0.0
    }
}

/// Evaluates a kernel row from precomputed terms.
pub fn kernel_from_terms(n_twice: i64, terms: &[(i64, f64)], k: f64) -> f64 {
    constant_term(n_twice) + terms.iter().map(|&(d, ph)| (ph + d as f64 * k).cos()).sum::<f64>() / PI
}

/// `K(n, k; t)` truncated at `|n'| <= n_prime`.
pub fn kernel_value(spectrum: &SpectrumModel, n_twice: i64, k: f64, t: f64, n_prime: usize) -> Result<f64> {
    let terms = kernel_terms(spectrum, n_twice, t, 2 * n_prime)?;
    Ok(kernel_from_terms(n_twice, &terms, k))
}

/// The part of the kernel sum with `d = 2 n'` in `d_range` (the constant
/// term is included when `0` is in range).
pub fn kernel_partial_sum(
    spectrum: &SpectrumModel,
    n_twice: i64,
    k: f64,
    t: f64,
    d_range: RangeInclusive<usize>,
) -> Result<f64> {
    let terms = kernel_terms(spectrum, n_twice, t, *d_range.end())?;
    let lo = *d_range.start() as i64;
    let c = if lo == 0 { constant_term(n_twice) } else { 0.0 };
    Ok(c + terms.iter().filter(|(d, _)| *d >= lo).map(|&(d, ph)| (ph + d as f64 * k).cos()).sum::<f64>() / PI)
}

/// Samples of one kernel row on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagatorKernel {
    pub n_twice: i64,
    pub t: f64,
    pub n_prime: usize,
    pub grid: QuasiMomentumGrid,
    pub values: Vec<f64>,
}

impl PropagatorKernel {
    pub fn sample(spectrum: &SpectrumModel, n_twice: i64, grid: QuasiMomentumGrid, t: f64, n_prime: usize) -> Result<Self> {
        let terms = kernel_terms(spectrum, n_twice, t, 2 * n_prime)?;
        let values = (0..grid.count()).map(|j| kernel_from_terms(n_twice, &terms, grid.k(j))).collect();
        Ok(Self { n_twice, t, n_prime, grid, values })
    }

    /// `int_0^{2 pi} K dk` by the trapezoid rule.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.full_period_weight()
    }
}

/// Dense `W^(n, k)` restricted to the integer window `lo ..= hi`, with
/// Heisenberg phases `exp(i t (eps_a - eps_b))` on `|a><b|`.
fn wigner_operator(
    spectrum: Option<(&SpectrumModel, f64)>,
    n_twice: i64,
    k: f64,
    lo: i64,
    hi: i64,
) -> Result<DMatrix<C64>> {
    let dim = (hi - lo + 1) as usize;
    let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for a in lo..=hi {
        let b = n_twice - a;
        if b < lo || b > hi {
            continue;
        }
        let mut phase = -k * (b - a) as f64;
        if let Some((s, t)) = spectrum {
            phase += t * (s.energy_checked(a)? - s.energy_checked(b)?);
        }
        m[((a - lo) as usize, (b - lo) as usize)] = C64::from_polar(1.0 / (2.0 * PI), phase);
    }
    Ok(m)
}

/// `|2 pi Tr[W^(n', k') W^(n, k; t)] - K(n, k - k'; t) delta_{n n'}|`, both
/// sides truncated at `|n'| <= n_prime` around row `n`.
pub fn kernel_trace_identity_check(
    spectrum: &SpectrumModel,
    n_twice: i64,
    n2_twice: i64,
    k: f64,
    k2: f64,
    t: f64,
    n_prime: usize,
) -> Result<f64> {
    let reach = 2 * n_prime as i64;
    let lo = (n_twice - reach).div_euclid(2) + (n_twice - reach).rem_euclid(2);
    let hi = (n_twice + reach).div_euclid(2);
    let evolved = wigner_operator(Some((spectrum, t)), n_twice, k, lo, hi)?;
    let probe = wigner_operator(None, n2_twice, k2, lo, hi)?;
    let lhs = (probe * evolved).trace() * (2.0 * PI);
    let rhs = if n_twice == n2_twice { kernel_value(spectrum, n_twice, k - k2, t, n_prime)? } else { 0.0 };
    Ok((lhs - C64::new(rhs, 0.0)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jc() -> SpectrumModel {
        SpectrumModel::Jc { omega: 1.0, delta: 0.5, g: 1.0 }
    }

    #[test]
    fn normalisation_and_reality() {
        let g = QuasiMomentumGrid::full(128).unwrap();
        for n_twice in [-7, 0, 6, 11] {
            let k = PropagatorKernel::sample(&jc(), n_twice, g, 1.7, 20).unwrap();
            let want = if n_twice % 2 == 0 { 1.0 } else { 0.0 };
            assert!((k.integral() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_spectrum_is_a_drift() {
        let s = SpectrumModel::Linear { omega: 0.8, offset: 0.3 };
        let t = 2.3;
        for &k in &[0.0, 0.9, 4.0] {
            let moving = kernel_value(&s, 4, k, t, 10).unwrap();
            let still = kernel_value(&s, 4, k + 0.8 * t, 0.0, 10).unwrap();
            assert!((moving - still).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_sums_add_up() {
        let (n2, k, t) = (6, 0.4, 3.0);
        let full = kernel_value(&jc(), n2, k, t, 12).unwrap();
        let lo = kernel_partial_sum(&jc(), n2, k, t, 0..=10).unwrap();
        let hi = kernel_partial_sum(&jc(), n2, k, t, 11..=24).unwrap();
        assert!((full - lo - hi).abs() < 1e-13);
    }

    #[test]
    fn trace_identity() {
        for &(n, n2) in &[(6, 6), (3, 3), (6, 4), (5, 6)] {
            let r = kernel_trace_identity_check(&jc(), n, n2, 0.8, 2.1, 0.7, 9).unwrap();
            assert!(r < 1e-12, "n={n} n'={n2} r={r}");
        }
        // at t = 0 both sides are the Dirichlet comb
        let r = kernel_trace_identity_check(&jc(), 0, 0, 0.3, 0.3, 0.0, 7).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn undefined_spectrum_is_reported() {
        let s = SpectrumModel::Custom { n_min: 0, epsilon: vec![0.0; 5] };
        assert!(kernel_value(&s, 4, 0.0, 1.0, 2).is_ok());
        assert!(kernel_value(&s, 4, 0.0, 1.0, 3).is_err());
    }
}
