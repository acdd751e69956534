//! Field coherent states, dressed coherent states and their Wigner functions
//! on the polariton lattice; revival diagnostics.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::spectrum::SpectrumModel;
use crate::error::{Error, Result};
use crate::models::dressed::{bare_populations, DressedMap};
use crate::models::hybrid::{Atom, HybridState, TAIL_TOLERANCE};
use crate::phase_space::field::WignerField;
use crate::phase_space::lattice::LatticeState;
use crate::C64;

/// Photon truncation that holds a coherent state with room to spare:
/// `|alpha|^2 + 10 |alpha| + 20`.
pub fn coherent_n_max(alpha: C64) -> usize {
    let a = alpha.norm();
    (a * a + 10.0 * a + 20.0).ceil() as usize
}

/// Poisson amplitudes `exp(-|alpha|^2/2) alpha^n / sqrt(n!)` for `n = 0 ..= n_max`.
fn poisson_amplitudes(alpha: C64, n_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..=n_max {
        out.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    out
}

/// `sum_n exp(-|alpha|^2/2) alpha^n / sqrt(n!) |n, ->`.
pub fn coherent_bare_state(alpha: C64, n_max: usize) -> Result<HybridState> {
    let mut h = HybridState::zeros(n_max);
    for (n, c) in poisson_amplitudes(alpha, n_max).into_iter().enumerate() {
        h.set(n, Atom::Ground, c);
    }
    h.certify(TAIL_TOLERANCE)?;
    h.normalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Support on `n >= 0`.
    Minus,
    /// Support on `n <= -1`.
    Plus,
}

/// Dressed coherent state `|alpha_->` (Poisson profile on `n >= 0`) or
/// `|alpha_+>`, its mirror on `n <= -1`. The vacuum term belongs to the minus
/// branch only, so the plus branch is renormalised by `1/sqrt(1 - exp(-|alpha|^2))`.
pub fn dressed_coherent(alpha: C64, branch: Branch, n_max: usize) -> Result<LatticeState> {
    let p = poisson_amplitudes(alpha, n_max);
    let tail: f64 = p[n_max.saturating_sub(9).max(1)..].iter().map(|c| c.norm_sqr()).sum();
    if tail > TAIL_TOLERANCE {
        return Err(Error::Truncation { tail, tolerance: TAIL_TOLERANCE });
    }
    match branch {
        Branch::Minus => LatticeState::normalize(0, p),
        Branch::Plus => {
            if alpha.norm() == 0.0 {
                return Err(Error::Degenerate("the plus branch is empty at alpha = 0".into()));
            }
            let amps: Vec<C64> = p[1..].iter().rev().copied().collect();
            LatticeState::normalize(-(n_max as i64), amps)
        }
    }
}

/// Lattice form of `coherent_bare_state` under the resonant JC map:
/// `psi_0 = c_0`, `psi_{+-m} = +-c_m / sqrt 2`.
pub fn coherent_lattice_amplitude(alpha: C64, n: i64) -> C64 {
    let m = n.unsigned_abs();
    let r = alpha.norm();
    let log_mag = -0.5 * r * r + if m == 0 { 0.0 } else { m as f64 * r.ln() - 0.5 * ln_factorial(m) };
    let c = C64::from_polar(log_mag.exp(), alpha.arg() * m as f64);
    match n.signum() {
        0 => c,
        1 => c * std::f64::consts::FRAC_1_SQRT_2,
        _ => -c * std::f64::consts::FRAC_1_SQRT_2,
    }
}

fn ln_factorial(m: u64) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

/// Closed-form Wigner function of the resonant JC image of a field coherent
/// state, summed over `|n'| <= n_prime`:
///
/// ```text
/// W(n,k) = 1/(2 pi) sum_{n'} s w exp(-|alpha|^2 + i[phi (n'_+ - n'_-) - 2 k n']) |alpha|^(n'_+ + n'_-) / sqrt(n'_-! n'_+!)
/// ```
///
/// with `n'_+- = |n +- n'|`, `w = 1/2` when both indices are nonzero (`1/sqrt 2`
/// when one is zero) and `s = -1` when exactly one of `n +- n'` is negative.
pub fn jc_coherent_wigner_closed(alpha: C64, n_twice: i64, k: f64, n_prime: usize) -> f64 {
    let r = alpha.norm();
    let phi = alpha.arg();
    let mut acc = C64::new(0.0, 0.0);
    // d = 2 n' with the parity of the row
    let d_max = 2 * n_prime as i64 + (n_twice.rem_euclid(2));
    let mut d = -d_max;
    while d <= d_max {
        if (n_twice + d).rem_euclid(2) == 0 {
            let a = (n_twice - d) / 2;
            let b = (n_twice + d) / 2;
            let (ma, mb) = (a.unsigned_abs(), b.unsigned_abs());
            let mut log_mag = -r * r - 0.5 * (ln_factorial(ma) + ln_factorial(mb));
            if ma + mb > 0 {
                if r == 0.0 {
                    d += 1;
                    continue;
                }
                log_mag += (ma + mb) as f64 * r.ln();
            }
            let w = [a, b].iter().map(|&x| if x == 0 { 1.0 } else { std::f64::consts::FRAC_1_SQRT_2 }).product::<f64>();
            let s = if (a < 0) != (b < 0) { -1.0 } else { 1.0 };
            let phase = phi * (mb as f64 - ma as f64) - k * d as f64;
            acc += C64::from_polar(s * w * log_mag.exp(), phase);
        }
        d += 1;
    }
    acc.re / (2.0 * PI)
}

/// Local maxima of `max_k |W(n, k)|` over integer rows, tallest first; maxima
/// closer than `min_separation` to a taller one are dropped.
pub fn row_peaks(w: &WignerField, count: usize, min_separation: i64) -> Vec<i64> {
    let profile: Vec<(i64, f64)> = (0..w.rows())
        .filter(|&r| w.n_twice(r).rem_euclid(2) == 0)
        .map(|r| (w.n_twice(r) / 2, w.row(r).iter().fold(0.0f64, |m, v| m.max(v.abs()))))
        .collect();
    let mut cands: Vec<(i64, f64)> = Vec::new();
    for i in 0..profile.len() {
        let left = if i > 0 { profile[i - 1].1 } else { f64::NEG_INFINITY };
        let right = profile.get(i + 1).map_or(f64::NEG_INFINITY, |p| p.1);
        if profile[i].1 >= left && profile[i].1 >= right && profile[i].1 > 0.0 {
            cands.push(profile[i]);
        }
    }
    cands.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let mut out: Vec<i64> = Vec::new();
    for (n, _) in cands {
        if out.iter().all(|&m| (m - n).abs() >= min_separation) {
            out.push(n);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

/// `t_r = 2 pi |alpha| / g`.
pub fn revival_time(alpha: C64, g: f64) -> Result<f64> {
    if g == 0.0 || !g.is_finite() {
        return Err(Error::InvalidParameter("revival time needs a finite nonzero coupling".into()));
    }
    Ok(2.0 * PI * alpha.norm() / g.abs())
}

/// `psi_n(t) = exp(-i eps_n t) psi_n(0)`.
pub fn eigenphase_state(psi: &LatticeState, spectrum: &SpectrumModel, t: f64) -> Result<LatticeState> {
    let amps = psi
        .iter()
        .map(|(n, a)| Ok(a * C64::from_polar(1.0, -spectrum.energy_checked(n)? * t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeState::new_unnormalized(psi.n_min(), amps))
}

/// `|<psi(0)|psi(t)>| = |sum_n |psi_n|^2 exp(-i eps_n t)|`.
pub fn autocorrelation(psi: &LatticeState, spectrum: &SpectrumModel, t: f64) -> Result<f64> {
    let mut acc = C64::new(0.0, 0.0);
    for (n, a) in psi.iter() {
        acc += C64::from_polar(a.norm_sqr(), -spectrum.energy_checked(n)? * t);
    }
    Ok(acc.norm())
}

/// `<sigma_z> = P(+) - P(-)` of a dressed-basis state.
pub fn atomic_inversion(psi: &LatticeState, map: &DressedMap) -> f64 {
    let (e, g) = bare_populations(psi, map);
    (e - g) / (e + g)
}

/// Indices of interior local maxima of a sampled series.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1)).filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1]).collect()
}
