//! Literal evaluations of the defining sums. Nothing here calls into the fast
//! transform or propagation code.

use std::f64::consts::PI;

use crate::dynamics::spectrum::SpectrumModel;
use crate::error::Result;
use crate::phase_space::lattice::{DensityWindow, LatticeState};
use crate::C64;

/// `psi_n(t) = exp(-i eps_n t) psi_n(0)`.
pub fn eigenphase_evolve(psi0: &LatticeState, spectrum: &SpectrumModel, t: f64) -> Result<LatticeState> {
    let mut amps = Vec::with_capacity(psi0.len());
    for (n, a) in psi0.iter() {
        let e = spectrum.energy_checked(n)?;
        amps.push(a * C64::from_polar(1.0, -e * t));
    }
    Ok(LatticeState::new_unnormalized(psi0.n_min(), amps))
}

/// `1/(2 pi) sum_{n'} psi*_{n-n'} psi_{n+n'} exp(-2 i k n')` by a plain loop
/// over `n'` (half-integer when `n` is). Returns the complex sum.
pub fn naive_wigner(psi: &LatticeState, n_twice: i64, k: f64) -> C64 {
    let span = 2 * (psi.n_max() - psi.n_min()) + 2;
    let mut acc = C64::new(0.0, 0.0);
    // m is 2n', so a = n - n' and b = n + n' are integers only when n_twice + m is even
    for m in -span..=span {
        if (n_twice + m).rem_euclid(2) != 0 {
            continue;
        }
        let a = (n_twice - m) / 2;
        let b = (n_twice + m) / 2;
        acc += psi.amp(a).conj() * psi.amp(b) * C64::from_polar(1.0, -k * m as f64);
    }
    acc / (2.0 * PI)
}

/// `1/(2 pi) sum_{n'} <n+n'|rho|n-n'> exp(-2 i k n')`.
pub fn naive_wigner_density(rho: &DensityWindow, n_twice: i64, k: f64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for a in rho.n_min()..=rho.n_max() {
        for b in rho.n_min()..=rho.n_max() {
            if a + b == n_twice {
                acc += rho.get(b, a) * C64::from_polar(1.0, -k * (b - a) as f64);
            }
        }
    }
    acc / (2.0 * PI)
}

/// `sum_mu psi_mu exp(-i k mu)`.
pub fn direct_transform(psi: &LatticeState, k: f64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (mu, a) in psi.iter() {
        acc += a * C64::new((k * mu as f64).cos(), -(k * mu as f64).sin());
    }
    acc
}
