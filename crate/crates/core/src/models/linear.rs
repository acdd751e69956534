//! Models with piecewise linear spectra: Buck-Sukumar and the far-detuned
//! (dispersive) Jaynes-Cummings model. Their kernels are periodic in time on
//! each linear branch.

use std::f64::consts::PI;

use crate::dynamics::spectrum::SpectrumModel;
use crate::error::{Error, Result};
use crate::models::dressed::DressedMap;

/// `eps_n = omega |n| + g n`. Cross-branch degeneracies appear for `g >= omega`;
/// that regime is accepted but not validated.
pub fn bs_spectrum(omega: f64, g: f64) -> Result<(SpectrumModel, DressedMap)> {
    if g == 0.0 {
        return Err(Error::InvalidParameter("Buck-Sukumar map needs g != 0".into()));
    }
    if g.abs() >= omega {
        log::warn!("Buck-Sukumar with |g| >= omega: spectrum is not injective across branches");
    }
    Ok((SpectrumModel::BuckSukumar { omega, g }, DressedMap::BuckSukumar { omega, g }))
}

/// Far-detuned JC with `omega' = omega + delta - g^2/delta`.
pub fn dispersive_spectrum(omega: f64, delta: f64, g: f64) -> Result<(SpectrumModel, DressedMap)> {
    let s = SpectrumModel::Dispersive { omega, delta, g };
    s.validate()?;
    Ok((s, DressedMap::Dispersive { omega, delta, g }))
}

/// Period of the kernel restricted to `1 <= n' < n` on the positive branch
/// (`n > 0`), where `eps_{n+n'} - eps_{n-n'}` is linear in `n'`.
pub fn positive_branch_period(spectrum: &SpectrumModel) -> Option<f64> {
    let slope = match *spectrum {
        SpectrumModel::BuckSukumar { omega, g } => omega + g,
        SpectrumModel::Dispersive { omega, delta, g } => omega + g * g / delta,
        SpectrumModel::Linear { omega, .. } => omega,
        _ => return None,
    };
    (slope != 0.0).then(|| PI / slope.abs())
}

/// Same on the negative branch (`n < 0`, `1 <= n' < |n|`).
pub fn negative_branch_period(spectrum: &SpectrumModel) -> Option<f64> {
    let slope = match *spectrum {
        SpectrumModel::BuckSukumar { omega, g } => g - omega,
        SpectrumModel::Dispersive { omega, delta, g } => g * g / delta - omega,
        SpectrumModel::Linear { omega, .. } => omega,
        _ => return None,
    };
    (slope != 0.0).then(|| PI / slope.abs())
}
