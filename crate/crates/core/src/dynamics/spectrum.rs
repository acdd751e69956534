use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Hamiltonian that is diagonal in the lattice basis, `H |n> = eps_n |n>`.
///
/// Serialises with a `model` tag, e.g. `{"model": "custom", "epsilon": [..]}`
/// or `{"model": "jc", "omega": 1, "delta": 0.5, "g": 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SpectrumModel {
    /// `eps_n = omega n + offset`
    Linear {
        omega: f64,
        #[serde(default)]
        offset: f64,
    },
    /// Tabulated energies for `n_min ..= n_min + len - 1`.
    Custom {
        #[serde(default)]
        n_min: i64,
        epsilon: Vec<f64>,
    },
    /// Jaynes-Cummings polariton ladder.
    Jc { omega: f64, delta: f64, g: f64 },
    /// `eps_n = omega |n| + g n`
    BuckSukumar { omega: f64, g: f64 },
    /// Far-detuned Jaynes-Cummings.
    Dispersive { omega: f64, delta: f64, g: f64 },
}

pub(crate) fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `omega |n| + delta/2 + sgn(n) sqrt(delta^2/4 + g^2 |n|)`, zero at `n = 0`.
pub fn jc_energy(omega: f64, delta: f64, g: f64, n: i64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let m = n.unsigned_abs() as f64;
    omega * m + 0.5 * delta + sgn(n as f64) * (0.25 * delta * delta + g * g * m).sqrt()
}

/// Dispersive ladder: `omega |n| + (g^2/delta) n` for `n > 0`, shifted by
/// `omega' = omega + delta - g^2/delta` for `n < 0`.
pub fn dispersive_energy(omega: f64, delta: f64, g: f64, n: i64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let chi = g * g / delta;
    let omega_p = omega + delta - chi;
    let s = sgn(n as f64);
    omega * n.unsigned_abs() as f64 + 0.5 * (1.0 - s) * omega_p + chi * n as f64
}

impl SpectrumModel {
    /// Rejects parameter sets for which the spectrum is not defined.
    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
            }
        };
        match self {
            SpectrumModel::Linear { omega, offset } => {
                finite("omega", *omega)?;
                finite("offset", *offset)
            }
            SpectrumModel::Custom { epsilon, .. } => {
                if epsilon.is_empty() {
                    return Err(Error::InvalidParameter("custom spectrum has no energies".into()));
                }
                epsilon.iter().try_for_each(|e| finite("epsilon", *e))
            }
            SpectrumModel::Jc { omega, delta, g } => {
                finite("omega", *omega)?;
                finite("delta", *delta)?;
                finite("g", *g)
            }
            SpectrumModel::BuckSukumar { omega, g } => {
                finite("omega", *omega)?;
                finite("g", *g)
            }
            SpectrumModel::Dispersive { omega, delta, g } => {
                finite("omega", *omega)?;
                finite("g", *g)?;
                if *delta == 0.0 || !delta.is_finite() {
                    return Err(Error::InvalidParameter("dispersive model needs a finite nonzero detuning".into()));
                }
                Ok(())
            }
        }
    }

    /// `eps_n`, or `None` where a tabulated spectrum has no entry.
    pub fn energy(&self, n: i64) -> Option<f64> {
        match self {
            SpectrumModel::Linear { omega, offset } => Some(omega * n as f64 + offset),
            SpectrumModel::Custom { n_min, epsilon } => {
                let i = n - n_min;
                (i >= 0 && (i as usize) < epsilon.len()).then(|| epsilon[i as usize])
            }
            SpectrumModel::Jc { omega, delta, g } => Some(jc_energy(*omega, *delta, *g, n)),
            SpectrumModel::BuckSukumar { omega, g } => Some(omega * n.unsigned_abs() as f64 + g * n as f64),
            SpectrumModel::Dispersive { omega, delta, g } => Some(dispersive_energy(*omega, *delta, *g, n)),
        }
    }

    pub fn energy_checked(&self, n: i64) -> Result<f64> {
        self.energy(n).ok_or(Error::SpectrumUndefined { n })
    }

    /// Energies on `lo ..= hi`.
    pub fn energies(&self, lo: i64, hi: i64) -> Result<Vec<f64>> {
        (lo..=hi).map(|n| self.energy_checked(n)).collect()
    }

    /// The closed-form energy read as a function of a real index, used for
    /// stationary-phase estimates. Tabulated spectra are interpolated
    /// linearly.
    pub fn energy_continuous(&self, x: f64) -> Option<f64> {
        match self {
            SpectrumModel::Linear { omega, offset } => Some(omega * x + offset),
            SpectrumModel::Custom { .. } => {
                let lo = x.floor();
                let f = x - lo;
                let a = self.energy(lo as i64)?;
                if f == 0.0 {
                    return Some(a);
                }
                let b = self.energy(lo as i64 + 1)?;
                Some(a + f * (b - a))
            }
            SpectrumModel::Jc { omega, delta, g } => {
                if x == 0.0 {
                    return Some(0.0);
                }
                Some(omega * x.abs() + 0.5 * delta + sgn(x) * (0.25 * delta * delta + g * g * x.abs()).sqrt())
            }
            SpectrumModel::BuckSukumar { omega, g } => Some(omega * x.abs() + g * x),
            SpectrumModel::Dispersive { omega, delta, g } => {
                if x == 0.0 {
                    return Some(0.0);
                }
                let chi = g * g / delta;
                let omega_p = omega + delta - chi;
                Some(omega * x.abs() + 0.5 * (1.0 - sgn(x)) * omega_p + chi * x)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpectrumModel::Linear { .. } => "linear",
            SpectrumModel::Custom { .. } => "custom",
            SpectrumModel::Jc { .. } => "jc",
            SpectrumModel::BuckSukumar { .. } => "buck_sukumar",
            SpectrumModel::Dispersive { .. } => "dispersive",
        }
    }
}
