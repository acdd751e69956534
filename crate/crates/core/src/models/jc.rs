use serde::{Deserialize, Serialize};

use crate::dynamics::spectrum::{jc_energy, SpectrumModel};
use crate::error::{Error, Result};
use crate::models::dressed::DressedMap;

/// `H = omega (a^dagger a + sigma_+ sigma_-) + delta sigma_+ sigma_- + g (sigma_+ a + sigma_- a^dagger)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JcParams {
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
}

impl JcParams {
    pub fn new(omega: f64, delta: f64, g: f64) -> Result<Self> {
        let p = Self { omega, delta, g };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.delta.is_finite() && self.g.is_finite()) {
            return Err(Error::InvalidParameter("JC parameters must be finite".into()));
        }
        if self.g == 0.0 {
            return Err(Error::InvalidParameter("dressed states need g != 0".into()));
        }
        Ok(())
    }

    pub fn energy(&self, n: i64) -> f64 {
        jc_energy(self.omega, self.delta, self.g, n)
    }

    /// Mixing angle of `|n> = cos(theta) |m-1,+> + sin(theta) |m,->`, `m = |n|`.
    ///
    /// `tan(theta) = (eps_n - m omega - delta) / (g sqrt m)` makes `|n>` an
    /// eigenvector of the `{|m-1,+>, |m,->}` block for any detuning; at
    /// `delta = 0` it is `arctan(sgn n) = +-pi/4`.
    pub fn mixing_angle(&self, n: i64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let m = n.unsigned_abs() as f64;
        ((self.energy(n) - m * self.omega - self.delta) / (self.g * m.sqrt())).atan()
    }
}

pub fn jc_spectrum(p: &JcParams) -> SpectrumModel {
    SpectrumModel::Jc { omega: p.omega, delta: p.delta, g: p.g }
}

pub fn jc_dressed_map(p: &JcParams) -> Result<DressedMap> {
    p.validate()?;
    Ok(DressedMap::Jc(*p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Matrix2, SymmetricEigen};

    #[test]
    fn resonant_angles_are_quarter_turns() {
        let p = JcParams::new(1.0, 0.0, 1.0).unwrap();
        for n in 1..6 {
            assert!((p.mixing_angle(n) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
            assert!((p.mixing_angle(-n) + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        }
        assert!(JcParams::new(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn dressed_states_diagonalise_the_block() {
        let p = JcParams::new(1.0, 0.7, 0.4).unwrap();
        for m in 1..8 {
            let s = (m as f64).sqrt() * p.g;
            let block = Matrix2::new(p.omega * m as f64 + p.delta, s, s, p.omega * m as f64);
            let eig = SymmetricEigen::new(block);
            let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert!((ev[0] - p.energy(-m)).abs() < 1e-12);
            assert!((ev[1] - p.energy(m)).abs() < 1e-12);
            for n in [m, -m] {
                let th = p.mixing_angle(n);
                let v = nalgebra::Vector2::new(th.cos(), th.sin());
                let r = block * v - v * p.energy(n);
                assert!(r.norm() < 1e-12, "m={m} n={n}");
            }
        }
    }
}
