use serde::{Deserialize, Serialize};

use crate::phase_space::lattice::LatticeState;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn admits(self, n: i64) -> bool {
        match self {
            Parity::Even => n.rem_euclid(2) == 0,
            Parity::Odd => n.rem_euclid(2) == 1,
        }
    }
}

/// Unnormalised lattice transform `sum_mu psi_mu exp(-i k mu)`.
pub fn fourier_transform(psi: &LatticeState, k: f64) -> C64 {
    psi.iter().map(|(n, a)| a * C64::from_polar(1.0, -k * n as f64)).sum()
}

/// The same sum restricted to even or odd sites. Even and odd parts recombine
/// as `(psi~_k +- psi~_{k + pi}) / 2`.
pub fn parity_fourier(psi: &LatticeState, parity: Parity, k: f64) -> C64 {
    psi.iter()
        .filter(|(n, _)| parity.admits(*n))
        .map(|(n, a)| a * C64::from_polar(1.0, -k * n as f64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_sites() {
        let zero = LatticeState::basis(0);
        let one = LatticeState::basis(1);
        for &k in &[0.0, 0.4, 2.9] {
            assert_eq!(parity_fourier(&zero, Parity::Odd, k), C64::new(0.0, 0.0));
            assert!((parity_fourier(&one, Parity::Odd, k) - C64::from_polar(1.0, -k)).norm() < 1e-15);
            assert!((fourier_transform(&zero, k) - C64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn parity_split_recombines() {
        let psi = LatticeState::normalize(-3, (0..7).map(|i| C64::new(i as f64 - 2.5, 0.3 * i as f64)).collect()).unwrap();
        let k = 1.234;
        let e = parity_fourier(&psi, Parity::Even, k);
        let o = parity_fourier(&psi, Parity::Odd, k);
        let full = fourier_transform(&psi, k);
        let shifted = fourier_transform(&psi, k + PI);
        assert!((e - (full + shifted) / 2.0).norm() < 1e-13);
        assert!((o - (full - shifted) / 2.0).norm() < 1e-13);
    }
}
