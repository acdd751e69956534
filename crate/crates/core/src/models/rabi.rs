//! The Rabi model `H = omega a^dagger a + Omega sigma_+ sigma_- + g (sigma_+ + sigma_-)(a^dagger + a)`
//! on a truncated Fock space, evolved exactly through a dense eigendecomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::dressed::{bare_to_dressed, dressed_to_bare, DressedMap};
use crate::models::hybrid::{bare_index, Atom, HybridState, TAIL_LEVELS};
use crate::models::jc::JcParams;
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::phase_space::lattice::{LatticeMode, LatticeState};
use crate::phase_space::wigner::wigner_from_state;
use crate::C64;

/// Leakage into the top Fock levels tolerated along an evolution.
pub const LEAKAGE_TOLERANCE: f64 = 1e-8;

/// Truncation growth factor when the certificate fails.
const GROWTH: f64 = 1.5;

/// Upper bound on the truncation the certified evolution will try.
pub const MAX_N_MAX: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RabiParams {
    pub omega: f64,
    /// Atomic frequency `Omega`.
    pub big_omega: f64,
    pub g: f64,
}

impl RabiParams {
    /// `Omega = omega + delta`, matching the JC atomic term.
    pub fn from_jc(p: &JcParams) -> Self {
        Self { omega: p.omega, big_omega: p.omega + p.delta, g: p.g }
    }
}

/// Dense real symmetric `H` in bare-index order.
pub fn rabi_hamiltonian(p: &RabiParams, n_max: usize) -> DMatrix<f64> {
    let dim = 2 * (n_max + 1);
    let mut h = DMatrix::zeros(dim, dim);
    for n in 0..=n_max {
        h[(bare_index(n, Atom::Ground), bare_index(n, Atom::Ground))] = p.omega * n as f64;
        h[(bare_index(n, Atom::Excited), bare_index(n, Atom::Excited))] = p.omega * n as f64 + p.big_omega;
        if n < n_max {
            // (a^dagger + a) links n and n+1; sigma_x flips the atom
            let c = p.g * ((n + 1) as f64).sqrt();
            for (s1, s2) in [(Atom::Ground, Atom::Excited), (Atom::Excited, Atom::Ground)] {
                let i = bare_index(n, s1);
                let j = bare_index(n + 1, s2);
                h[(i, j)] = c;
                h[(j, i)] = c;
            }
        }
    }
    h
}

/// Eigendecomposition of `H` reused for any number of evolution times.
pub struct RabiEvolver {
    n_max: usize,
    eig: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl RabiEvolver {
    pub fn new(p: &RabiParams, n_max: usize) -> Self {
        Self { n_max, eig: SymmetricEigen::new(rabi_hamiltonian(p, n_max)) }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `exp(-i H t) h` in the truncated space.
    pub fn evolve(&self, h: &HybridState, t: f64) -> Result<HybridState> {
        let h = if h.n_max() < self.n_max { h.extended(self.n_max)? } else { h.clone() };
        if h.n_max() != self.n_max {
            return Err(Error::Dimension { expected: 2 * (self.n_max + 1), found: h.dim() });
        }
        let v = &self.eig.eigenvectors;
        let re = DVector::from_iterator(h.dim(), h.amplitudes().iter().map(|a| a.re));
        let im = DVector::from_iterator(h.dim(), h.amplitudes().iter().map(|a| a.im));
        let (cr, ci) = (v.tr_mul(&re), v.tr_mul(&im));
        let mut pr = DVector::zeros(h.dim());
        let mut pi = DVector::zeros(h.dim());
        for (i, &lam) in self.eig.eigenvalues.iter().enumerate() {
            let (s, c) = (-lam * t).sin_cos();
            // (cr + i ci) (c + i s)
            pr[i] = cr[i] * c - ci[i] * s;
            pi[i] = cr[i] * s + ci[i] * c;
        }
        let (or, oi) = (v * pr, v * pi);
        let amps = or.iter().zip(oi.iter()).map(|(&r, &i)| C64::new(r, i)).collect();
        Ok(HybridState::from_raw(self.n_max, amps))
    }
}

/// Mass on the top [`TAIL_LEVELS`] photon numbers.
pub fn top_level_leakage(h: &HybridState) -> f64 {
    let first = (h.n_max() + 1).saturating_sub(TAIL_LEVELS);
    (first..=h.n_max()).map(|n| h.get(n, Atom::Ground).norm_sqr() + h.get(n, Atom::Excited).norm_sqr()).sum()
}

/// Evolution with a truncation certificate: starting from `n_max`, the
/// truncation grows by half until every evolved state keeps less than
/// [`LEAKAGE_TOLERANCE`] in its top levels.
pub struct CertifiedEvolution {
    pub n_max: usize,
    pub states: Vec<HybridState>,
    pub max_leakage: f64,
}

pub fn rabi_evolve(p: &RabiParams, h0: &HybridState, times: &[f64], n_max: usize) -> Result<CertifiedEvolution> {
    let mut n_max = n_max.max(h0.n_max());
    loop {
        let ev = RabiEvolver::new(p, n_max);
        let h = h0.extended(n_max)?;
        let mut leak: f64 = top_level_leakage(&h);
        let mut states = Vec::with_capacity(times.len());
        for &t in times {
            let s = ev.evolve(&h, t)?;
            leak = leak.max(top_level_leakage(&s));
            states.push(s);
        }
        if leak < LEAKAGE_TOLERANCE {
            return Ok(CertifiedEvolution { n_max, states, max_leakage: leak });
        }
        let next = ((n_max as f64) * GROWTH).ceil() as usize;
        if next > MAX_N_MAX {
            return Err(Error::Truncation { tail: leak, tolerance: LEAKAGE_TOLERANCE });
        }
        log::debug!("rabi truncation {n_max} leaks {leak:.3e}; retrying with {next}");
        n_max = next;
    }
}

/// Result of evolving a JC dressed state under the Rabi Hamiltonian.
pub struct RabiPortrait {
    pub n_max: usize,
    pub states: Vec<LatticeState>,
    pub fields: Vec<WignerField>,
}

/// Starts from the JC dressed state `|n0>`, evolves under `rabi`, and maps
/// each snapshot back to the JC lattice.
pub fn rabi_wigner_portrait(
    jc: &JcParams,
    rabi: &RabiParams,
    n0: i64,
    times: &[f64],
    grid: QuasiMomentumGrid,
    mode: LatticeMode,
) -> Result<RabiPortrait> {
    let map = DressedMap::Jc(*jc);
    let start = n0.unsigned_abs() as usize + 2 * TAIL_LEVELS + 40;
    let h0 = dressed_to_bare(&LatticeState::basis(n0), &map, start)?;
    let ev = rabi_evolve(rabi, &h0, times, start)?;
    let mut states = Vec::with_capacity(times.len());
    let mut fields = Vec::with_capacity(times.len());
    for h in &ev.states {
        let psi = bare_to_dressed(h, &map)?.trimmed(1e-13);
        let psi = LatticeState::normalize(psi.n_min(), psi.amplitudes().to_vec())?;
        fields.push(wigner_from_state(&psi, grid, mode)?);
        states.push(psi);
    }
    Ok(RabiPortrait { n_max: ev.n_max, states, fields })
}

/// Lattice position marginal `|psi_n|^2`.
pub fn lattice_marginal(psi: &LatticeState) -> Vec<(i64, f64)> {
    psi.iter().map(|(n, a)| (n, a.norm_sqr())).collect()
}

/// Mass of `|psi_n|^2` with `|n - center| <= half_width`.
pub fn band_mass(psi: &LatticeState, center: i64, half_width: i64) -> f64 {
    psi.iter().filter(|(n, _)| (n - center).abs() <= half_width).map(|(_, a)| a.norm_sqr()).sum::<f64>() / psi.norm_sqr()
}

/// Mean and variance of the lattice marginal.
pub fn lattice_moments(psi: &LatticeState) -> (f64, f64) {
    let norm = psi.norm_sqr();
    let mean = psi.iter().map(|(n, a)| n as f64 * a.norm_sqr()).sum::<f64>() / norm;
    let var = psi.iter().map(|(n, a)| (n as f64 - mean).powi(2) * a.norm_sqr()).sum::<f64>() / norm;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::hybrid::excitation_moments;

    #[test]
    fn hamiltonian_is_symmetric_with_expected_couplings() {
        let p = RabiParams { omega: 1.0, big_omega: 1.3, g: 0.2 };
        let h = rabi_hamiltonian(&p, 6);
        assert!((h.clone() - h.transpose()).abs().max() < 1e-15);
        // <1,+|H|0,-> from sigma_+ a^dagger (counter-rotating)
        assert!((h[(bare_index(1, Atom::Excited), bare_index(0, Atom::Ground))] - 0.2).abs() < 1e-15);
        // <0,+|H|1,-> from sigma_+ a
        assert!((h[(bare_index(0, Atom::Excited), bare_index(1, Atom::Ground))] - 0.2).abs() < 1e-15);
        assert_eq!(h[(bare_index(2, Atom::Excited), bare_index(2, Atom::Excited))], 3.3);
    }

    #[test]
    fn uncoupled_states_only_pick_up_phases() {
        let p = RabiParams { omega: 1.0, big_omega: 1.7, g: 0.0 };
        let h0 = HybridState::basis(3, Atom::Excited, 20).unwrap();
        let ev = RabiEvolver::new(&p, 20);
        let t = 2.3;
        let h = ev.evolve(&h0, t).unwrap();
        let want = C64::from_polar(1.0, -(3.0 + 1.7) * t);
        assert!((h.get(3, Atom::Excited) - want).norm() < 1e-12);
        assert!((h.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn counter_rotating_terms_break_excitation_number() {
        let jc = JcParams::new(1.0, 0.0, 1.0).unwrap();
        let map = DressedMap::Jc(jc);
        let h0 = dressed_to_bare(&LatticeState::basis(5), &map, 60).unwrap();
        assert!(excitation_moments(&h0).1 < 1e-20);
        let ev = rabi_evolve(&RabiParams::from_jc(&jc), &h0, &[0.5], 60).unwrap();
        assert!(excitation_moments(&ev.states[0]).1 > 1e-3);
        assert!((ev.states[0].norm_sqr() - 1.0).abs() < 1e-12);
    }
}
