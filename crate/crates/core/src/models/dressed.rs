//! Basis change between bare states `|n_ph, s>` and lattice (dressed) states
//! `|n>`.
//!
//! Every model here pairs `|m-1,+>` with `|m,->` at `|n| = m`; `|0> = |0,->`.

use crate::dynamics::spectrum::SpectrumModel;
use crate::error::{Error, Result};
use crate::models::hybrid::{Atom, HybridState, TAIL_TOLERANCE};
use crate::models::jc::JcParams;
use crate::phase_space::lattice::{LatticeState, BOUNDARY_TOLERANCE};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DressedMap {
    Jc(JcParams),
    /// Rotation by `phi_n = arctan((eps_n - |n| omega)/(g |n|))`.
    BuckSukumar { omega: f64, g: f64 },
    /// `|n> = |n,->` for `n >= 0` and `|n> = |-n,+>` for `n < 0`.
    Dispersive { omega: f64, delta: f64, g: f64 },
}

impl DressedMap {
    pub fn spectrum(&self) -> SpectrumModel {
        match *self {
            DressedMap::Jc(p) => SpectrumModel::Jc { omega: p.omega, delta: p.delta, g: p.g },
            DressedMap::BuckSukumar { omega, g } => SpectrumModel::BuckSukumar { omega, g },
            DressedMap::Dispersive { omega, delta, g } => SpectrumModel::Dispersive { omega, delta, g },
        }
    }

    /// Rotation angle of the `{|m-1,+>, |m,->}` pair, `None` for relabelling maps.
    pub fn mixing_angle(&self, n: i64) -> Option<f64> {
        match *self {
            DressedMap::Jc(p) => Some(p.mixing_angle(n)),
            DressedMap::BuckSukumar { omega, g } => {
                if n == 0 {
                    return Some(0.0);
                }
                let m = n.unsigned_abs() as f64;
                let eps = omega * m + g * n as f64;
                Some(((eps - m * omega) / (g * m)).atan())
            }
            DressedMap::Dispersive { .. } => None,
        }
    }

    /// Bare components `(n_ph, atom, coefficient)` of `|n>`.
    pub fn column(&self, n: i64) -> Vec<(usize, Atom, f64)> {
        if n == 0 {
            return vec![(0, Atom::Ground, 1.0)];
        }
        let m = n.unsigned_abs() as usize;
        match self.mixing_angle(n) {
            Some(th) => vec![(m - 1, Atom::Excited, th.cos()), (m, Atom::Ground, th.sin())],
            None if n > 0 => vec![(m, Atom::Ground, 1.0)],
            None => vec![(m, Atom::Excited, 1.0)],
        }
    }

    /// Largest `|n|` needed to represent a state truncated at `n_max` photons.
    pub fn lattice_reach(&self, n_max: usize) -> i64 {
        match self {
            DressedMap::Dispersive { .. } => n_max as i64,
            _ => n_max as i64 + 1,
        }
    }
}

/// `psi_n = <n|h>` on `-reach ..= reach`. The map is orthogonal, so norms and
/// inner products carry over exactly.
pub fn bare_to_dressed(h: &HybridState, map: &DressedMap) -> Result<LatticeState> {
    h.certify(TAIL_TOLERANCE)?;
    if let DressedMap::Dispersive { .. } = map {
        let w = h.get(0, Atom::Excited).norm();
        if w > BOUNDARY_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "bare |0,+> (amplitude {w:.3e}) has no dressed label in the dispersive model"
            )));
        }
    }
    let reach = map.lattice_reach(h.n_max());
    let amps = (-reach..=reach)
        .map(|n| map.column(n).into_iter().map(|(nph, s, c)| h.get(nph, s) * c).sum::<C64>())
        .collect();
    Ok(LatticeState::new_unnormalized(-reach, amps))
}

/// Inverse of [`bare_to_dressed`]. Bare components above `n_max` photons must
/// carry less than the tail tolerance.
pub fn dressed_to_bare(psi: &LatticeState, map: &DressedMap, n_max: usize) -> Result<HybridState> {
    let mut h = HybridState::zeros(n_max);
    let mut dropped = 0.0;
    let mut overflow = std::collections::BTreeMap::new();
    for (n, a) in psi.iter() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        for (nph, s, c) in map.column(n) {
            if nph > n_max {
                *overflow.entry((nph, s == Atom::Excited)).or_insert(C64::new(0.0, 0.0)) += a * c;
            } else {
                let v = h.get(nph, s) + a * c;
                h.set(nph, s, v);
            }
        }
    }
    for v in overflow.values() {
        dropped += v.norm_sqr();
    }
    if dropped > TAIL_TOLERANCE {
        return Err(Error::Truncation { tail: dropped, tolerance: TAIL_TOLERANCE });
    }
    h.certify(TAIL_TOLERANCE)?;
    Ok(h)
}

/// Excited and ground populations of a lattice state, with no truncation
/// certificate; used for observables along an evolution.
pub fn bare_populations(psi: &LatticeState, map: &DressedMap) -> (f64, f64) {
    let top = psi.n_min().unsigned_abs().max(psi.n_max().unsigned_abs()) as usize + 1;
    let mut plus = vec![C64::new(0.0, 0.0); top + 1];
    let mut minus = vec![C64::new(0.0, 0.0); top + 1];
    for (n, a) in psi.iter() {
        for (nph, s, c) in map.column(n) {
            match s {
                Atom::Excited => plus[nph] += a * c,
                Atom::Ground => minus[nph] += a * c,
            }
        }
    }
    let excited = plus.iter().map(|p| p.norm_sqr()).sum();
    let ground = minus.iter().map(|m| m.norm_sqr()).sum();
    (excited, ground)
}
