use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::lattice::NORM_TOLERANCE;
use crate::C64;

/// Mass allowed in the top Fock levels of a truncated state.
pub const TAIL_TOLERANCE: f64 = 1e-10;

/// Number of top Fock levels inspected by the truncation certificate.
pub const TAIL_LEVELS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Atom {
    /// `|+>`
    Excited,
    /// `|->`
    Ground,
}

impl Atom {
    fn offset(self) -> usize {
        match self {
            Atom::Ground => 0,
            Atom::Excited => 1,
        }
    }

    /// `sigma_+ sigma_-` eigenvalue.
    pub fn excitation(self) -> usize {
        self.offset()
    }
}

/// Bare index of `|n_ph, s>`: `2 n_ph` for `|->`, `2 n_ph + 1` for `|+>`.
#[inline]
pub fn bare_index(n_ph: usize, atom: Atom) -> usize {
    2 * n_ph + atom.offset()
}

/// Amplitudes on truncated Fock space (photons `0 ..= n_max`) times the atom.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    n_max: usize,
    amps: Vec<C64>,
}

impl HybridState {
    pub fn zeros(n_max: usize) -> Self {
        Self { n_max, amps: vec![C64::new(0.0, 0.0); 2 * (n_max + 1)] }
    }

    /// Amplitudes in bare-index order; must be normalized.
    pub fn new(n_max: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != 2 * (n_max + 1) {
            return Err(Error::Dimension { expected: 2 * (n_max + 1), found: amps.len() });
        }
        let s = Self { n_max, amps };
        let norm_sq = s.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(s)
    }

    pub(crate) fn from_raw(n_max: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 2 * (n_max + 1));
        Self { n_max, amps }
    }

    pub fn basis(n_ph: usize, atom: Atom, n_max: usize) -> Result<Self> {
        if n_ph > n_max {
            return Err(Error::InvalidParameter(format!("photon number {n_ph} exceeds truncation {n_max}")));
        }
        let mut s = Self::zeros(n_max);
        s.amps[bare_index(n_ph, atom)] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn get(&self, n_ph: usize, atom: Atom) -> C64 {
        if n_ph > self.n_max {
            return C64::new(0.0, 0.0);
        }
        self.amps[bare_index(n_ph, atom)]
    }

    pub fn set(&mut self, n_ph: usize, atom: Atom, v: C64) {
        self.amps[bare_index(n_ph, atom)] = v;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        for a in &mut self.amps {
            *a /= n;
        }
        Ok(self)
    }

    pub fn inner(&self, other: &HybridState) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Mass on photon numbers `n_ph > n_max - 10` (every level when `n_max < 10`,
    /// except the vacuum).
    pub fn tail_mass(&self) -> f64 {
        let first = (self.n_max + 1).saturating_sub(TAIL_LEVELS).max(1);
        (first..=self.n_max).map(|n| self.get(n, Atom::Ground).norm_sqr() + self.get(n, Atom::Excited).norm_sqr()).sum()
    }

    /// The truncation certificate: tail mass below `tolerance`.
    pub fn certify(&self, tolerance: f64) -> Result<()> {
        let tail = self.tail_mass();
        if tail > tolerance {
            return Err(Error::Truncation { tail, tolerance });
        }
        Ok(())
    }

    /// Same state on a larger truncation.
    pub fn extended(&self, n_max: usize) -> Result<Self> {
        if n_max < self.n_max {
            return Err(Error::InvalidParameter(format!("cannot shrink truncation from {} to {n_max}", self.n_max)));
        }
        let mut amps = self.amps.clone();
        amps.resize(2 * (n_max + 1), C64::new(0.0, 0.0));
        Ok(Self { n_max, amps })
    }

    /// `(n_ph, atom, amplitude)` for every entry.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Atom, C64)> + '_ {
        self.amps.iter().enumerate().map(|(i, &a)| (i / 2, if i % 2 == 1 { Atom::Excited } else { Atom::Ground }, a))
    }

    /// Mean photon number.
    pub fn photon_mean(&self) -> f64 {
        self.iter().map(|(n, _, a)| n as f64 * a.norm_sqr()).sum::<f64>() / self.norm_sqr()
    }
}

/// Mean and variance of `a^dagger a + sigma_+ sigma_-`.
pub fn excitation_moments(h: &HybridState) -> (f64, f64) {
    let norm = h.norm_sqr();
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (n, atom, a) in h.iter() {
        let e = (n + atom.excitation()) as f64;
        let p = a.norm_sqr() / norm;
        m1 += e * p;
        m2 += e * e * p;
    }
    (m1, (m2 - m1 * m1).max(0.0))
}

/// Excitation-number distribution `P(N_exc = m)` for `m = 0 ..= n_max + 1`.
pub fn excitation_distribution(h: &HybridState) -> Vec<f64> {
    let mut out = vec![0.0; h.n_max() + 2];
    for (n, atom, a) in h.iter() {
        out[n + atom.excitation()] += a.norm_sqr();
    }
    out
}
