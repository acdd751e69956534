use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Tolerance on `sum |psi_n|^2 = 1` and on `Tr rho = 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Amplitudes below this are treated as absent when checking windows.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// Which phase-space points carry Wigner values.
///
/// `Integer` keeps only integer `n` (and integer `n'` in the defining sum), so
/// the Wigner function is `pi`-periodic in `k`. `HalfInteger` adds the
/// half-integer rows needed for exact marginals; kets still live on integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    #[serde(alias = "int")]
    Integer,
    #[serde(alias = "half")]
    HalfInteger,
}

impl LatticeMode {
    /// Spacing between consecutive rows in doubled-index units.
    pub fn row_step(self) -> i64 {
        match self {
            LatticeMode::Integer => 2,
            LatticeMode::HalfInteger => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LatticeMode::Integer => "integer",
            LatticeMode::HalfInteger => "half",
        }
    }
}

/// A pure state on a finite window `n_min ..= n_min + len - 1` of the integer
/// lattice. Amplitudes outside the window are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    n_min: i64,
    amps: Vec<C64>,
    normalized: bool,
}

impl LatticeState {
    /// Builds a state that must already be normalized.
    pub fn new(n_min: i64, amps: Vec<C64>) -> Result<Self> {
        let s = Self::new_unnormalized(n_min, amps);
        if !s.normalized {
            return Err(Error::NotNormalized { norm_sq: s.norm_sqr() });
        }
        Ok(s)
    }

    /// Builds a state without checking the norm; the flag records the result.
    pub fn new_unnormalized(n_min: i64, amps: Vec<C64>) -> Self {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        Self {
            n_min,
            amps,
            normalized: (norm_sq - 1.0).abs() <= NORM_TOLERANCE,
        }
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalize(n_min: i64, mut amps: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 || !norm_sq.is_finite() {
            return Err(Error::NotNormalized { norm_sq });
        }
        let s = 1.0 / norm_sq.sqrt();
        for a in amps.iter_mut() {
            *a *= s;
        }
        Ok(Self { n_min, amps, normalized: true })
    }

    /// Reads a state stored on the doubled index grid: internal index `m`
    /// stands for `n = m / 2`, and only even `m` may carry amplitude.
    pub fn from_embedded(offset_twice: i64, amps: &[C64]) -> Result<Self> {
        let mut out = Vec::new();
        let mut n_min = None;
        for (i, a) in amps.iter().enumerate() {
            let m = offset_twice + i as i64;
            if m.rem_euclid(2) == 1 {
                if *a != C64::new(0.0, 0.0) {
                    return Err(Error::OddIndexAmplitude { index: m });
                }
                continue;
            }
            if n_min.is_none() {
                n_min = Some(m / 2);
            }
            out.push(*a);
        }
        let n_min = n_min.unwrap_or(offset_twice.div_euclid(2));
        let s = Self::new_unnormalized(n_min, out);
        if !s.normalized {
            return Err(Error::NotNormalized { norm_sq: s.norm_sqr() });
        }
        Ok(s)
    }

    /// Writes the state on the doubled index grid, starting at `2 n_min`.
    pub fn to_embedded(&self) -> (i64, Vec<C64>) {
        let mut out = Vec::with_capacity(2 * self.amps.len());
        for (i, a) in self.amps.iter().enumerate() {
            if i > 0 {
                out.push(C64::new(0.0, 0.0));
            }
            out.push(*a);
        }
        (2 * self.n_min, out)
    }

    /// Position eigenstate `|n>`.
    pub fn basis(n: i64) -> Self {
        Self { n_min: n, amps: vec![C64::new(1.0, 0.0)], normalized: true }
    }

    /// Normalized superposition of position eigenstates.
    pub fn superposition(terms: &[(i64, C64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Degenerate("empty superposition".into()));
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut amps = vec![C64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(n, a) in terms {
            amps[(n - lo) as usize] += a;
        }
        Self::normalize(lo, amps)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.amps.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `psi_n`, zero outside the window.
    #[inline]
    pub fn amp(&self, n: i64) -> C64 {
        let i = n - self.n_min;
        if i < 0 || i >= self.amps.len() as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.amps[i as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.amps.iter().enumerate().map(move |(i, a)| (self.n_min + i as i64, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest modulus among the two edge sites.
    pub fn boundary_amplitude(&self) -> f64 {
        match (self.amps.first(), self.amps.last()) {
            (Some(a), Some(b)) => a.norm().max(b.norm()),
            _ => 0.0,
        }
    }

    /// Same state on the wider window `lo ..= hi`.
    pub fn padded(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.min(self.n_min);
        let hi = hi.max(self.n_max());
        let amps = (lo..=hi).map(|n| self.amp(n)).collect();
        Self { n_min: lo, amps, normalized: self.normalized }
    }

    /// Translation `T^m`: `|n> -> |n + m>`.
    pub fn translated(&self, m: i64) -> Self {
        Self { n_min: self.n_min + m, amps: self.amps.clone(), normalized: self.normalized }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &LatticeState) -> C64 {
        let lo = self.n_min.max(other.n_min);
        let hi = self.n_max().min(other.n_max());
        (lo..=hi).map(|n| self.amp(n).conj() * other.amp(n)).sum()
    }

    /// Drops leading and trailing sites with modulus below `tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let first = self.amps.iter().position(|a| a.norm() > tol);
        let last = self.amps.iter().rposition(|a| a.norm() > tol);
        match (first, last) {
            (Some(f), Some(l)) => Self {
                n_min: self.n_min + f as i64,
                amps: self.amps[f..=l].to_vec(),
                normalized: self.normalized,
            },
            _ => self.clone(),
        }
    }

    pub fn density(&self) -> DensityWindow {
        let dim = self.amps.len();
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in self.amps.iter().enumerate() {
                data[i * dim + j] = a * b.conj();
            }
        }
        DensityWindow { n_min: self.n_min, dim, data }
    }
}

/// A density matrix `rho_{ab} = <a|rho|b>` over `n_min ..= n_min + dim - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityWindow {
    n_min: i64,
    dim: usize,
    data: Vec<C64>,
}

impl DensityWindow {
    /// Requires Hermitian input (to 1e-12); the trace is not enforced here.
    pub fn new(n_min: i64, dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Dimension { expected: dim * dim, found: data.len() });
        }
        let rho = Self { n_min, dim, data };
        let dev = rho.hermitian_deviation();
        if dev > NORM_TOLERANCE {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(rho)
    }

    /// No Hermiticity check; used for reconstructed operators.
    pub fn from_raw(n_min: i64, dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { n_min, dim, data }
    }

    /// Incoherent mixture of states with the given weights.
    pub fn mixture(parts: &[(f64, &LatticeState)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Degenerate("empty mixture".into()));
        }
        let lo = parts.iter().map(|p| p.1.n_min()).min().unwrap();
        let hi = parts.iter().map(|p| p.1.n_max()).max().unwrap();
        let dim = (hi - lo + 1) as usize;
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for &(w, s) in parts {
            for (a, x) in s.iter() {
                for (b, y) in s.iter() {
                    data[(a - lo) as usize * dim + (b - lo) as usize] += w * x * y.conj();
                }
            }
        }
        Self::new(lo, dim, data)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.dim as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// `<a|rho|b>`, zero outside the window.
    #[inline]
    pub fn get(&self, a: i64, b: i64) -> C64 {
        let i = a - self.n_min;
        let j = b - self.n_min;
        let d = self.dim as i64;
        if i < 0 || j < 0 || i >= d || j >= d {
            C64::new(0.0, 0.0)
        } else {
            self.data[(i * d + j) as usize]
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).collect()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                dev = dev.max((self.data[i * d + j] - self.data[j * d + i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_unit_trace(&self) -> bool {
        (self.trace() - 1.0).norm() <= NORM_TOLERANCE
    }

    /// Largest elementwise difference against another window, padding with zeros.
    pub fn max_abs_diff(&self, other: &DensityWindow) -> f64 {
        let lo = self.n_min.min(other.n_min);
        let hi = self.n_max().max(other.n_max());
        let mut m: f64 = 0.0;
        for a in lo..=hi {
            for b in lo..=hi {
                m = m.max((self.get(a, b) - other.get(a, b)).norm());
            }
        }
        m
    }
}

/// JSON layout: `{n_min, dim, re: [[..]], im: [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityWindowJson {
    pub n_min: i64,
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DensityWindow> for DensityWindowJson {
    fn from(rho: &DensityWindow) -> Self {
        let d = rho.dim;
        let row = |i: usize, f: fn(&C64) -> f64| rho.data[i * d..(i + 1) * d].iter().map(f).collect();
        Self {
            n_min: rho.n_min,
            dim: d,
            re: (0..d).map(|i| row(i, |c| c.re)).collect(),
            im: (0..d).map(|i| row(i, |c| c.im)).collect(),
        }
    }
}

impl TryFrom<DensityWindowJson> for DensityWindow {
    type Error = Error;

    fn try_from(j: DensityWindowJson) -> Result<Self> {
        if j.re.len() != j.dim || j.im.len() != j.dim {
            return Err(Error::Dimension { expected: j.dim, found: j.re.len().min(j.im.len()) });
        }
        let mut data = Vec::with_capacity(j.dim * j.dim);
        for (r, i) in j.re.iter().zip(&j.im) {
            if r.len() != j.dim || i.len() != j.dim {
                return Err(Error::Dimension { expected: j.dim, found: r.len().min(i.len()) });
            }
            data.extend(r.iter().zip(i).map(|(a, b)| C64::new(*a, *b)));
        }
        DensityWindow::new(j.n_min, j.dim, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn embedded_round_trip() {
        let s = LatticeState::superposition(&[(-1, c(1.0)), (2, c(1.0))]).unwrap();
        let (off, emb) = s.to_embedded();
        assert_eq!(off, -2);
        assert_eq!(emb.len(), 7);
        let back = LatticeState::from_embedded(off, &emb).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn embedded_rejects_odd_amplitude() {
        let emb = vec![c(1.0), c(0.1), c(0.0)];
        assert!(matches!(
            LatticeState::from_embedded(0, &emb),
            Err(Error::OddIndexAmplitude { index: 1 })
        ));
    }

    #[test]
    fn unnormalized_state_is_flagged() {
        let s = LatticeState::new_unnormalized(0, vec![c(1.0), c(1.0)]);
        assert!(!s.is_normalized());
        assert!(LatticeState::new(0, vec![c(1.0), c(1.0)]).is_err());
    }

    #[test]
    fn mixture_is_hermitian_unit_trace() {
        let a = LatticeState::basis(0);
        let b = LatticeState::basis(1);
        let rho = DensityWindow::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        assert!(rho.is_unit_trace());
        assert_eq!(rho.diagonal(), vec![0.5, 0.5]);
        assert_eq!(rho.get(0, 1), c(0.0));
    }

    #[test]
    fn non_hermitian_rejected() {
        let data = vec![c(0.5), C64::new(0.1, 0.2), C64::new(0.1, 0.2), c(0.5)];
        assert!(matches!(DensityWindow::new(0, 2, data), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn density_json_round_trip() {
        let s = LatticeState::superposition(&[(3, c(1.0)), (4, C64::new(0.0, 1.0))]).unwrap();
        let rho = s.density();
        let j = DensityWindowJson::from(&rho);
        let text = serde_json::to_string(&j).unwrap();
        let back: DensityWindowJson = serde_json::from_str(&text).unwrap();
        let rho2 = DensityWindow::try_from(back).unwrap();
        assert_eq!(rho, rho2);
    }
}
