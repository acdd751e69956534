//! Closed-form Wigner functions of two-component superpositions.
//!
//! A momentum cat `(|k1> + |k2>)/sqrt 2` has a Wigner function made of Dirac
//! lines in `k`. Those are kept symbolic as [`DeltaLineField`]; rendering onto
//! a grid is for plotting only.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::phase_space::lattice::LatticeMode;

/// `W` of `(|n1> + |n2>)/sqrt 2` in half-integer mode on the window spanning
/// both sites.
pub fn cat_position_wigner(n1: i64, n2: i64, grid: QuasiMomentumGrid) -> Result<WignerField> {
    if n1 == n2 {
        return Err(Error::Degenerate(format!("position cat needs two distinct sites, got n1 = n2 = {n1}")));
    }
    let (lo, hi) = (n1.min(n2), n1.max(n2));
    let mut w = WignerField::for_window(LatticeMode::HalfInteger, grid, lo, hi);
    let d = (n1 - n2) as f64;
    for r in 0..w.rows() {
        let n_twice = w.n_twice(r);
        let stripe = if n_twice == 2 * n1 || n_twice == 2 * n2 { 1.0 / (4.0 * PI) } else { 0.0 };
        let fringe = n_twice == n1 + n2;
        let row = w.row_mut(r);
        for (j, v) in row.iter_mut().enumerate() {
            *v = stripe;
            if fringe {
                *v += (d * grid.k(j)).cos() / (2.0 * PI);
            }
        }
    }
    Ok(w)
}

/// Row dependence of the weight carried by a delta line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LineProfile {
    Constant { value: f64 },
    /// `amplitude * cos(frequency * n)`
    Cosine { amplitude: f64, frequency: f64 },
}

impl LineProfile {
    pub fn at(&self, n: f64) -> f64 {
        match *self {
            LineProfile::Constant { value } => value,
            LineProfile::Cosine { amplitude, frequency } => amplitude * (frequency * n).cos(),
        }
    }
}

/// `profile(n) * delta(k - k0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaLine {
    pub k0: f64,
    pub profile: LineProfile,
}

/// A sum of delta lines on the rows `n_min_twice ..` of a window.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaLineField {
    pub mode: LatticeMode,
    pub n_min: i64,
    pub n_max: i64,
    pub lines: Vec<DeltaLine>,
}

impl DeltaLineField {
    /// `(k0, weight)` of every line at row `n_twice`.
    pub fn weights(&self, n_twice: i64) -> Vec<(f64, f64)> {
        let n = n_twice as f64 / 2.0;
        self.lines.iter().map(|l| (l.k0, l.profile.at(n))).collect()
    }

    /// Plotting aid: each line becomes `weight / spacing` in the bin holding
    /// `k0`.
    pub fn render(&self, grid: QuasiMomentumGrid) -> WignerField {
        let mut w = WignerField::for_window(self.mode, grid, self.n_min, self.n_max);
        let h = grid.spacing();
        for r in 0..w.rows() {
            let n_twice = w.n_twice(r);
            let weights = self.weights(n_twice);
            let row = w.row_mut(r);
            for (k0, wt) in weights {
                row[grid.bin_of(k0)] += wt / h;
            }
        }
        w
    }
}

/// `W` of `(|k1> + |k2>)/sqrt 2` on rows of `lo ..= hi`: lines at `k1` and
/// `k2` of weight `1/4 pi` and a fringe line at `(k1 + k2)/2` of weight
/// `cos(n (k1 - k2)) / 2 pi`.
pub fn cat_momentum_wigner(k1: f64, k2: f64, mode: LatticeMode, lo: i64, hi: i64) -> Result<DeltaLineField> {
    let (a, b) = (k1.rem_euclid(2.0 * PI), k2.rem_euclid(2.0 * PI));
    if (a - b).abs() < 1e-12 {
        return Err(Error::Degenerate(format!("momentum cat needs two distinct k, got {k1} and {k2}")));
    }
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty window {lo}..={hi}")));
    }
    let stripe = LineProfile::Constant { value: 1.0 / (4.0 * PI) };
    Ok(DeltaLineField {
        mode,
        n_min: lo,
        n_max: hi,
        lines: vec![
            DeltaLine { k0: a, profile: stripe },
            DeltaLine { k0: b, profile: stripe },
            DeltaLine {
                k0: 0.5 * (a + b),
                profile: LineProfile::Cosine { amplitude: 1.0 / (2.0 * PI), frequency: a - b },
            },
        ],
    })
}
