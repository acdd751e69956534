//! The discrete Wigner transform
//!
//! ```text
//! W(n, k) = 1/(2 pi) sum_{n'} psi*_{n-n'} psi_{n+n'} exp(-2 i k n')
//! ```
//!
//! Every term is a pair of integer sites `a = n - n'`, `b = n + n'` with
//! `a + b = 2n`; the exponent is `-i k (b - a)`. Half-integer rows are the
//! pairs with odd `a + b`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::phase_space::lattice::{DensityWindow, LatticeMode, LatticeState, BOUNDARY_TOLERANCE, NORM_TOLERANCE};
use crate::C64;

/// Imaginary residue allowed before the sum is declared non-real.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// `exp(-i k_j d)` for every grid sample and `|d| <= d_max`.
pub(crate) struct PhaseTable {
    d_max: i64,
    width: usize,
    data: Vec<C64>,
}

impl PhaseTable {
    pub(crate) fn new(grid: &QuasiMomentumGrid, d_max: i64) -> Self {
        let width = (2 * d_max + 1) as usize;
        let mut data = Vec::with_capacity(width * grid.count());
        for j in 0..grid.count() {
            let k = grid.k(j);
            for d in -d_max..=d_max {
                let (s, c) = (k * d as f64).sin_cos();
                data.push(C64::new(c, -s));
            }
        }
        Self { d_max, width, data }
    }

    #[inline]
    pub(crate) fn get(&self, j: usize, d: i64) -> C64 {
        self.data[j * self.width + (d + self.d_max) as usize]
    }
}

/// Terms `(b - a, psi*_a psi_b)` of row `n_twice`.
fn state_row_terms(psi: &LatticeState, n_twice: i64) -> Vec<(i64, C64)> {
    let mut out = Vec::new();
    for (a, pa) in psi.iter() {
        let b = n_twice - a;
        if b < psi.n_min() || b > psi.n_max() {
            continue;
        }
        let pb = psi.amp(b);
        if pa == C64::new(0.0, 0.0) || pb == C64::new(0.0, 0.0) {
            continue;
        }
        out.push((b - a, pa.conj() * pb));
    }
    out
}

/// Terms `(b - a, <b|rho|a>)` of row `n_twice`.
fn density_row_terms(rho: &DensityWindow, n_twice: i64) -> Vec<(i64, C64)> {
    let mut out = Vec::new();
    for a in rho.n_min()..=rho.n_max() {
        let b = n_twice - a;
        if b < rho.n_min() || b > rho.n_max() {
            continue;
        }
        let v = rho.get(b, a);
        if v != C64::new(0.0, 0.0) {
            out.push((b - a, v));
        }
    }
    out
}

fn evaluate_row(terms: &[(i64, C64)], table: &PhaseTable, n_twice: i64, out: &mut [f64]) -> Result<()> {
    for (j, slot) in out.iter_mut().enumerate() {
        let s: C64 = terms.iter().map(|&(d, c)| c * table.get(j, d)).sum::<C64>() / (2.0 * PI);
        if s.im.abs() > IMAGINARY_TOLERANCE {
            return Err(Error::ImaginaryResidue { n_twice, residue: s.im.abs() });
        }
        *slot = s.re;
    }
    Ok(())
}

fn fill_field<F>(mut field: WignerField, d_max: i64, row_terms: F) -> Result<WignerField>
where
    F: Fn(i64) -> Vec<(i64, C64)>,
{
    let table = PhaseTable::new(field.grid(), d_max.max(0));
    for r in 0..field.rows() {
        let n_twice = field.n_twice(r);
        let terms = row_terms(n_twice);
        evaluate_row(&terms, &table, n_twice, field.row_mut(r))?;
    }
    Ok(field)
}

/// Wigner function of a normalized pure state over the state's own window.
pub fn wigner_from_state(psi: &LatticeState, grid: QuasiMomentumGrid, mode: LatticeMode) -> Result<WignerField> {
    wigner_from_state_in(psi, grid, mode, psi.n_min(), psi.n_max())
}

/// Wigner function on the integer window `lo ..= hi`. Sums are truncated at
/// the window edge; amplitudes outside it must be below `1e-10`.
pub fn wigner_from_state_in(
    psi: &LatticeState,
    grid: QuasiMomentumGrid,
    mode: LatticeMode,
    lo: i64,
    hi: i64,
) -> Result<WignerField> {
    if !psi.is_normalized() {
        return Err(Error::NotNormalized { norm_sq: psi.norm_sqr() });
    }
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty window {lo}..={hi}")));
    }
    for (n, a) in psi.iter() {
        if (n < lo || n > hi) && a.norm() > BOUNDARY_TOLERANCE {
            return Err(Error::WindowTooSmall { n, amplitude: a.norm() });
        }
    }
    let restricted = LatticeState::new_unnormalized(lo, (lo..=hi).map(|n| psi.amp(n)).collect());
    let field = WignerField::for_window(mode, grid, lo, hi);
    fill_field(field, hi - lo, |n_twice| state_row_terms(&restricted, n_twice))
}

/// Wigner function `Tr[rho W(n,k)]` of a Hermitian density window.
pub fn wigner_from_density(rho: &DensityWindow, grid: QuasiMomentumGrid, mode: LatticeMode) -> Result<WignerField> {
    let dev = rho.hermitian_deviation();
    if dev > NORM_TOLERANCE {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let field = WignerField::for_window(mode, grid, rho.n_min(), rho.n_max());
    fill_field(field, rho.n_max() - rho.n_min(), |n_twice| density_row_terms(rho, n_twice))
}

/// Single complex value of the defining sum, before the real part is taken.
pub fn wigner_point(psi: &LatticeState, n_twice: i64, k: f64) -> C64 {
    state_row_terms(psi, n_twice)
        .into_iter()
        .map(|(d, c)| c * C64::from_polar(1.0, -k * d as f64))
        .sum::<C64>()
        / (2.0 * PI)
}
