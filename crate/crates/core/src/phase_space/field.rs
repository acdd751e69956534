use crate::error::{Error, Result};
use crate::phase_space::grid::QuasiMomentumGrid;
use crate::phase_space::lattice::LatticeMode;

/// Real samples `W(n, k_j)` on a lattice window times a quasi-momentum grid.
///
/// Row `r` sits at `n_twice = n_min_twice + r * mode.row_step()`; in integer
/// mode `n_min_twice` is even.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    mode: LatticeMode,
    grid: QuasiMomentumGrid,
    n_min_twice: i64,
    rows: usize,
    values: Vec<f64>,
}

impl WignerField {
    pub fn zeros(mode: LatticeMode, grid: QuasiMomentumGrid, n_min_twice: i64, rows: usize) -> Result<Self> {
        Self::from_values(mode, grid, n_min_twice, rows, vec![0.0; rows * grid.count()])
    }

    pub fn from_values(
        mode: LatticeMode,
        grid: QuasiMomentumGrid,
        n_min_twice: i64,
        rows: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        if mode == LatticeMode::Integer && n_min_twice.rem_euclid(2) != 0 {
            return Err(Error::InvalidParameter(format!(
                "integer-mode field cannot start at half-integer n = {}/2",
                n_min_twice
            )));
        }
        if values.len() != rows * grid.count() {
            return Err(Error::Dimension { expected: rows * grid.count(), found: values.len() });
        }
        Ok(Self { mode, grid, n_min_twice, rows, values })
    }

    /// Rows covering the integer window `lo ..= hi` in the given mode.
    pub fn for_window(mode: LatticeMode, grid: QuasiMomentumGrid, lo: i64, hi: i64) -> Self {
        let rows = match mode {
            LatticeMode::Integer => (hi - lo + 1) as usize,
            LatticeMode::HalfInteger => (2 * (hi - lo) + 1) as usize,
        };
        Self { mode, grid, n_min_twice: 2 * lo, rows, values: vec![0.0; rows * grid.count()] }
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn grid(&self) -> &QuasiMomentumGrid {
        &self.grid
    }

    pub fn n_min_twice(&self) -> i64 {
        self.n_min_twice
    }

    pub fn n_max_twice(&self) -> i64 {
        self.n_twice(self.rows - 1)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn n_twice(&self, row: usize) -> i64 {
        self.n_min_twice + row as i64 * self.mode.row_step()
    }

    pub fn row_of(&self, n_twice: i64) -> Option<usize> {
        let off = n_twice - self.n_min_twice;
        let step = self.mode.row_step();
        if off < 0 || off % step != 0 {
            return None;
        }
        let r = (off / step) as usize;
        (r < self.rows).then_some(r)
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let m = self.grid.count();
        &self.values[row * m..(row + 1) * m]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [f64] {
        let m = self.grid.count();
        &mut self.values[row * m..(row + 1) * m]
    }

    /// `W(n, k_j)`; zero for rows outside the window.
    pub fn get(&self, n_twice: i64, j: usize) -> f64 {
        self.row_of(n_twice).map_or(0.0, |r| self.row(r)[j])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest pointwise difference, treating missing rows as zero. Both
    /// fields must share mode and grid.
    pub fn max_abs_diff(&self, other: &WignerField) -> Result<f64> {
        if self.mode != other.mode || self.grid != other.grid {
            return Err(Error::InvalidParameter("fields differ in mode or grid".into()));
        }
        let step = self.mode.row_step();
        let lo = self.n_min_twice.min(other.n_min_twice);
        let hi = self.n_max_twice().max(other.n_max_twice());
        let mut m: f64 = 0.0;
        let mut n = lo;
        while n <= hi {
            for j in 0..self.grid.count() {
                m = m.max((self.get(n, j) - other.get(n, j)).abs());
            }
            n += step;
        }
        Ok(m)
    }

    /// `sum_n int_0^{2 pi} dk W` by the trapezoid rule.
    pub fn total_integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.full_period_weight()
    }
}
