//! The 2x2 spinor Wigner matrix, which gets correct marginals on the integer
//! lattice by splitting even and odd site differences across four planes
//! `W^{sp}(m, k)`, `s, p in {+, -}`:
//!
//! ```text
//! 2 pi W^{sp}(m,k) = A^{sp} sum_n psi_{m+n}   psi*_{m-n}   e^{-2ikn}
//!                  + (B^{sp}(k) sum_n psi_{m+1+n} psi*_{m-n} e^{-2ikn} + c.c.)
//!                  + C^{sp} sum_n psi_{m+1+n} psi*_{m+1-n} e^{-2ikn}
//! ```
//!
//! with `B^{sp}(k) = beta^{sp} e^{-ik}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::phase_space::field::WignerField;
use crate::phase_space::grid::{Period, QuasiMomentumGrid};
use crate::phase_space::lattice::{LatticeMode, LatticeState};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn idx(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// Tolerance for the linear constraint check on user-supplied coefficients.
pub const SPINOR_CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// Coefficients `A^{sp}`, `C^{sp}` and `beta^{sp}`, indexed `[s][p]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorWignerParams {
    pub a: [[f64; 2]; 2],
    pub c: [[f64; 2]; 2],
    pub beta: [[f64; 2]; 2],
}

impl SpinorWignerParams {
    /// Solves the marginal constraints from the four free coefficients
    /// `A^{++}`, `C^{++}`, `A^{+-}` and `b = beta^{++}`.
    pub fn from_free(a_pp: f64, c_pp: f64, a_pm: f64, b: f64) -> Self {
        let a_mp = 1.0 - a_pp;
        let c_mp = -c_pp;
        let a_mm = -a_pm;
        let c_mm = a_pp + c_pp - a_mm;
        let c_pm = 1.0 - c_mm;
        let c_beta = b - 0.5;
        Self {
            a: [[a_pp, a_pm], [a_mp, a_mm]],
            c: [[c_pp, c_pm], [c_mp, c_mm]],
            beta: [[b, -c_beta], [-b, c_beta]],
        }
    }

    /// `A^{++} = 1, C^{++} = 0, A^{+-} = 0, b = 1/4`.
    pub fn canonical() -> Self {
        Self::from_free(1.0, 0.0, 0.0, 0.25)
    }

    pub fn coeff_a(&self, s: Sign, p: Sign) -> f64 {
        self.a[s.idx()][p.idx()]
    }

    pub fn coeff_c(&self, s: Sign, p: Sign) -> f64 {
        self.c[s.idx()][p.idx()]
    }

    pub fn coeff_beta(&self, s: Sign, p: Sign) -> f64 {
        self.beta[s.idx()][p.idx()]
    }

    /// Residuals of the eight linear constraints, by name.
    pub fn constraint_residuals(&self) -> [(&'static str, f64); 8] {
        let (p, m) = (0, 1);
        let a = &self.a;
        let c = &self.c;
        let b = &self.beta;
        [
            ("A++ + C++ = A-- + C--", a[p][p] + c[p][p] - a[m][m] - c[m][m]),
            ("C-+ + C++ = 0", c[m][p] + c[p][p]),
            ("A+- + A-- = 0", a[p][m] + a[m][m]),
            ("C+- + C-- = 1", c[p][m] + c[m][m] - 1.0),
            ("B++ + B-+ = 0", b[p][p] + b[m][p]),
            ("B-- + B+- = 0", b[m][m] + b[p][m]),
            ("A++ + A-+ = 1", a[p][p] + a[m][p] - 1.0),
            ("b - c = 1/2", b[p][p] - b[m][m] - 0.5),
        ]
    }

    pub fn check(&self) -> Result<()> {
        for (name, r) in self.constraint_residuals() {
            if r.abs() > SPINOR_CONSTRAINT_TOLERANCE {
                return Err(Error::SpinorConstraint { constraint: name, residual: r });
            }
        }
        Ok(())
    }

    /// Constants `(a, d)` in
    /// `sum_{m,p} W^{+p} = a |psi~_k|^2 / 2 pi` and
    /// `sum_{m,p} W^{-p} = d |psi~_{k+pi}|^2 / 2 pi`,
    /// with `psi~` the unnormalised lattice transform.
    ///
    /// Any coefficient set passing [`check`](Self::check) gives `a = d = 1`.
    pub fn momentum_normalization(&self) -> (f64, f64) {
        // sum_m W^{sp} = [(A+C+2 beta)|psi~_k|^2 + (A+C-2 beta)|psi~_{k+pi}|^2] / 4 pi
        let plus = |s: usize| -> (f64, f64) {
            let ac: f64 = (0..2).map(|p| self.a[s][p] + self.c[s][p]).sum();
            let bb: f64 = (0..2).map(|p| 2.0 * self.beta[s][p]).sum();
            ((ac + bb) / 2.0, (ac - bb) / 2.0)
        };
        (plus(0).0, plus(1).1)
    }
}

impl Default for SpinorWignerParams {
    fn default() -> Self {
        Self::canonical()
    }
}

/// The four planes, each an integer-mode field on rows `n_min - 1 ..= n_max`.
#[derive(Debug, Clone)]
pub struct SpinorWigner {
    planes: [[WignerField; 2]; 2],
}

impl SpinorWigner {
    pub fn plane(&self, s: Sign, p: Sign) -> &WignerField {
        &self.planes[s.idx()][p.idx()]
    }

    /// `sum_s int dk W^{sp}(m, k)` for `p = +` and `p = -`, as `(m, value)`.
    pub fn position_marginals(&self) -> (Vec<(i64, f64)>, Vec<(i64, f64)>) {
        let per_p = |p: Sign| {
            let f0 = self.plane(Sign::Plus, p);
            let f1 = self.plane(Sign::Minus, p);
            let h = f0.grid().full_period_weight();
            (0..f0.rows())
                .map(|r| {
                    let s: f64 = f0.row(r).iter().chain(f1.row(r)).sum();
                    (f0.n_twice(r) / 2, s * h)
                })
                .collect::<Vec<_>>()
        };
        (per_p(Sign::Plus), per_p(Sign::Minus))
    }

    /// `sum_m sum_p W^{sp}(m, k_j)` for `s = +` and `s = -`.
    pub fn momentum_marginals(&self) -> (Vec<f64>, Vec<f64>) {
        let per_s = |s: Sign| {
            let count = self.planes[0][0].grid().count();
            let mut out = vec![0.0; count];
            for p in Sign::BOTH {
                let f = self.plane(s, p);
                for r in 0..f.rows() {
                    for (o, v) in out.iter_mut().zip(f.row(r)) {
                        *o += v;
                    }
                }
            }
            out
        };
        (per_s(Sign::Plus), per_s(Sign::Minus))
    }
}

/// `sum_n psi_{x+n} psi*_{y-n} e^{-2ikn}` as `(n, coefficient)` pairs.
fn paired_terms(psi: &LatticeState, x: i64, y: i64) -> Vec<(i64, C64)> {
    // sites u = x + n and v = y - n must both be in the window
    let lo = (psi.n_min() - x).max(y - psi.n_max());
    let hi = (psi.n_max() - x).min(y - psi.n_min());
    (lo..=hi).map(|n| (n, psi.amp(x + n) * psi.amp(y - n).conj())).collect()
}

fn eval(terms: &[(i64, C64)], k: f64) -> C64 {
    terms.iter().map(|&(n, c)| c * C64::from_polar(1.0, -2.0 * k * n as f64)).sum()
}

/// Spinor Wigner matrix of an integer-lattice state on a `2 pi` grid.
pub fn spinor_wigner(psi: &LatticeState, grid: QuasiMomentumGrid, params: &SpinorWignerParams) -> Result<SpinorWigner> {
    params.check()?;
    if grid.period() != Period::TwoPi {
        return Err(Error::Unsupported { required: "a 2pi quasi-momentum grid for the spinor planes" });
    }
    if !psi.is_normalized() {
        return Err(Error::NotNormalized { norm_sq: psi.norm_sqr() });
    }
    let lo = psi.n_min() - 1;
    let hi = psi.n_max();
    let mut planes = [
        [WignerField::for_window(LatticeMode::Integer, grid, lo, hi), WignerField::for_window(LatticeMode::Integer, grid, lo, hi)],
        [WignerField::for_window(LatticeMode::Integer, grid, lo, hi), WignerField::for_window(LatticeMode::Integer, grid, lo, hi)],
    ];
    let inv = 1.0 / (2.0 * PI);
    for (r, m) in (lo..=hi).enumerate() {
        let ta = paired_terms(psi, m, m);
        let tb = paired_terms(psi, m + 1, m);
        let tc = paired_terms(psi, m + 1, m + 1);
        for j in 0..grid.count() {
            let k = grid.k(j);
            let sa = eval(&ta, k).re;
            let sc = eval(&tc, k).re;
            let sb = eval(&tb, k) * C64::from_polar(1.0, -k);
            for s in 0..2 {
                for p in 0..2 {
                    let v = params.a[s][p] * sa + 2.0 * params.beta[s][p] * sb.re + params.c[s][p] * sc;
                    planes[s][p].row_mut(r)[j] = v * inv;
                }
            }
        }
    }
    Ok(SpinorWigner { planes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::fourier::fourier_transform;

    #[test]
    fn canonical_parameters_satisfy_constraints_exactly() {
        let p = SpinorWignerParams::canonical();
        for (name, r) in p.constraint_residuals() {
            assert_eq!(r, 0.0, "{name}");
        }
        assert_eq!(p.coeff_a(Sign::Minus, Sign::Plus), 0.0);
        assert_eq!(p.coeff_c(Sign::Minus, Sign::Minus), 1.0);
        assert_eq!(p.coeff_beta(Sign::Minus, Sign::Minus), -0.25);
        assert_eq!(p.momentum_normalization(), (1.0, 1.0));
    }

    #[test]
    fn violated_constraint_is_named() {
        let mut p = SpinorWignerParams::canonical();
        p.beta[1][1] += 0.1;
        match p.check() {
            Err(Error::SpinorConstraint { constraint, .. }) => assert_eq!(constraint, "B-- + B+- = 0"),
            other => panic!("{other:?}"),
        }
        let psi = LatticeState::basis(0);
        assert!(spinor_wigner(&psi, QuasiMomentumGrid::full(8).unwrap(), &p).is_err());
    }

    #[test]
    fn basis_state_position_marginals() {
        let psi = LatticeState::basis(3);
        let sw = spinor_wigner(&psi, QuasiMomentumGrid::full(8).unwrap(), &SpinorWignerParams::canonical()).unwrap();
        let (plus, minus) = sw.position_marginals();
        for (m, v) in plus {
            assert!((v - if m == 3 { 1.0 } else { 0.0 }).abs() < 1e-14);
        }
        for (m, v) in minus {
            assert!((v - if m + 1 == 3 { 1.0 } else { 0.0 }).abs() < 1e-14);
        }
    }

    #[test]
    fn vacuum_momentum_marginal() {
        let psi = LatticeState::basis(0);
        let g = QuasiMomentumGrid::full(16).unwrap();
        let sw = spinor_wigner(&psi, g, &SpinorWignerParams::canonical()).unwrap();
        let (plus, minus) = sw.momentum_marginals();
        for j in 0..g.count() {
            let k = g.k(j);
            let want_p = fourier_transform(&psi, k).norm_sqr() / (2.0 * PI);
            let want_m = fourier_transform(&psi, k + PI).norm_sqr() / (2.0 * PI);
            assert!((plus[j] - want_p).abs() < 1e-15);
            assert!((minus[j] - want_m).abs() < 1e-15);
        }
    }

    #[test]
    fn non_canonical_parameters_keep_marginals() {
        let params = SpinorWignerParams::from_free(0.3, -0.7, 1.1, 0.9);
        params.check().unwrap();
        assert_eq!(params.momentum_normalization(), (1.0, 1.0));
        let psi = LatticeState::normalize(-2, vec![C64::new(0.3, 0.1), C64::new(-0.5, 0.2), C64::new(0.1, 0.9), C64::new(0.4, -0.3)])
            .unwrap();
        let g = QuasiMomentumGrid::full(32).unwrap();
        let sw = spinor_wigner(&psi, g, &params).unwrap();
        let (plus, minus) = sw.momentum_marginals();
        for j in 0..g.count() {
            let k = g.k(j);
            assert!((plus[j] - fourier_transform(&psi, k).norm_sqr() / (2.0 * PI)).abs() < 1e-14);
            assert!((minus[j] - fourier_transform(&psi, k + PI).norm_sqr() / (2.0 * PI)).abs() < 1e-14);
        }
    }
}
