//! The homogeneous nearest-neighbour chain `H = i T - i T^dagger`, i.e.
//! `d psi_n / dt = psi_{n-1} - psi_{n+1}`.
//!
//! Its Green function is `J_{n-m}(2t)`; the Wigner function obeys a discrete
//! wave equation whose solutions are superpositions of `J_{2n+m}(4t cos k)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::phase_space::field::WignerField;
use crate::phase_space::lattice::{LatticeState, BOUNDARY_TOLERANCE};
use crate::special::{bessel_j, bessel_j_symmetric};
use crate::C64;

/// Sites added on each side of a window before evolving for time `t`.
///
/// The light cone moves at speed 2; beyond it the Bessel tail decays on the
/// scale `t^(1/3)`, which the second term covers down to ~1e-13.
pub fn wavefront_margin(t: f64) -> i64 {
    let t = t.abs();
    (2.0 * t).ceil() as i64 + 20 + (12.0 * t.cbrt()).ceil() as i64
}

/// Evolves `psi0` for time `t`, widening the window by [`wavefront_margin`].
pub fn tb_evolve_state(psi0: &LatticeState, t: f64) -> Result<LatticeState> {
    let m = wavefront_margin(t);
    tb_evolve_state_in(psi0, t, psi0.n_min() - m, psi0.n_max() + m)
}

/// `psi_n(t) = sum_m J_{n-m}(2t) psi_m(0)` on the fixed window `lo ..= hi`.
/// Fails if the result carries more than `1e-10` at either edge.
pub fn tb_evolve_state_in(psi0: &LatticeState, t: f64, lo: i64, hi: i64) -> Result<LatticeState> {
    if lo > psi0.n_min() || hi < psi0.n_max() {
        return Err(Error::InvalidParameter(format!(
            "evolution window {lo}..={hi} does not contain the initial support {}..={}",
            psi0.n_min(),
            psi0.n_max()
        )));
    }
    let d_max = (hi - lo) as usize;
    let bessel = bessel_j_symmetric(d_max, 2.0 * t);
    let len = d_max + 1;
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, slot) in out.iter_mut().enumerate() {
        let n = lo + i as i64;
        let mut acc = C64::new(0.0, 0.0);
        for (m, a) in psi0.iter() {
            acc += a * bessel[(n - m + d_max as i64) as usize];
        }
        *slot = acc;
    }
    let edge = out[0].norm().max(out[len - 1].norm());
    if edge > BOUNDARY_TOLERANCE {
        return Err(Error::WindowOverflow { amplitude: edge });
    }
    Ok(LatticeState::new_unnormalized(lo, out))
}

/// `sum_m C_m J_{2n+m}(4 t cos k)`, a solution of the discrete wave equation.
/// `n` is given doubled; at `t = 0` this is `C_{-2n}`.
pub fn tb_wigner_closed_form(coeffs: &[(i64, f64)], n_twice: i64, k: f64, t: f64) -> f64 {
    let z = 4.0 * t * k.cos();
    coeffs.iter().map(|&(m, c)| c * bessel_j(n_twice + m, z)).sum()
}

/// Residual of the discrete wave equation
///
/// ```text
/// 1/(4 cos^2 k) d^2W/dt^2 = W(n+1, k) + W(n-1, k) - 2 W(n, k)
/// ```
///
/// with the time derivative replaced by a centred second difference. The
/// field is sampled at column `j` of its grid.
pub fn wave_equation_residual<F>(wfun: F, n_twice: i64, j: usize, t: f64, dt: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<WignerField>,
{
    let (wm, w0, wp) = (wfun(t - dt)?, wfun(t)?, wfun(t + dt)?);
    let k = w0.grid().k(j);
    let c = k.cos();
    if (k.rem_euclid(std::f64::consts::PI) - FRAC_PI_2).abs() < 1e-6 {
        return Err(Error::InvalidParameter(format!("k = {k} is on the singular line cos k = 0")));
    }
    let d2t = (wp.get(n_twice, j) - 2.0 * w0.get(n_twice, j) + wm.get(n_twice, j)) / (dt * dt);
    let d2n = w0.get(n_twice + 2, j) + w0.get(n_twice - 2, j) - 2.0 * w0.get(n_twice, j);
    Ok(d2t / (4.0 * c * c) - d2n)
}

/// Classical images `x -+ 2 cos(k) t` of a point `(x, k)`; `k` is conserved.
pub fn shear_transport_predict(x: f64, k: f64, t: f64) -> (f64, f64) {
    let v = 2.0 * k.cos() * t;
    (x - v, x + v)
}

/// `<N>` of a state, normalised by its own norm.
pub fn position_mean(psi: &LatticeState) -> f64 {
    let norm = psi.norm_sqr();
    psi.iter().map(|(n, a)| n as f64 * a.norm_sqr()).sum::<f64>() / norm
}

/// `d<N>/dt = <T + T^dagger> = 2 Re sum_n psi*_{n+1} psi_n`, constant in time
/// because the hopping commutes with `H`.
pub fn centroid_velocity(psi: &LatticeState) -> f64 {
    let norm = psi.norm_sqr();
    let s: f64 = psi.iter().map(|(n, a)| (psi.amp(n + 1).conj() * a).re).sum();
    2.0 * s / norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::grid::QuasiMomentumGrid;
    use crate::phase_space::lattice::LatticeMode;
    use crate::phase_space::wigner::wigner_from_state;
    use std::f64::consts::PI;

    #[test]
    fn vacuum_spreads_as_bessel() {
        let psi = tb_evolve_state(&LatticeState::basis(0), 3.0).unwrap();
        for n in -10..=10 {
            assert!((psi.amp(n) - C64::new(bessel_j(n, 6.0), 0.0)).norm() < 1e-14);
        }
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let psi0 = LatticeState::superposition(&[(0, C64::new(1.0, 0.0)), (3, C64::new(0.0, 1.0))]).unwrap();
        let psi = tb_evolve_state(&psi0, 0.0).unwrap();
        for n in -5..=8 {
            assert!((psi.amp(n) - psi0.amp(n)).norm() < 1e-15);
        }
    }

    #[test]
    fn fixed_window_overflow() {
        let err = tb_evolve_state_in(&LatticeState::basis(0), 10.0, -5, 5).unwrap_err();
        assert!(matches!(err, Error::WindowOverflow { .. }));
    }

    #[test]
    fn composition() {
        let psi0 = LatticeState::superposition(&[(-2, C64::new(0.6, 0.0)), (1, C64::new(0.0, 0.8))]).unwrap();
        let a = tb_evolve_state(&tb_evolve_state(&psi0, 1.3).unwrap(), 2.1).unwrap();
        let b = tb_evolve_state(&psi0, 3.4).unwrap();
        for n in -30..=30 {
            assert!((a.amp(n) - b.amp(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn vacuum_wigner_is_bessel_of_twice_the_order() {
        let t = 2.5;
        let psi = tb_evolve_state(&LatticeState::basis(0), t).unwrap();
        let g = QuasiMomentumGrid::full(32).unwrap();
        let w = wigner_from_state(&psi, g, LatticeMode::HalfInteger).unwrap();
        let coeffs = [(0, 1.0 / (2.0 * PI))];
        for n_twice in -12..=12 {
            for j in 0..g.count() {
                let want = tb_wigner_closed_form(&coeffs, n_twice, g.k(j), t);
                assert!((w.get(n_twice, j) - want).abs() < 1e-12, "n2={n_twice} j={j}");
            }
        }
    }

    #[test]
    fn closed_form_vanishes_off_origin_on_node_line() {
        let coeffs = [(0, 1.0)];
        for t in [0.5, 7.0, 30.0] {
            assert_eq!(tb_wigner_closed_form(&coeffs, 0, FRAC_PI_2, t), bessel_j(0, 4.0 * t * FRAC_PI_2.cos()));
            assert!(tb_wigner_closed_form(&coeffs, 2, FRAC_PI_2, t).abs() < 1e-14);
        }
    }

    #[test]
    fn shear_examples() {
        assert_eq!(shear_transport_predict(0.0, 0.0, 10.0), (-20.0, 20.0));
        let (a, b) = shear_transport_predict(0.0, FRAC_PI_2, 3.0);
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
    }

    #[test]
    fn bloch_wave_velocity() {
        let k0: f64 = 0.4;
        let amps: Vec<C64> = (0..50).map(|n| C64::from_polar(1.0, k0 * n as f64)).collect();
        let psi = LatticeState::normalize(0, amps).unwrap();
        // edges drop one bond out of 50
        assert!((centroid_velocity(&psi) - 2.0 * k0.cos() * 49.0 / 50.0).abs() < 1e-12);
    }

    #[test]
    fn singular_line_rejected() {
        let g = QuasiMomentumGrid::full(4).unwrap();
        let f = |_t: f64| wigner_from_state(&LatticeState::basis(0), g, LatticeMode::Integer);
        assert!(wave_equation_residual(f, 0, 1, 1.0, 1e-3).is_err());
    }
}
