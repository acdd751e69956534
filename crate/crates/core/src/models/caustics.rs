//! Stationary-phase structure of a diffusing quasi-momentum eigenstate under
//! the JC spectrum. With `x` the continuous stand-in for `n'`,
//!
//! ```text
//! Phi(x) = t (eps(n + x) - eps(n - x)) + 2 x (k - k0)
//! ```
//!
//! and caustics sit where `dPhi/dx = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::spectrum::sgn;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausticQuery {
    pub n: f64,
    /// `k - k0`
    pub dk: f64,
    pub t: f64,
    pub delta: f64,
    pub g: f64,
    #[serde(default = "one")]
    pub omega: f64,
    /// Family index `m` of the `m pi` relation.
    #[serde(default)]
    pub m: i64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Maximum,
    Minimum,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausticPoint {
    pub x: f64,
    pub phase: f64,
    pub kind: Extremum,
}

/// Tolerance, in radians, for labelling `Phi = 2 q pi` or `(2 q + 1) pi`.
pub const EXTREMUM_TOLERANCE: f64 = 0.1;

/// Bracketing samples used to locate sign changes of `dPhi/dx`.
const SCAN_POINTS: usize = 4000;

fn eps(q: &CausticQuery, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    q.omega * x.abs() + 0.5 * q.delta + sgn(x) * (0.25 * q.delta * q.delta + q.g * q.g * x.abs()).sqrt()
}

fn eps_prime(q: &CausticQuery, x: f64) -> f64 {
    q.omega * sgn(x) + q.g * q.g / (2.0 * (0.25 * q.delta * q.delta + q.g * q.g * x.abs()).sqrt())
}

pub fn caustic_phase(q: &CausticQuery, x: f64) -> f64 {
    q.t * (eps(q, q.n + x) - eps(q, q.n - x)) + 2.0 * x * q.dk
}

/// `dPhi/dx = t (eps'(n + x) + eps'(n - x)) + 2 (k - k0)`.
pub fn caustic_phase_derivative(q: &CausticQuery, x: f64) -> f64 {
    q.t * (eps_prime(q, q.n + x) + eps_prime(q, q.n - x)) + 2.0 * q.dk
}

pub fn classify(phase: f64) -> Extremum {
    let r = phase.rem_euclid(2.0 * PI);
    if r < EXTREMUM_TOLERANCE || 2.0 * PI - r < EXTREMUM_TOLERANCE {
        Extremum::Maximum
    } else if (r - PI).abs() < EXTREMUM_TOLERANCE {
        Extremum::Minimum
    } else {
        Extremum::Neither
    }
}

fn bisect(q: &CausticQuery, mut a: f64, mut b: f64) -> f64 {
    let mut fa = caustic_phase_derivative(q, a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = caustic_phase_derivative(q, m);
        if fm == 0.0 || (b - a) < 1e-14 * (1.0 + m.abs()) {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Roots of `dPhi/dx` on `(0, |n| - 1]`, ordered by `|x*|`.
pub fn caustics(q: &CausticQuery) -> Result<Vec<CausticPoint>> {
    if !(q.t > 0.0) {
        return Err(Error::InvalidParameter(format!("caustics need t > 0, got {}", q.t)));
    }
    let hi = q.n.abs() - 1.0;
    if hi <= 0.0 {
        return Err(Error::NoRoot);
    }
    let lo = hi * 1e-9;
    let xs: Vec<f64> = (0..=SCAN_POINTS).map(|i| lo + (hi - lo) * i as f64 / SCAN_POINTS as f64).collect();
    let mut roots = Vec::new();
    let mut prev = caustic_phase_derivative(q, xs[0]);
    if prev == 0.0 {
        roots.push(xs[0]);
    }
    for w in xs.windows(2) {
        let f = caustic_phase_derivative(q, w[1]);
        if f == 0.0 {
            roots.push(w[1]);
        } else if prev != 0.0 && (f < 0.0) != (prev < 0.0) {
            roots.push(bisect(q, w[0], w[1]));
        }
        prev = f;
    }
    if roots.is_empty() {
        return Err(Error::NoRoot);
    }
    Ok(roots
        .into_iter()
        .map(|x| {
            let phase = caustic_phase(q, x);
            CausticPoint { x, phase, kind: classify(phase) }
        })
        .collect())
}

/// Strong-coupling estimate `x* ~ (k - k0) delta / (2 t n g)`.
pub fn strong_coupling_root(q: &CausticQuery) -> f64 {
    q.dk * q.delta / (2.0 * q.t * q.n * q.g)
}

/// Left side of `(k - k0)^2 delta/(t n g) + 2 t n g/delta = m pi`.
pub fn caustic_family_value(q: &CausticQuery) -> f64 {
    q.dk * q.dk * q.delta / (q.t * q.n * q.g) + 2.0 * q.t * q.n * q.g / q.delta
}
