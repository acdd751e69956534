//! Integer-order Bessel functions of the first kind.
//!
//! `J_n(x)` is evaluated for a whole range of orders at once with Miller's
//! backward recurrence, normalised through `J_0 + 2 sum_k J_{2k} = 1`. The
//! Green function of the tight-binding chain needs every order up to well past
//! the turning point `|n| ~ x`, which is exactly where forward recurrence is
//! unstable and backward recurrence is not.

/// Values above this are rescaled during the downward sweep.
const RESCALE_ABOVE: f64 = 1.0e250;

/// `J_0(x) ..= J_{n_max}(x)`.
pub fn bessel_j_orders(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = n_max.max(ax.ceil() as usize);
    // Start well above both the requested order and the turning point.
    let mut start = top + 20 + (40.0 * top as f64).sqrt() as usize;
    if start % 2 == 1 {
        start += 1;
    }

    let two_over_x = 2.0 / ax;
    let mut j_next = 0.0; // J_{m+1}
    let mut j_cur = 1.0e-30; // J_m, arbitrary seed
    let mut norm = 0.0;
    for m in (1..=start).rev() {
        if m <= n_max {
            out[m] = j_cur;
        }
        if m % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        let j_prev = (m as f64) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            j_cur *= s;
            j_next *= s;
            norm *= s;
            rescale_tail(&mut out, m, s);
        }
    }
    // j_cur now holds the unnormalised J_0.
    out[0] = j_cur;
    norm += j_cur;
    let inv = 1.0 / norm;
    for v in out.iter_mut() {
        *v *= inv;
    }
    if x < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// Orders `>= m` already stored in `out` follow every rescale of the sweep.
fn rescale_tail(out: &mut [f64], m: usize, s: f64) {
    if m < out.len() {
        for v in out[m..].iter_mut() {
            *v *= s;
        }
    }
}

/// `J_n(x)` for any integer order, using `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let v = bessel_j_orders(m, x)[m];
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Table of `J_n(x)` for `n` in `-n_max..=n_max`, indexed by `n + n_max`.
pub fn bessel_j_symmetric(n_max: usize, x: f64) -> Vec<f64> {
    let pos = bessel_j_orders(n_max, x);
    let mut out = Vec::with_capacity(2 * n_max + 1);
    for m in (1..=n_max).rev() {
        out.push(if m % 2 == 1 { -pos[m] } else { pos[m] });
    }
    out.extend_from_slice(&pos);
    out
}
