//! Bessel functions of the first kind, integer order.
//!
//! Small arguments (`|x| < 4`) use the ascending series; larger ones use
//! Miller's downward recurrence normalised by `J₀ + 2Σ J_{2k} = 1`.
//! Negative orders follow from `J_{−q}(x) = (−1)^q J_q(x)`.

use crate::error::{Error, Result};

/// Largest supported `|q|`.
pub const MAX_ORDER: i64 = 1024;
/// Largest supported `|x|`.
pub const MAX_ARGUMENT: f64 = 1.0e4;

const SERIES_LIMIT: f64 = 4.0;
const RESCALE_ABOVE: f64 = 1.0e250;
const RESCALE_BY: f64 = 1.0e-250;

/// An integer Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(pub i64);

impl From<i64> for BesselOrder {
    fn from(q: i64) -> Self {
        BesselOrder(q)
    }
}

fn check(q: i64, x: f64) -> Result<()> {
    if q.abs() > MAX_ORDER || !x.is_finite() || x.abs() > MAX_ARGUMENT {
        return Err(Error::BesselRange { order: q, x });
    }
    Ok(())
}

#[inline]
fn parity(q: i64) -> f64 {
    if q & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `J_q(x)`.
pub fn bessel_j(q: impl Into<BesselOrder>, x: f64) -> Result<f64> {
    let q = q.into().0;
    check(q, x)?;
    let n = q.unsigned_abs() as usize;
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x)
    let sign = if q < 0 { parity(q) } else { 1.0 } * if x < 0.0 { parity(q) } else { 1.0 };
    let ax = x.abs();
    let v = if ax < SERIES_LIMIT {
        series(n, ax)
    } else {
        let mut out = vec![0.0; n + 1];
        miller(n, ax, &mut out);
        out[n]
    };
    Ok(sign * v)
}

/// `[J_{−q_max}(x), …, J_{q_max}(x)]`.
pub fn bessel_j_band(q_max: usize, x: f64) -> Result<Vec<f64>> {
    check(q_max as i64, x)?;
    let mut nonneg = vec![0.0; q_max + 1];
    orders_into(q_max, x, &mut nonneg);
    let mut band = Vec::with_capacity(2 * q_max + 1);
    for q in (1..=q_max).rev() {
        band.push(parity(q as i64) * nonneg[q]);
    }
    band.extend_from_slice(&nonneg);
    Ok(band)
}

/// Fills `out[q] = J_q(x)` for `q = 0..out.len()`. Unchecked hot path used
/// by the transform kernels; the caller guarantees the supported range.
pub(crate) fn orders_into(q_top: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() > q_top);
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        for (q, o) in out.iter_mut().enumerate().take(q_top + 1) {
            *o = series(q, ax);
        }
    } else {
        miller(q_top, ax, out);
    }
    if x < 0.0 {
        for (q, o) in out.iter_mut().enumerate().take(q_top + 1) {
            *o *= parity(q as i64);
        }
    }
}

/// Ascending series, `x ≥ 0`.
fn series(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let y = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let nf = n as f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= y / (kf * (kf + nf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Miller's algorithm for `x > 0`, writing orders `0..=q_top`.
fn miller(q_top: usize, x: f64, out: &mut [f64]) {
    let big = (q_top as f64).max(x);
    let start = {
        let m = big + 30.0 + (60.0 * big).sqrt();
        let m = m.ceil() as usize;
        m + (m & 1)
    };
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0;
    let mut j_cur = 1.0e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        if k <= q_top {
            out[k] = j_cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > RESCALE_ABOVE {
            j_cur *= RESCALE_BY;
            j_next *= RESCALE_BY;
            norm *= RESCALE_BY;
            for o in out.iter_mut().take(q_top + 1).skip(k) {
                *o *= RESCALE_BY;
            }
        }
    }
    out[0] = j_cur;
    norm += j_cur;
    let scale = 1.0 / norm;
    for o in out.iter_mut().take(q_top + 1) {
        *o *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        for q in [-3, -1, 1, 2, 7] {
            assert_eq!(bessel_j(q, 0.0).unwrap(), 0.0);
        }
        assert_eq!(bessel_j_band(0, 0.0).unwrap(), vec![1.0]);
        assert_eq!(bessel_j_band(2, 0.0).unwrap(), vec![0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn reflection_is_exact() {
        for &x in &[0.3, 5.0, 13.7, 250.0] {
            for q in 0..20i64 {
                let a = bessel_j(q, x).unwrap();
                let b = bessel_j(-q, x).unwrap();
                assert_eq!(b, if q % 2 == 0 { a } else { -a });
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(bessel_j(2000, 1.0), Err(Error::BesselRange { .. })));
        assert!(matches!(bessel_j(1, 2e4), Err(Error::BesselRange { .. })));
        assert!(bessel_j(1, f64::NAN).is_err());
    }

    #[test]
    fn negative_argument_parity() {
        for q in -5..=5i64 {
            let a = bessel_j(q, 3.3).unwrap();
            let b = bessel_j(q, -3.3).unwrap();
            assert!((b - if q.rem_euclid(2) == 0 { a } else { -a }).abs() < 1e-16);
        }
    }
}
