//! Exclusion checks: certify that a polynomial has no zero within `eps` on
//! `[-1, 1]^n` by letting a low-degree part dominate the rest.

use crate::chebpoly::{ChebPoly, LowOrder};
use crate::MACHINE_EPSILON;

/// `|a_0| > CoeffBound(p - a_0) + eps`.
pub fn constant_term_check(p: &ChebPoly, eps: f64) -> bool {
    constant_excludes(&p.low_order(), eps)
}

pub(crate) fn constant_excludes(lo: &LowOrder, eps: f64) -> bool {
    lo.constant.abs() > lo.mass_nonconst * (1.0 + 4.0 * MACHINE_EPSILON) + eps
}

/// Lower bound for `|q|` over the box, `q` the terms of total degree at
/// most two, against `CoeffBound` of the rest plus `eps`.
pub fn quadratic_check(p: &ChebPoly, eps: f64) -> bool {
    quadratic_excludes(&p.low_order(), eps)
}

pub(crate) fn quadratic_excludes(lo: &LowOrder, eps: f64) -> bool {
    let bound = quadratic_min_abs(lo);
    bound > lo.mass_deg3 * (1.0 + 4.0 * MACHINE_EPSILON) + eps
}

/// Certified lower bound of `min |q|` on `[-1, 1]^n`. The separable part
/// `a_0 + sum_j (b_j x_j + c_j T_2(x_j))` is bounded exactly per coordinate;
/// cross terms `d_jk x_j x_k` contribute `+-sum |d_jk|`.
pub(crate) fn quadratic_min_abs(lo: &LowOrder) -> f64 {
    let mut smin = lo.constant;
    let mut smax = lo.constant;
    let mut scale = lo.constant.abs();
    for (&b, &c) in lo.linear.iter().zip(&lo.square) {
        let (gmin, gmax) = range_1d(b, c);
        smin += gmin;
        smax += gmax;
        scale += b.abs() + c.abs();
    }
    let cross: f64 = lo.cross.iter().map(|d| d.abs()).sum();
    scale += cross;
    let slack = 8.0 * (lo.linear.len() + 2) as f64 * MACHINE_EPSILON * scale;
    let low = smin - cross - slack;
    let high = smax + cross + slack;
    if low > 0.0 {
        low
    } else if high < 0.0 {
        -high
    } else {
        0.0
    }
}

/// Range of `b x + c (2x^2 - 1)` over `[-1, 1]`.
fn range_1d(b: f64, c: f64) -> (f64, f64) {
    let at_plus = b + c;
    let at_minus = -b + c;
    let mut lo = at_plus.min(at_minus);
    let mut hi = at_plus.max(at_minus);
    if c != 0.0 {
        let x = -b / (4.0 * c);
        if x.abs() <= 1.0 {
            let v = b * x + c * (2.0 * x * x - 1.0);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}
