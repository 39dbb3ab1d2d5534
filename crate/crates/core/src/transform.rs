//! Re-expansion of a Chebyshev polynomial on a subinterval.
//!
//! `T_k(alpha x + beta) = sum_i C_{ik} T_i(x)`, where the columns of `C`
//! obey
//!
//! ```text
//! C_{i,k+1} = 2 beta C_{ik} - C_{i,k-1} + alpha (C_{i+1,k} + eta_i C_{i-1,k})
//! ```
//!
//! with `eta = (0, 2, 1, 1, ...)`, `C_00 = 1`, `C_01 = beta`, `C_11 = alpha`.
//! Only two columns are kept at any time.

use alloc::vec;
use alloc::vec::Vec;

use libm::fma;

use crate::chebpoly::{ChebPoly, IntervalBox};
use crate::dd::Dd;
use crate::error::{invalid, Error, Result};

/// `x -> alpha x + beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap1D {
    pub alpha: f64,
    pub beta: f64,
}

/// Slack allowed on `|alpha| + |beta| <= 1` for maps built from rounded
/// interval endpoints.
const MAP_SLACK: f64 = 1e-14;

impl AffineMap1D {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let m = AffineMap1D { alpha, beta };
        m.validate()?;
        Ok(m)
    }

    pub const IDENTITY: AffineMap1D = AffineMap1D { alpha: 1.0, beta: 0.0 };

    /// Map whose image of `[-1, 1]` is `[lo, hi]`, rounded so that the image
    /// contains `[lo, hi]`.
    pub fn onto(lo: f64, hi: f64) -> Self {
        if lo == -1.0 && hi == 1.0 {
            return AffineMap1D::IDENTITY;
        }
        let beta = 0.5 * lo + 0.5 * hi;
        let up = Dd::from_f64(hi).sub(Dd::from_f64(beta)).ceil_f64();
        let down = Dd::from_f64(beta).sub(Dd::from_f64(lo)).ceil_f64();
        AffineMap1D { alpha: up.max(down), beta }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha == 1.0 && self.beta == 0.0
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite()) || self.alpha == 0.0 {
            return Err(invalid("affine map needs finite alpha != 0 and finite beta"));
        }
        if self.alpha.abs() + self.beta.abs() > 1.0 + MAP_SLACK {
            return Err(invalid("affine map must send [-1, 1] into itself (|alpha| + |beta| <= 1)"));
        }
        Ok(())
    }
}

/// Rolling generator of the columns of `C(alpha, beta)`.
pub struct TransformColumns {
    alpha: f64,
    beta: f64,
    prev: Vec<f64>,
    cur: Vec<f64>,
    k: usize,
}

impl TransformColumns {
    /// Starts at column 0.
    pub fn new(map: AffineMap1D) -> Self {
        TransformColumns { alpha: map.alpha, beta: map.beta, prev: Vec::new(), cur: vec![1.0], k: 0 }
    }

    /// Index of the current column.
    pub fn index(&self) -> usize {
        self.k
    }

    /// Entries `C_{0,k}..C_{k,k}` of the current column.
    pub fn column(&self) -> &[f64] {
        &self.cur
    }

    pub fn advance(&mut self) {
        let (a, b) = (self.alpha, self.beta);
        let k = self.k;
        let mut next = vec![0.0; k + 2];
        if k == 0 {
            next[0] = b;
            next[1] = a;
        } else {
            let cur = &self.cur;
            let prev = &self.prev;
            let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
            for (i, slot) in next.iter_mut().enumerate() {
                let up = at(cur, i + 1);
                let down = match i {
                    0 => 0.0,
                    1 => 2.0 * cur[0],
                    _ => at(cur, i - 1),
                };
                // two roundings per entry instead of four
                *slot = fma(a, up + down, fma(2.0 * b, at(cur, i), -at(prev, i)));
            }
        }
        self.prev = core::mem::replace(&mut self.cur, next);
        self.k += 1;
    }
}

/// Re-expand `p` in coordinate `dim` under `map`. No trimming.
pub fn transform_dim(p: &ChebPoly, dim: usize, map: AffineMap1D) -> Result<ChebPoly> {
    if dim >= p.dims() {
        return Err(Error::DimensionMismatch { expected: p.dims(), found: dim });
    }
    map.validate()?;
    if map.is_identity() {
        return Ok(p.clone());
    }
    Ok(apply(p, dim, map))
}

pub(crate) fn apply(p: &ChebPoly, dim: usize, map: AffineMap1D) -> ChebPoly {
    let shape = p.shape();
    let len = shape[dim];
    let inner: usize = shape[dim + 1..].iter().product();
    let outer: usize = shape[..dim].iter().product();
    let src = p.coeffs();
    let mut out = vec![0.0; src.len()];
    let mut cols = TransformColumns::new(map);
    for j in 0..len {
        if j > 0 {
            cols.advance();
        }
        let col = cols.column();
        if inner == 1 {
            for o in 0..outer {
                let base = o * len;
                let f = src[base + j];
                for (t, &c) in out[base..base + col.len()].iter_mut().zip(col) {
                    *t += c * f;
                }
            }
            continue;
        }
        for o in 0..outer {
            let base = o * len * inner;
            let from = &src[base + j * inner..base + (j + 1) * inner];
            for (i, &c) in col.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let to = &mut out[base + i * inner..base + (i + 1) * inner];
                for (t, f) in to.iter_mut().zip(from) {
                    *t += c * f;
                }
            }
        }
    }
    ChebPoly::from_parts_unchecked(p.degrees().to_vec(), out)
}

/// `sum_k (k_dim + 1) |a_k|`; times the per-entry error of `C` this bounds
/// the rounding error of [`transform_dim`] in the sup norm.
pub(crate) fn weighted_mass(p: &ChebPoly, dim: usize) -> f64 {
    p.slab_sums(dim).iter().enumerate().map(|(k, s)| (k + 1) as f64 * s).sum()
}

/// Re-expand `p` on the subbox `sub` of `[-1, 1]^n`.
pub fn rescale(p: &ChebPoly, sub: &IntervalBox) -> Result<ChebPoly> {
    if sub.dims() != p.dims() {
        return Err(Error::DimensionMismatch { expected: p.dims(), found: sub.dims() });
    }
    if sub.lower().iter().any(|&l| l < -1.0) || sub.upper().iter().any(|&u| u > 1.0) {
        return Err(invalid("rescale box must lie inside [-1, 1]^n"));
    }
    let mut q = p.clone();
    for dim in 0..p.dims() {
        let map = AffineMap1D::onto(sub.lower()[dim], sub.upper()[dim]);
        q = transform_dim(&q, dim, map)?;
    }
    Ok(q)
}

/// Re-expand in every coordinate, trim, and report the added error:
/// `eps_c * weighted_mass` per transformed coordinate plus the trimmed mass.
pub(crate) fn rescale_charged(p: &ChebPoly, maps: &[AffineMap1D], eps_c: f64, trim_rel: f64) -> (ChebPoly, f64) {
    let mut q = p.clone();
    let mut charge = 0.0;
    for (dim, map) in maps.iter().enumerate() {
        if map.is_identity() {
            continue;
        }
        charge += eps_c * weighted_mass(&q, dim);
        q = apply(&q, dim, *map);
    }
    let (q, removed) = q.trim(trim_rel * q.coeff_bound());
    (q, charge + removed)
}

/// Numerical degree of `T_n(alpha x + beta)`: the largest `i` with
/// `|C_{i,n}| > tol`.
pub fn degree_after(map: AffineMap1D, n: usize, tol: f64) -> usize {
    let mut cols = TransformColumns::new(map);
    while cols.index() < n {
        cols.advance();
    }
    cols.column().iter().rposition(|c| c.abs() > tol).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_example() {
        let p = ChebPoly::univariate(vec![0.0, 1.0]).unwrap();
        let q = transform_dim(&p, 0, AffineMap1D::new(0.5, 0.25).unwrap()).unwrap();
        assert_eq!(q.coeffs(), &[0.25, 0.5]);
    }

    #[test]
    fn identity_is_noop() {
        let p = ChebPoly::univariate(vec![0.0, 0.0, 1.0]).unwrap();
        let q = transform_dim(&p, 0, AffineMap1D::IDENTITY).unwrap();
        assert_eq!(q, p);
        assert_eq!(rescale(&p, &IntervalBox::unit(1)).unwrap(), p);
    }

    #[test]
    fn rescale_x_onto_right_half() {
        let p = ChebPoly::univariate(vec![0.0, 1.0]).unwrap();
        let q = rescale(&p, &IntervalBox::new(vec![0.0], vec![1.0]).unwrap()).unwrap();
        assert_eq!(q.coeffs(), &[0.5, 0.5]);
    }

    #[test]
    fn invalid_map_rejected() {
        assert!(AffineMap1D::new(0.8, 0.5).is_err());
        assert!(AffineMap1D::new(0.0, 0.5).is_err());
    }

    #[test]
    fn onto_covers_interval() {
        let (lo, hi) = (0.0594, 1.0);
        let m = AffineMap1D::onto(lo, hi);
        let l = Dd::from_f64(m.beta).sub(Dd::from_f64(m.alpha));
        let h = Dd::from_f64(m.beta).add(Dd::from_f64(m.alpha));
        assert!(l.sub(Dd::from_f64(lo)).hi <= 0.0);
        assert!(h.sub(Dd::from_f64(hi)).hi >= 0.0);
    }

    #[test]
    fn degree_after_identity() {
        assert_eq!(degree_after(AffineMap1D::IDENTITY, 37, f64::EPSILON), 37);
    }

    #[test]
    fn columns_known_values() {
        // T_2(a x + b) = 2(a x + b)^2 - 1 = (a^2 + 2b^2 - 1) + 4ab T_1 + a^2 T_2
        let (a, b) = (0.5, 0.25);
        let mut c = TransformColumns::new(AffineMap1D { alpha: a, beta: b });
        c.advance();
        c.advance();
        assert_eq!(c.column(), &[a * a + 2.0 * b * b - 1.0, 4.0 * a * b, a * a]);
    }
}
