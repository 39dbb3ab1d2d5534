//! Linear interval reduction and the base-case test.

use alloc::vec;
use alloc::vec::Vec;

use super::SolveConfig;
use crate::chebpoly::{check_system, ChebPoly, IntervalBox, LowOrder};
use crate::dd::{next_down, next_up};
use crate::error::Result;
use crate::linalg::{invert, norm1};
use crate::MACHINE_EPSILON;

/// Outcome of a reduction on `[-1, 1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Reduction {
    /// All zeros lie in this subbox.
    Box(IntervalBox),
    /// No zero in `[-1, 1]^n`.
    Excluded,
    /// The linear system is singular or too poorly conditioned to use.
    NoProgress,
}

/// A box in local coordinates; `lo[i] <= hi[i]` inside `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Local {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Local {
    pub fn unit(n: usize) -> Self {
        Local { lo: vec![-1.0; n], hi: vec![1.0; n] }
    }

    /// Product of the half widths, i.e. volume relative to `[-1, 1]^n`.
    pub fn volume_ratio(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| 0.5 * (h - l)).product()
    }

    fn intersect(&mut self, other: &Local) -> bool {
        for i in 0..self.lo.len() {
            self.lo[i] = self.lo[i].max(other.lo[i]);
            self.hi[i] = self.hi[i].min(other.hi[i]);
            if !(self.lo[i] <= self.hi[i]) {
                return false;
            }
        }
        true
    }

    /// Widen coordinates narrower than `2 * half` to that width, staying
    /// inside `[-1, 1]`.
    pub fn widen_to(&mut self, half: f64) {
        for i in 0..self.lo.len() {
            if self.hi[i] - self.lo[i] < 2.0 * half {
                let c = 0.5 * (self.lo[i] + self.hi[i]);
                let (mut l, mut h) = (c - half, c + half);
                if l < -1.0 {
                    l = -1.0;
                    h = -1.0 + 2.0 * half;
                }
                if h > 1.0 {
                    h = 1.0;
                    l = 1.0 - 2.0 * half;
                }
                self.lo[i] = l;
                self.hi[i] = h;
            }
        }
    }

    fn to_box(&self) -> IntervalBox {
        IntervalBox::closed(self.lo.clone(), self.hi.clone()).expect("local box is valid")
    }
}

pub(crate) enum Reduced {
    Box(Local),
    Excluded,
    NoProgress,
}

/// Bounds from one polynomial and one coordinate at a time: with every other
/// term moved into the remainder, `|A_ij x_j + B_i| <= R_ij`.
pub fn reduce_single(polys: &[ChebPoly], eps: &[f64]) -> Result<Reduction> {
    check_system(polys, eps)?;
    let lows: Vec<LowOrder> = polys.iter().map(|p| p.low_order()).collect();
    Ok(match single(&lows, eps) {
        Some(b) => Reduction::Box(b.to_box()),
        None => Reduction::Excluded,
    })
}

pub(crate) fn single(lows: &[LowOrder], eps: &[f64]) -> Option<Local> {
    let n = lows.len();
    let mut out = Local::unit(n);
    let inflate = 1.0 + 4.0 * (n + 2) as f64 * MACHINE_EPSILON;
    for (lo, &e) in lows.iter().zip(eps) {
        let lin_mass: f64 = lo.linear.iter().map(|a| a.abs()).sum();
        for (j, &a) in lo.linear.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let r = (e + lo.mass_deg2 + (lin_mass - a.abs())).max(0.0) * inflate;
            let b = lo.constant;
            let (mut l, mut h) = ((-r - b) / a, (r - b) / a);
            if a < 0.0 {
                core::mem::swap(&mut l, &mut h);
            }
            let l = next_down(l);
            let h = next_up(h);
            if !(l.is_finite() && h.is_finite()) {
                continue;
            }
            out.lo[j] = out.lo[j].max(l);
            out.hi[j] = out.hi[j].min(h);
            if !(out.lo[j] <= out.hi[j]) {
                return None;
            }
        }
    }
    Some(out)
}

/// The box centred at `-A^{-1} B` with half widths `sum_k |A^{-1}_ik| E_k`,
/// after scaling the columns of `A` by powers of two so that each column
/// maximum lies in `[1/2, 1)`.
pub fn reduce_full(polys: &[ChebPoly], eps: &[f64], cfg: &SolveConfig) -> Result<Reduction> {
    check_system(polys, eps)?;
    let lows: Vec<LowOrder> = polys.iter().map(|p| p.low_order()).collect();
    let e: Vec<f64> = lows.iter().zip(eps).map(|(l, e)| e + l.mass_deg2).collect();
    Ok(match full(&lows, &e, cfg.condition_cap).0 {
        Reduced::Box(b) => Reduction::Box(b.to_box()),
        Reduced::Excluded => Reduction::Excluded,
        Reduced::NoProgress => Reduction::NoProgress,
    })
}

/// Returns the clipped box together with the unclipped half widths.
pub(crate) fn full(lows: &[LowOrder], e: &[f64], cond_cap: f64) -> (Reduced, Vec<f64>) {
    let n = lows.len();
    let mut a = vec![0.0; n * n];
    let mut scale = vec![0.0; n];
    for j in 0..n {
        let cmax = (0..n).map(|i| lows[i].linear[j].abs()).fold(0.0, f64::max);
        if cmax == 0.0 || !cmax.is_finite() {
            return (Reduced::NoProgress, Vec::new());
        }
        let (_, ex) = libm::frexp(cmax);
        scale[j] = libm::ldexp(1.0, -ex);
        for i in 0..n {
            a[i * n + j] = lows[i].linear[j] * scale[j];
        }
    }
    let Some(y) = invert(&a, n) else {
        return (Reduced::NoProgress, Vec::new());
    };
    let cond = norm1(&a, n) * norm1(&y, n);
    if !(cond <= cond_cap) {
        return (Reduced::NoProgress, Vec::new());
    }
    // |I - Y A| bounds the error of using Y in place of the exact inverse.
    let mut resid = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = if i == j { 1.0 } else { 0.0 };
            let mut mag = s;
            for k in 0..n {
                let t = y[i * n + k] * a[k * n + j];
                s -= t;
                mag += t.abs();
            }
            resid[i * n + j] = s.abs() + 2.0 * (n + 1) as f64 * MACHINE_EPSILON * mag;
        }
    }
    let mut out = Local::unit(n);
    let mut halves = vec![0.0; n];
    let mut excluded = false;
    for i in 0..n {
        let mut c = 0.0;
        let mut cmag = 0.0;
        let mut hw = 0.0;
        for k in 0..n {
            let yk = y[i * n + k];
            c -= yk * lows[k].constant;
            cmag += (yk * lows[k].constant).abs();
            hw += yk.abs() * e[k];
        }
        for j in 0..n {
            hw += resid[i * n + j] / scale[j];
        }
        let c = c * scale[i];
        let mut hw = hw * scale[i];
        hw += 4.0 * (n + 1) as f64 * MACHINE_EPSILON * (cmag * scale[i] + hw);
        if !(c.is_finite() && hw.is_finite()) {
            return (Reduced::NoProgress, Vec::new());
        }
        halves[i] = hw;
        let l = next_down(c - hw);
        let h = next_up(c + hw);
        out.lo[i] = l.max(-1.0);
        out.hi[i] = h.min(1.0);
        if !(out.lo[i] <= out.hi[i]) {
            excluded = true;
        }
    }
    if excluded {
        (Reduced::Excluded, halves)
    } else {
        (Reduced::Box(out), halves)
    }
}

/// Both reductions, intersected, then widened to the minimum local width.
pub(crate) fn reduction_method(lows: &[LowOrder], eps: &[f64], cfg: &SolveConfig) -> Reduced {
    let Some(mut b) = single(lows, eps) else {
        return Reduced::Excluded;
    };
    let e: Vec<f64> = lows.iter().zip(eps).map(|(l, e)| e + l.mass_deg2).collect();
    match full(lows, &e, cfg.condition_cap).0 {
        Reduced::Excluded => return Reduced::Excluded,
        Reduced::Box(f) => {
            if !b.intersect(&f) {
                return Reduced::Excluded;
            }
        }
        Reduced::NoProgress => {}
    }
    b.widen_to(MIN_LOCAL_HALF);
    Reduced::Box(b)
}

/// Smallest half width a reduced box may have in local coordinates.
pub(crate) const MIN_LOCAL_HALF: f64 = 2.0 * MACHINE_EPSILON;

/// Whether `eps`, rather than the higher-order terms, now limits shrinking:
/// the reduction with the remainders dropped (`E_i = eps_i`) leaves every
/// coordinate at more than `base_case_shrink_cap` of its width.
pub fn base_case_check(polys: &[ChebPoly], eps: &[f64], cfg: &SolveConfig) -> Result<bool> {
    check_system(polys, eps)?;
    let lows: Vec<LowOrder> = polys.iter().map(|p| p.low_order()).collect();
    Ok(base_case(&lows, eps, cfg))
}

pub(crate) fn base_case(lows: &[LowOrder], eps: &[f64], cfg: &SolveConfig) -> bool {
    match full(lows, eps, cfg.condition_cap).0 {
        Reduced::Box(b) => b.lo.iter().zip(&b.hi).all(|(l, h)| 0.5 * (h - l) > cfg.base_case_shrink_cap),
        Reduced::Excluded => false,
        // No usable linear part: stop once some eps is comparable to the
        // variation of its polynomial.
        Reduced::NoProgress => lows.iter().zip(eps).any(|(lo, &e)| e >= cfg.base_case_shrink_cap * lo.mass_nonconst),
    }
}

/// Whether the higher-order terms are still comparable to the linear part
/// on a box that has reached the base case, which happens at multiple roots.
pub(crate) fn looks_multiple(lows: &[LowOrder], cfg: &SolveConfig) -> bool {
    let e: Vec<f64> = lows.iter().map(|l| l.mass_deg2).collect();
    match full(lows, &e, cfg.condition_cap) {
        (Reduced::NoProgress, _) => true,
        (_, halves) => halves.iter().any(|&h| h > MULTIPLE_ROOT_SCALING),
    }
}

const MULTIPLE_ROOT_SCALING: f64 = 0.1;
