//! Chebyshev proxies with error bounds for functions on a box.

use alloc::vec;
use alloc::vec::Vec;

use crate::chebpoly::{ChebPoly, IntervalBox, Odometer};
use crate::dct::{cos_pi_ratio, values_to_coeffs};
use crate::dd::Axis;
use crate::error::{invalid, Error, Result};
use crate::solve::SolveConfig;
use crate::MACHINE_EPSILON;

/// A function `R^n -> R` to be approximated.
pub trait TargetFunction: Send + Sync {
    fn arity(&self) -> usize;

    fn eval(&self, x: &[f64]) -> f64;

    /// A ready-made proxy on `bbox`, skipping sampling. Inputs that are
    /// already polynomials return `Some`.
    fn chebyshev_proxy(&self, _bbox: &IntervalBox, _cfg: &SolveConfig) -> Option<Result<ApproxResult>> {
        None
    }
}

/// Wraps a closure as a [`TargetFunction`].
pub struct FnTarget<F> {
    arity: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> f64 + Send + Sync> FnTarget<F> {
    pub fn new(arity: usize, f: F) -> Self {
        FnTarget { arity, f }
    }
}

impl<F: Fn(&[f64]) -> f64 + Send + Sync> TargetFunction for FnTarget<F> {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

impl<T: TargetFunction + ?Sized> TargetFunction for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }

    fn chebyshev_proxy(&self, bbox: &IntervalBox, cfg: &SolveConfig) -> Option<Result<ApproxResult>> {
        (**self).chebyshev_proxy(bbox, cfg)
    }
}

impl<T: TargetFunction + ?Sized> TargetFunction for alloc::boxed::Box<T> {
    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }

    fn chebyshev_proxy(&self, bbox: &IntervalBox, cfg: &SolveConfig) -> Option<Result<ApproxResult>> {
        (**self).chebyshev_proxy(bbox, cfg)
    }
}

/// A proxy `poly` on `[-1, 1]^n` with `max |f - poly| <= eps` on the box.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub poly: ChebPoly,
    pub eps: f64,
    /// Function evaluations spent.
    pub evals: usize,
}

/// `cos(j pi / d)` for `j = 0..=d`, from 1 down to -1.
pub fn chebyshev_points(d: usize) -> Vec<f64> {
    if d == 0 {
        return vec![1.0];
    }
    (0..=d).map(|j| cos_pi_ratio(j as i64, d)).collect()
}

struct Sampler<'a, F: ?Sized> {
    f: &'a F,
    axes: Vec<Axis>,
    evals: usize,
}

impl<'a, F: TargetFunction + ?Sized> Sampler<'a, F> {
    fn new(f: &'a F, bbox: &IntervalBox) -> Result<Self> {
        if f.arity() != bbox.dims() {
            return Err(Error::DimensionMismatch { expected: bbox.dims(), found: f.arity() });
        }
        let axes = bbox.lower().iter().zip(bbox.upper()).map(|(&lo, &hi)| Axis::from_interval(lo, hi)).collect();
        Ok(Sampler { f, axes, evals: 0 })
    }

    /// Samples on the tensor grid of mapped Chebyshev points. When `reuse`
    /// holds the grid for the same degrees except `dim` halved, the nodes
    /// with an even index in `dim` are copied instead of re-evaluated.
    fn grid(&mut self, degrees: &[usize], reuse: Option<(&[usize], &[f64], usize)>) -> Result<Vec<f64>> {
        let nodes: Vec<Vec<f64>> = degrees
            .iter()
            .zip(&self.axes)
            .map(|(&d, ax)| chebyshev_points(d).into_iter().map(|t| ax.map(t).to_f64()).collect())
            .collect();
        let shape: Vec<usize> = degrees.iter().map(|d| d + 1).collect();
        let total: usize = shape.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut x = vec![0.0; degrees.len()];
        let mut odo = Odometer::new(&shape);
        while let Some(idx) = odo.next_index() {
            if let Some((old_deg, old_vals, dim)) = reuse {
                if idx[dim] % 2 == 0 {
                    let mut flat = 0;
                    for (k, (&i, &d)) in idx.iter().zip(old_deg).enumerate() {
                        let i = if k == dim { i / 2 } else { i };
                        flat = flat * (d + 1) + i;
                    }
                    out.push(old_vals[flat]);
                    continue;
                }
            }
            for (k, &i) in idx.iter().enumerate() {
                x[k] = nodes[k][i];
            }
            let v = self.f.eval(&x);
            self.evals += 1;
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { point: x.clone(), value: v });
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// Chebyshev coefficients of the interpolant through a sample grid.
pub(crate) fn interpolate_values(mut values: Vec<f64>, degrees: &[usize]) -> ChebPoly {
    let shape: Vec<usize> = degrees.iter().map(|d| d + 1).collect();
    values_to_coeffs(&mut values, &shape);
    ChebPoly::from_parts_unchecked(degrees.to_vec(), values)
}

/// Interpolant of `f` at the mapped Chebyshev grid of the given degrees,
/// expressed on `[-1, 1]^n`.
pub fn interpolate<F: TargetFunction + ?Sized>(f: &F, degrees: &[usize], bbox: &IntervalBox) -> Result<ChebPoly> {
    if degrees.len() != bbox.dims() {
        return Err(Error::DimensionMismatch { expected: bbox.dims(), found: degrees.len() });
    }
    let mut s = Sampler::new(f, bbox)?;
    let vals = s.grid(degrees, None)?;
    Ok(interpolate_values(vals, degrees))
}

/// Numerical degree of `f` in each coordinate on `bbox`.
///
/// `tol` is absolute; [`approximate`] passes `approx_rel_tol` times the
/// largest sample on the initial grid.
pub fn find_degrees<F: TargetFunction + ?Sized>(
    f: &F,
    bbox: &IntervalBox,
    tol: f64,
    cfg: &SolveConfig,
) -> Result<Vec<usize>> {
    if !(tol > 0.0) {
        return Err(invalid("degree search tolerance must be positive"));
    }
    let mut s = Sampler::new(f, bbox)?;
    (0..bbox.dims()).map(|i| search_dim(&mut s, i, tol, cfg)).collect()
}

const START_DEGREE: usize = 8;
const HOLD_DEGREE: usize = 5;

fn search_dim<F: TargetFunction + ?Sized>(
    s: &mut Sampler<'_, F>,
    i: usize,
    tol: f64,
    cfg: &SolveConfig,
) -> Result<usize> {
    let n = s.axes.len();
    let mut degs = vec![HOLD_DEGREE; n];
    degs[i] = START_DEGREE;
    let mut vals = s.grid(&degs, None)?;
    loop {
        let d = degs[i];
        let p = interpolate_values(vals.clone(), &degs);
        let prof = p.slab_maxima(i);
        if prof[d + 1 - 5..].iter().all(|&c| c <= tol) {
            let mut degs2 = degs.clone();
            degs2[i] = 2 * d + 1;
            let q = interpolate_values(s.grid(&degs2, None)?, &degs2);
            let shape = q.shape();
            let mut odo = Odometer::new(&shape);
            let mut diff = 0.0;
            let mut flat = 0;
            while let Some(idx) = odo.next_index() {
                diff += (q.coeffs()[flat] - p.coeff(idx)).abs();
                flat += 1;
            }
            if diff / (p.coeffs().len() as f64) < tol {
                return Ok(plateau_degree(&q.slab_maxima(i), d));
            }
        }
        let next = 2 * d;
        if next > cfg.degree_cap {
            return Err(Error::DegreeCapExceeded { dim: i, cap: cfg.degree_cap });
        }
        let mut degs_next = degs.clone();
        degs_next[i] = next;
        vals = s.grid(&degs_next, Some((&degs, &vals, i)))?;
        degs = degs_next;
    }
}

/// Last index above twice the noise level seen at indices `>= 3d/2`.
fn plateau_degree(profile: &[f64], d: usize) -> usize {
    let start = (3 * d).div_ceil(2);
    let top = profile.iter().copied().fold(0.0, f64::max);
    let noise = profile[start.min(profile.len() - 1)..].iter().copied().fold(0.0, f64::max);
    let plateau = (2.0 * noise).max(32.0 * MACHINE_EPSILON * top);
    profile.iter().rposition(|&c| c > plateau).unwrap_or(0)
}

/// Geometric tail estimate `|a_d| / (rho - 1)` with
/// `rho = |a_m / a_d|^(1/(d-m))`, `a_m` the largest coefficient. In several
/// dimensions the profile along each axis is the per-index sum of `|a_k|`,
/// and the per-axis estimates are added.
pub fn error_bound(p: &ChebPoly, rho_margin: f64) -> Result<f64> {
    let mut total = 0.0;
    for dim in 0..p.dims() {
        let s = p.slab_sums(dim);
        let d = s.len() - 1;
        if d == 0 || s[d] == 0.0 {
            continue;
        }
        let mut m = 0;
        for (k, &v) in s.iter().enumerate() {
            if v > s[m] {
                m = k;
            }
        }
        if m == d {
            return Err(Error::UnreliableBound { dim, rho: 1.0 });
        }
        let rho = libm::pow(s[m] / s[d], 1.0 / (d - m) as f64);
        if !(rho > 1.0 + rho_margin) {
            return Err(Error::UnreliableBound { dim, rho });
        }
        total += s[d] / (rho - 1.0);
    }
    Ok(total)
}

/// Build a proxy for `f` on `bbox`.
///
/// Degrees come from [`find_degrees`]. The returned polynomial is the
/// leading block of an interpolant of degree `max(2 d_i + 1, 9)`, so its
/// error bound is the measured mass beyond `d_i`, twice the geometric tail
/// estimate beyond the larger interpolant (aliasing), a rounding term for
/// the samples, and the trimmed mass.
pub fn approximate<F: TargetFunction + ?Sized>(f: &F, bbox: &IntervalBox, cfg: &SolveConfig) -> Result<ApproxResult> {
    if let Some(r) = f.chebyshev_proxy(bbox, cfg) {
        return r;
    }
    let n = bbox.dims();
    let mut s = Sampler::new(f, bbox)?;
    let mut init = vec![HOLD_DEGREE; n];
    init[0] = START_DEGREE;
    let fmax0 = s.grid(&init, None)?.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = if fmax0 > 0.0 { cfg.approx_rel_tol * fmax0 } else { cfg.approx_rel_tol };
    let degrees = (0..n).map(|i| search_dim(&mut s, i, tol, cfg)).collect::<Result<Vec<_>>>()?;

    let big: Vec<usize> = degrees.iter().map(|&d| (2 * d + 1).max(9)).collect();
    let vals = s.grid(&big, None)?;
    let fmax = vals.iter().fold(fmax0, |m, v| m.max(v.abs()));
    let q = interpolate_values(vals, &big);
    let lebesgue: f64 = big.iter().map(|&d| 1.0 + (2.0 / core::f64::consts::PI) * libm::log((d + 1) as f64)).product();
    let mut eps =
        q.mass_outside(&degrees) + 2.0 * error_bound(&q, cfg.rho_margin)? + 4.0 * MACHINE_EPSILON * fmax * lebesgue;
    let p = q.leading_block(&degrees);
    let (p, trimmed) = p.trim(cfg.trim_rel_tol * p.coeff_bound());
    eps += trimmed;
    Ok(ApproxResult { poly: p, eps, evals: s.evals })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolveConfig {
        SolveConfig::default()
    }

    #[test]
    fn points_examples() {
        assert_eq!(chebyshev_points(2), vec![1.0, 0.0, -1.0]);
        assert_eq!(chebyshev_points(1), vec![1.0, -1.0]);
        assert_eq!(chebyshev_points(0), vec![1.0]);
        let p = chebyshev_points(4);
        for j in 0..=4 {
            assert_eq!(p[j], -p[4 - j]);
        }
    }

    #[test]
    fn interpolate_reproduces_low_degree() {
        let f = FnTarget::new(1, |x: &[f64]| 4.0 * x[0].powi(3) - 3.0 * x[0]);
        let p = interpolate(&f, &[3], &IntervalBox::unit(1)).unwrap();
        for (c, e) in p.coeffs().iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((c - e).abs() < 1e-14);
        }
        let g = FnTarget::new(1, |x: &[f64]| x[0]);
        let p = interpolate(&g, &[1], &IntervalBox::unit(1)).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 1.0]);
    }

    #[test]
    fn interpolate_surfaces_nonfinite() {
        let f = FnTarget::new(1, |x: &[f64]| 1.0 / x[0]);
        let r = interpolate(&f, &[2], &IntervalBox::unit(1));
        match r {
            Err(Error::NonFiniteValue { point, .. }) => assert_eq!(point, vec![0.0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degrees_of_simple_functions() {
        let unit = IntervalBox::unit(1);
        let c = FnTarget::new(1, |_: &[f64]| 7.0);
        assert_eq!(find_degrees(&c, &unit, 7e-10, &cfg()).unwrap(), vec![0]);
        let cube = FnTarget::new(1, |x: &[f64]| x[0] * x[0] * x[0]);
        assert_eq!(find_degrees(&cube, &unit, 1e-10, &cfg()).unwrap(), vec![3]);
    }

    #[test]
    fn error_bound_examples() {
        let d = 12;
        let p = ChebPoly::univariate((0..=d).map(|k| libm::pow(2.0, -(k as f64))).collect()).unwrap();
        let e = error_bound(&p, 1e-3).unwrap();
        assert!((e - libm::pow(2.0, -(d as f64))).abs() < 1e-15);

        let p = ChebPoly::univariate(vec![1.0, 0.1, 0.01, 0.001]).unwrap();
        let e = error_bound(&p, 1e-3).unwrap();
        assert!((e - 0.001 / 9.0).abs() < 1e-15);

        let flat = ChebPoly::univariate(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(error_bound(&flat, 1e-3), Err(Error::UnreliableBound { .. })));
    }

    #[test]
    fn approximate_linear_on_shifted_box() {
        let f = FnTarget::new(1, |x: &[f64]| 2.0 * x[0] + 1.0);
        let r = approximate(&f, &IntervalBox::new(vec![0.0], vec![1.0]).unwrap(), &cfg()).unwrap();
        assert_eq!(r.poly.degrees(), &[1]);
        assert!((r.poly.coeffs()[0] - 2.0).abs() < 1e-15);
        assert!((r.poly.coeffs()[1] - 1.0).abs() < 1e-15);
        assert!(r.eps <= 1e-14, "eps = {}", r.eps);
    }

    #[test]
    fn approximate_product() {
        let f = FnTarget::new(2, |x: &[f64]| x[0] * x[1]);
        let r = approximate(&f, &IntervalBox::unit(2), &cfg()).unwrap();
        assert_eq!(r.poly.degrees(), &[1, 1]);
        assert!((r.poly.coeff(&[1, 1]) - 1.0).abs() < 1e-15);
        assert!(r.poly.coeff(&[0, 0]).abs() < 1e-15);
    }

    #[test]
    fn approximate_sin_bound_holds() {
        let f = FnTarget::new(1, |x: &[f64]| libm::sin(x[0]));
        let r = approximate(&f, &IntervalBox::unit(1), &cfg()).unwrap();
        assert!(r.eps <= 1e-13, "eps = {}", r.eps);
        for k in 0..=2000 {
            let x = -1.0 + k as f64 / 1000.0;
            let err = (libm::sin(x) - r.poly.evaluate(&[x]).unwrap()).abs();
            assert!(err <= r.eps, "x={x} err={err} eps={}", r.eps);
        }
    }
}
