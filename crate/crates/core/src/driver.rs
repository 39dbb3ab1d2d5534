//! The outer loop: approximate every function on a box, solve the proxy
//! system, and re-solve on any result box still larger than
//! [`SolveConfig::max_interval_size`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approximate::{approximate, ApproxResult, TargetFunction};
use crate::chebpoly::{ChebPoly, IntervalBox};
use crate::dd::Axis;
use crate::error::{invalid, Error, Result};
use crate::exec::{Executor, Sequential};
use crate::solve::{cheb_solve_with, Flags, RootRecord, SolveConfig, SolveOutput, SolveStats};
use crate::transform::AffineMap1D;

/// `n` functions of `n` variables to be solved on `bbox`.
pub struct ProxyProblem {
    pub functions: Vec<Box<dyn TargetFunction>>,
    pub bbox: IntervalBox,
    pub cfg: SolveConfig,
}

impl ProxyProblem {
    pub fn new(functions: Vec<Box<dyn TargetFunction>>, bbox: IntervalBox, cfg: SolveConfig) -> Result<Self> {
        let n = bbox.dims();
        if functions.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: functions.len() });
        }
        if let Some(f) = functions.iter().find(|f| f.arity() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: f.arity() });
        }
        cfg.validate()?;
        Ok(ProxyProblem { functions, bbox, cfg })
    }

    pub fn dims(&self) -> usize {
        self.bbox.dims()
    }
}

/// Solve `problem` on one thread. Records carry residuals of the original
/// functions and are sorted by the lower corner of their boxes.
pub fn cheb_proxy_solve(problem: &ProxyProblem) -> Result<SolveOutput> {
    cheb_proxy_solve_with(problem, &Sequential)
}

/// [`cheb_proxy_solve`] with independent subproblems handed to `exec`.
pub fn cheb_proxy_solve_with<E: Executor>(problem: &ProxyProblem, exec: &E) -> Result<SolveOutput> {
    let mut out = solve_box(problem, &problem.bbox, 0, exec)?;
    for r in &mut out.records {
        r.residuals = problem.functions.iter().map(|f| f.eval(&r.point)).collect();
    }
    out.records.sort_by(|a, b| {
        let key = |r: &RootRecord| (r.bounding_box.lower().to_vec(), r.bounding_box.upper().to_vec(), r.point.clone());
        let (ka, kb) = (key(a), key(b));
        cmp_lex(&ka.0, &kb.0).then(cmp_lex(&ka.1, &kb.1)).then(cmp_lex(&ka.2, &kb.2))
    });
    Ok(out)
}

fn cmp_lex(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.total_cmp(y);
        if o.is_ne() {
            return o;
        }
    }
    core::cmp::Ordering::Equal
}

fn solve_box<E: Executor>(problem: &ProxyProblem, bbox: &IntervalBox, depth: usize, exec: &E) -> Result<SolveOutput> {
    let cfg = &problem.cfg;
    let mut polys = Vec::with_capacity(problem.dims());
    let mut eps = Vec::with_capacity(problem.dims());
    let mut evals = 0;
    for f in &problem.functions {
        match approximate(f.as_ref(), bbox, cfg) {
            Ok(r) => {
                evals += r.evals;
                polys.push(r.poly);
                eps.push(r.eps);
            }
            Err(Error::DegreeCapExceeded { .. }) | Err(Error::UnreliableBound { .. }) => {
                return Ok(SolveOutput {
                    records: vec![RootRecord {
                        point: bbox.center(),
                        bounding_box: bbox.clone(),
                        flags: Flags::UNRESOLVED,
                        residuals: Vec::new(),
                    }],
                    stats: SolveStats { function_evals: evals, max_depth: depth, ..SolveStats::default() },
                    exclusions: Vec::new(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let solved = cheb_solve_with(&polys, &eps, bbox, cfg, exec)?;
    let mut stats = solved.stats;
    stats.function_evals += evals;
    let mut exclusions = solved.exclusions;

    let mut keep = Vec::new();
    let mut again: Vec<IntervalBox> = Vec::new();
    for mut r in solved.records {
        if r.bounding_box.size() <= cfg.max_interval_size {
            keep.push(r);
            continue;
        }
        let sub = clip(&r.bounding_box, bbox);
        if sub == *bbox || sub.contains_box(bbox) {
            r.flags.insert(Flags::UNRESOLVED);
            keep.push(r);
        } else if depth >= cfg.max_depth {
            r.flags.insert(Flags::DEPTH_WARNING);
            keep.push(r);
        } else if !again.contains(&sub) {
            again.push(sub);
        }
    }
    let parts = exec.map(again, |b| solve_box(problem, &b, depth + 1, exec));
    for p in parts {
        let p = p?;
        keep.extend(p.records);
        stats.subdivisions += p.stats.subdivisions;
        stats.function_evals += p.stats.function_evals;
        stats.max_depth = stats.max_depth.max(p.stats.max_depth);
        exclusions.extend(p.exclusions);
    }
    exclusions.truncate(cfg.harvest_exclusions);
    Ok(SolveOutput { records: keep, stats, exclusions })
}

fn clip(b: &IntervalBox, to: &IntervalBox) -> IntervalBox {
    let lo: Vec<f64> = b.lower().iter().zip(to.lower()).map(|(a, c)| a.max(*c)).collect();
    let hi: Vec<f64> = b.upper().iter().zip(to.upper()).zip(&lo).map(|((a, c), l)| a.min(*c).max(*l)).collect();
    IntervalBox::closed(lo, hi).expect("clipped box is ordered")
}

/// `f_i(point_j)` for every function and point; row `j` holds point `j`.
pub fn residuals(problem: &ProxyProblem, points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points.iter().map(|p| problem.functions.iter().map(|f| f.eval(p)).collect()).collect()
}

/// A polynomial given on `domain` (as a [`ChebPoly`] on `[-1, 1]^n`) with a
/// known error bound. Sub-boxes are obtained by re-expansion instead of
/// sampling.
#[derive(Debug, Clone)]
pub struct PolyTarget {
    poly: ChebPoly,
    eps: f64,
    domain: IntervalBox,
    axes: Vec<Axis>,
}

impl PolyTarget {
    pub fn new(poly: ChebPoly, eps: f64, domain: IntervalBox) -> Result<Self> {
        if poly.dims() != domain.dims() {
            return Err(Error::DimensionMismatch { expected: domain.dims(), found: poly.dims() });
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(invalid("error bound must be finite and nonnegative"));
        }
        let axes = domain.lower().iter().zip(domain.upper()).map(|(&l, &h)| Axis::from_interval(l, h)).collect();
        Ok(PolyTarget { poly, eps, domain, axes })
    }

    pub fn poly(&self) -> &ChebPoly {
        &self.poly
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl TargetFunction for PolyTarget {
    fn arity(&self) -> usize {
        self.poly.dims()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let t: Vec<f64> = self.axes.iter().zip(x).map(|(a, &v)| a.unmap(v).to_f64()).collect();
        self.poly.evaluate(&t).unwrap_or(f64::NAN)
    }

    fn chebyshev_proxy(&self, bbox: &IntervalBox, cfg: &SolveConfig) -> Option<Result<ApproxResult>> {
        if *bbox == self.domain {
            return Some(Ok(ApproxResult { poly: self.poly.clone(), eps: self.eps, evals: 0 }));
        }
        let maps: Vec<AffineMap1D> = self
            .axes
            .iter()
            .zip(bbox.lower().iter().zip(bbox.upper()))
            .map(|(a, (&l, &h))| {
                let lo = a.unmap(l).floor_f64().max(-1.0);
                let hi = a.unmap(h).ceil_f64().min(1.0).max(lo);
                if hi - lo < 1e-300 {
                    AffineMap1D { alpha: f64::MIN_POSITIVE, beta: lo }
                } else {
                    AffineMap1D::onto(lo, hi)
                }
            })
            .collect();
        let (poly, charge) = crate::transform::rescale_charged(&self.poly, &maps, cfg.transform_eps, cfg.trim_rel_tol);
        Some(Ok(ApproxResult { poly, eps: self.eps + charge, evals: 0 }))
    }
}

/// Seed whose orthonormal matrix gives four real roots in three dimensions.
pub const DEVASTATING_SEED: u64 = 6;

/// Orthonormal `n x n` matrix (row-major): a matrix of uniform entries in
/// `[-1, 1)` from ChaCha8 seeded with `seed`, orthonormalised column by column
/// with two passes of modified Gram-Schmidt.
pub fn seeded_orthonormal(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..n * n)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            2.0 * u - 1.0
        })
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let dot: f64 = (0..n).map(|i| q[i * n + j] * q[i * n + k]).sum();
                for i in 0..n {
                    q[i * n + j] -= dot * q[i * n + k];
                }
            }
        }
        let norm = libm::sqrt((0..n).map(|i| q[i * n + j] * q[i * n + j]).sum::<f64>());
        for i in 0..n {
            q[i * n + j] /= norm;
        }
    }
    q
}

/// `x_i^2 + eps_q (Q x)_i = 0` on `[-1, 1]^n` with `Q` from
/// [`seeded_orthonormal`]. The functions are exact polynomials.
pub fn devastating_system(n: usize, eps_q: f64, seed: u64) -> Result<ProxyProblem> {
    devastating_with(n, eps_q, &seeded_orthonormal(n, seed))
}

/// As [`devastating_system`] with a given row-major `Q`.
pub fn devastating_with(n: usize, eps_q: f64, q: &[f64]) -> Result<ProxyProblem> {
    if n < 1 || q.len() != n * n {
        return Err(invalid("devastating system needs n >= 1 and an n x n matrix"));
    }
    if !(eps_q >= 0.0 && eps_q.is_finite()) {
        return Err(invalid("eps_q must be finite and nonnegative"));
    }
    let unit = IntervalBox::unit(n);
    let mut functions: Vec<Box<dyn TargetFunction>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = ChebPoly::zeros(vec![2; n]);
        let mut idx = vec![0; n];
        // x_i^2 = (T_0 + T_2(x_i)) / 2
        set(&mut p, &idx, 0.5);
        idx[i] = 2;
        set(&mut p, &idx, 0.5);
        idx[i] = 0;
        for j in 0..n {
            idx[j] = 1;
            let v = p.coeff(&idx) + eps_q * q[i * n + j];
            set(&mut p, &idx, v);
            idx[j] = 0;
        }
        let (p, _) = p.trim(0.0);
        functions.push(Box::new(PolyTarget::new(p, 0.0, unit.clone())?));
    }
    ProxyProblem::new(functions, unit, SolveConfig::default())
}

fn set(p: &mut ChebPoly, idx: &[usize], v: f64) {
    let k = p.flat_index(idx).expect("index inside the tensor");
    p.coeffs_mut()[k] = v;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximate::FnTarget;

    #[test]
    fn sin_on_wide_interval() {
        let f: Box<dyn TargetFunction> = Box::new(FnTarget::new(1, |x: &[f64]| libm::sin(x[0])));
        let prob =
            ProxyProblem::new(vec![f], IntervalBox::new(vec![-10.0], vec![10.0]).unwrap(), SolveConfig::default())
                .unwrap();
        let out = cheb_proxy_solve(&prob).unwrap();
        assert_eq!(out.records.len(), 7, "{:?}", out.records);
        for (k, r) in out.records.iter().enumerate() {
            let exact = (k as f64 - 3.0) * core::f64::consts::PI;
            assert!((r.point[0] - exact).abs() < 1e-13, "{} vs {}", r.point[0], exact);
            assert!(r.residuals[0].abs() <= 1e-13);
            assert!(r.bounding_box.size() <= 1e-5);
        }
    }

    #[test]
    fn residual_examples() {
        let f: Box<dyn TargetFunction> = Box::new(FnTarget::new(1, |x: &[f64]| x[0]));
        let prob = ProxyProblem::new(vec![f], IntervalBox::unit(1), SolveConfig::default()).unwrap();
        assert_eq!(residuals(&prob, &[vec![1e-16]]), vec![vec![1e-16]]);
        assert_eq!(residuals(&prob, &[vec![0.0]]), vec![vec![0.0]]);
    }

    #[test]
    fn orthonormal_is_orthonormal() {
        let n = 4;
        let q = seeded_orthonormal(n, 7);
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n).map(|i| q[i * n + a] * q[i * n + b]).sum();
                let e = if a == b { 1.0 } else { 0.0 };
                assert!((dot - e).abs() < 1e-14);
            }
        }
        assert_eq!(q, seeded_orthonormal(n, 7));
    }

    #[test]
    fn devastating_decoupled() {
        let q = [1.0, 0.0, 0.0, 1.0];
        let prob = devastating_with(2, 0.01, &q).unwrap();
        let out = cheb_proxy_solve(&prob).unwrap();
        let mut pts: Vec<Vec<f64>> = out.records.iter().map(|r| r.point.clone()).collect();
        pts.sort_by(|a, b| cmp_lex(a, b));
        assert_eq!(pts.len(), 4, "{pts:?}");
        let expect = [[-0.01, -0.01], [-0.01, 0.0], [0.0, -0.01], [0.0, 0.0]];
        for (p, e) in pts.iter().zip(expect) {
            assert!((p[0] - e[0]).abs() < 1e-14 && (p[1] - e[1]).abs() < 1e-14, "{p:?}");
        }
    }
}
