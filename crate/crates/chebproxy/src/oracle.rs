//! Reference values computed without the solver.
//!
//! Polynomials are evaluated exactly at binary64 points with dyadic
//! big-integer arithmetic. A Newton step driven by an exact residual then
//! places a root as `hi + lo` with `hi` a binary64 vector and `lo` the
//! remaining correction, well beyond double precision. Roots are discovered
//! by running Newton from every node of a fine grid whose value is small
//! compared with the local slope.

use chebproxy_core::{ChebPoly, IntervalBox};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// The exact number `m * 2^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            m: BigInt::from(1),
            e: 0,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic values are finite");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(mant);
        Dyadic {
            m: if x < 0.0 { -m } else { m },
            e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        Dyadic { m: a + b, e }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }

    pub fn mul_f64(&self, x: f64) -> Dyadic {
        self.mul(&Dyadic::from_f64(x))
    }

    /// `self * 2^k`.
    pub fn scale2(&self, k: i64) -> Dyadic {
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    /// Correctly rounded to the nearest binary64 (normal range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mag = self.m.magnitude();
        let shift = mag.bits() as i64 - 64;
        let (top, e) = if shift > 0 {
            let top = mag >> shift as usize;
            // sticky bit: any discarded one bit breaks rounding ties
            let lost = (&top << shift as usize) != *mag;
            (top.to_u64().expect("64 bits") | lost as u64, self.e + shift)
        } else {
            (mag.to_u64().expect("at most 64 bits"), self.e)
        };
        let v = ldexp(top as f64, e);
        if self.m.is_negative() {
            -v
        } else {
            v
        }
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// `T_0(x), ..., T_d(x)` exactly.
pub fn chebyshev_values_exact(d: usize, x: f64) -> Vec<Dyadic> {
    let mut t = vec![Dyadic::one()];
    if d >= 1 {
        t.push(Dyadic::from_f64(x));
    }
    let two_x = Dyadic::from_f64(x).scale2(1);
    for k in 1..d {
        let next = two_x.mul(&t[k]).sub(&t[k - 1]);
        t.push(next);
    }
    t
}

/// Exact value of `p` at the binary64 point `x`.
pub fn exact_value(p: &ChebPoly, x: &[f64]) -> Dyadic {
    assert_eq!(p.dims(), x.len(), "point dimension");
    let tables: Vec<Vec<Dyadic>> = p
        .degrees()
        .iter()
        .zip(x)
        .map(|(&d, &xi)| chebyshev_values_exact(d, xi))
        .collect();
    let mut cur: Vec<Dyadic> = p.coeffs().iter().map(|&c| Dyadic::from_f64(c)).collect();
    for dim in (0..p.dims()).rev() {
        let len = p.degrees()[dim] + 1;
        cur = cur
            .chunks(len)
            .map(|row| {
                row.iter()
                    .zip(&tables[dim])
                    .filter(|(c, _)| !c.is_zero())
                    .fold(Dyadic::zero(), |acc, (c, t)| acc.add(&c.mul(t)))
            })
            .collect();
    }
    cur.pop().expect("one value")
}

/// `T_k(x)` and `T_k'(x)` for `k = 0..=d` in binary64.
fn chebyshev_and_derivative(d: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut t = vec![1.0, x];
    let mut dt = vec![0.0, 1.0];
    for k in 1..d {
        t.push(2.0 * x * t[k] - t[k - 1]);
        dt.push(2.0 * t[k] + 2.0 * x * dt[k] - dt[k - 1]);
    }
    t.truncate(d + 1);
    dt.truncate(d + 1);
    (t, dt)
}

/// Contract the coefficient tensor with one vector per dimension.
/// Value and gradient in binary64. Contracting the last dimension with both
/// `T` and `T'` first keeps the cost near two passes over the coefficients.
pub fn value_and_gradient(p: &ChebPoly, x: &[f64]) -> (f64, Vec<f64>) {
    let n = p.dims();
    let tables: Vec<(Vec<f64>, Vec<f64>)> = p
        .degrees()
        .iter()
        .zip(x)
        .map(|(&d, &xi)| chebyshev_and_derivative(d, xi))
        .collect();
    // The last dimension is contracted with `T` and `T'` in one pass; rows of
    // total-degree systems end in zeros, which are skipped.
    let last = n - 1;
    let (t, dt) = &tables[last];
    let len = p.degrees()[last] + 1;
    let rows = p.coeffs().len() / len;
    let (mut plain, mut diff) = (Vec::with_capacity(rows), Vec::with_capacity(rows));
    for row in p.coeffs().chunks_exact(len) {
        let end = row.iter().rposition(|&c| c != 0.0).map_or(0, |k| k + 1);
        let (mut a, mut b) = (0.0, 0.0);
        for k in 0..end {
            a += row[k] * t[k];
            b += row[k] * dt[k];
        }
        plain.push(a);
        diff.push(b);
    }
    // (partial contraction, dimension differentiated so far)
    let mut parts: Vec<(Vec<f64>, Option<usize>)> = vec![(plain, None), (diff, Some(last))];
    for dim in (0..last).rev() {
        let (t, dt) = &tables[dim];
        let len = p.degrees()[dim] + 1;
        let along = |v: &[f64], w: &[f64]| -> Vec<f64> {
            v.chunks_exact(len)
                .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
                .collect()
        };
        let mut next = Vec::with_capacity(parts.len() + 1);
        for (v, d) in &parts {
            next.push((along(v, t), *d));
            if d.is_none() {
                next.push((along(v, dt), Some(dim)));
            }
        }
        parts = next;
    }
    let mut value = 0.0;
    let mut grad = vec![0.0; n];
    for (v, d) in parts {
        match d {
            None => value = v[0],
            Some(j) => grad[j] = v[0],
        }
    }
    (value, grad)
}

pub fn solve_linear(mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv =
            (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[piv * n + col] == 0.0 {
            return None;
        }
        for k in 0..n {
            a.swap(col * n + k, piv * n + k);
        }
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row * n + col] / a[col * n + col];
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row * n + k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row * n + row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn newton_step(
    polys: &[ChebPoly],
    x: &[f64],
    residual: impl Fn(&ChebPoly) -> f64,
) -> Option<Vec<f64>> {
    let n = x.len();
    let mut jac = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n);
    for p in polys {
        let (_, g) = value_and_gradient(p, x);
        jac.extend(g);
        rhs.push(-residual(p));
    }
    solve_linear(jac, rhs)
}

/// A root as `hi + lo`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polished {
    pub hi: Vec<f64>,
    pub lo: Vec<f64>,
}

impl Polished {
    /// Max-norm distance from `x`.
    pub fn distance(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.hi.iter().zip(&self.lo))
            .map(|(&xi, (&h, &l))| ((xi - h) - l).abs())
            .fold(0.0, f64::max)
    }

    /// Whether the box contains the root.
    pub fn inside(&self, b: &IntervalBox) -> bool {
        (0..self.hi.len()).all(|i| {
            let (h, l) = (self.hi[i], self.lo[i]);
            (h - b.lower()[i]) + l >= 0.0 && (b.upper()[i] - h) - l >= 0.0
        })
    }

    pub fn approx(&self) -> Vec<f64> {
        self.hi.iter().zip(&self.lo).map(|(h, l)| h + l).collect()
    }
}

/// Newton iteration with exact residuals from `start`, until the binary64
/// iterate stops moving. `None` if the Jacobian is singular or the iterate
/// leaves `[-2, 2]^n`.
pub fn polish(polys: &[ChebPoly], start: &[f64]) -> Option<Polished> {
    let mut x = start.to_vec();
    for _ in 0..100 {
        let delta = newton_step(polys, &x, |p| exact_value(p, &x).to_f64())?;
        let next: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a + d).collect();
        let settled = x
            .iter()
            .zip(&delta)
            .all(|(&a, &d)| d.abs() <= 2.0 * f64::EPSILON * a.abs());
        if next == x || settled {
            return Some(Polished { hi: x, lo: delta });
        }
        if next.iter().any(|v| v.abs() > 2.0) {
            return None;
        }
        x = next;
    }
    None
}

/// The roots of `T_d` in increasing order, polished from the closed form.
pub fn chebyshev_roots(d: usize) -> Vec<Polished> {
    let mut c = vec![0.0; d + 1];
    c[d] = 1.0;
    let p = ChebPoly::univariate(c).expect("finite coefficients");
    (0..d)
        .rev()
        .map(|k| {
            let x = ((k as f64 + 0.5) * std::f64::consts::PI / d as f64).cos();
            polish(std::slice::from_ref(&p), &[x]).expect("simple root")
        })
        .collect()
}

/// Columns `0..=last` of the transformation matrix `C(alpha, beta)` computed
/// exactly from the binary64 inputs: column `k` holds `C_{0,k}..C_{k,k}`.
pub fn exact_transform_columns(alpha: f64, beta: f64, last: usize) -> Vec<Vec<Dyadic>> {
    let a = Dyadic::from_f64(alpha);
    let two_b = Dyadic::from_f64(beta).scale2(1);
    let mut cols = vec![vec![Dyadic::one()]];
    if last >= 1 {
        cols.push(vec![Dyadic::from_f64(beta), a.clone()]);
    }
    let zero = Dyadic::zero();
    for k in 1..last {
        let (prev, cur) = (&cols[k - 1], &cols[k]);
        let at = |v: &[Dyadic], i: usize| v.get(i).cloned().unwrap_or_else(Dyadic::zero);
        let next: Vec<Dyadic> = (0..k + 2)
            .map(|i| {
                let up = at(cur, i + 1);
                let down = match i {
                    0 => zero.clone(),
                    1 => cur[0].scale2(1),
                    _ => at(cur, i - 1),
                };
                two_b
                    .mul(&at(cur, i))
                    .sub(&at(prev, i))
                    .add(&a.mul(&up.add(&down)))
            })
            .collect();
        cols.push(next);
    }
    cols
}

/// `m` equally spaced points on `[-1, 1]`, ends included.
pub fn linspace(m: usize) -> Vec<f64> {
    assert!(m >= 2);
    (0..m)
        .map(|j| -1.0 + 2.0 * j as f64 / (m - 1) as f64)
        .collect()
}

/// `apply m (rows x shape[dim]) along dim` for a row-major tensor.
fn mode_product(t: &[f64], shape: &[usize], dim: usize, m: &[f64], rows: usize) -> Vec<f64> {
    let outer: usize = shape[..dim].iter().product();
    let len = shape[dim];
    let inner: usize = shape[dim + 1..].iter().product();
    let mut out = vec![0.0; outer * rows * inner];
    for o in 0..outer {
        for r in 0..rows {
            let dst = &mut out[(o * rows + r) * inner..][..inner];
            for k in 0..len {
                let c = m[r * len + k];
                if c == 0.0 {
                    continue;
                }
                let src = &t[(o * len + k) * inner..][..inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += c * s;
                }
            }
        }
    }
    out
}

/// Values of `p` on the tensor grid with `pts` in every dimension, row-major.
/// With `deriv = Some(j)` the partial derivative in dimension `j` instead.
pub fn grid_values(p: &ChebPoly, pts: &[f64], deriv: Option<usize>) -> Vec<f64> {
    let mut shape = p.shape();
    let mut t = p.coeffs().to_vec();
    for dim in 0..p.dims() {
        let len = shape[dim];
        let mut m = Vec::with_capacity(pts.len() * len);
        for &x in pts {
            let (v, dv) = chebyshev_and_derivative(len - 1, x);
            m.extend(if deriv == Some(dim) { dv } else { v });
        }
        t = mode_product(&t, &shape, dim, &m, pts.len());
        shape[dim] = pts.len();
    }
    t
}

/// Smallest `|p|` on the `m^n` equispaced grid over `[-1, 1]^n`.
pub fn grid_min_abs(p: &ChebPoly, m: usize) -> f64 {
    grid_values(p, &linspace(m), None)
        .iter()
        .fold(f64::INFINITY, |acc, v| acc.min(v.abs()))
}

/// Common zeros of `polys` in `[-1, 1]^n`.
///
/// Newton runs in binary64 from every node of the Chebyshev-extremal grid
/// `cos(j pi / per_dim)` at which each `|p_i|` is below twice its first-order
/// variation over the neighbouring cells. Converged points are deduplicated
/// and polished with exact residuals; roots outside the closed box are
/// dropped.
/// Longest Newton step from a grid node, in gaps, that keeps it a candidate.
/// The node nearest a simple zero is within half a gap of it.
const STEP_GAPS: f64 = 1.5;

pub fn grid_roots(polys: &[ChebPoly], per_dim: usize) -> Vec<Polished> {
    let n = polys.len();
    let pts: Vec<f64> = (0..=per_dim)
        .map(|j| (j as f64 * std::f64::consts::PI / per_dim as f64).cos())
        .collect();
    let gap: Vec<f64> = (0..pts.len())
        .map(|j| {
            let l = if j > 0 { pts[j - 1] - pts[j] } else { 0.0 };
            let r = if j + 1 < pts.len() {
                pts[j] - pts[j + 1]
            } else {
                0.0
            };
            l.max(r)
        })
        .collect();
    let values: Vec<Vec<f64>> = polys.iter().map(|p| grid_values(p, &pts, None)).collect();
    let grads: Vec<Vec<Vec<f64>>> = polys
        .iter()
        .map(|p| (0..n).map(|j| grid_values(p, &pts, Some(j))).collect())
        .collect();
    let total = pts.len().pow(n as u32);
    let mut idx = vec![0usize; n];
    let mut found: Vec<Vec<f64>> = Vec::new();
    for flat in 0..total {
        let mut r = flat;
        for slot in idx.iter_mut().rev() {
            *slot = r % pts.len();
            r /= pts.len();
        }
        let near = (0..n).all(|i| {
            let slope: f64 = (0..n).map(|j| grads[i][j][flat].abs() * gap[idx[j]]).sum();
            values[i][flat].abs() <= 2.0 * slope
        });
        // The linear model at the node must put a zero within a few gaps;
        // a singular Jacobian keeps the node.
        let candidate = near && {
            let jac = (0..n * n).map(|k| grads[k / n][k % n][flat]).collect();
            let rhs = (0..n).map(|i| -values[i][flat]).collect();
            solve_linear(jac, rhs).is_none_or(|step| {
                step.iter()
                    .zip(&idx)
                    .all(|(d, &j)| d.abs() <= STEP_GAPS * gap[j])
            })
        };
        if candidate {
            let start: Vec<f64> = idx.iter().map(|&j| pts[j]).collect();
            if let Some(x) = newton_f64(polys, &start, &found) {
                if !found.iter().any(|r| max_dist(r, &x) <= 1e-10) {
                    found.push(x);
                }
            }
        }
    }
    let mut roots: Vec<Polished> = Vec::new();
    for x in found {
        let Some(r) = polish(polys, &x) else { continue };
        let inside = r.approx().iter().all(|v| v.abs() <= 1.0);
        if inside && !roots.iter().any(|q| q.distance(&r.approx()) <= 1e-12) {
            roots.push(r);
        }
    }
    roots.sort_by(|a, b| a.approx().partial_cmp(&b.approx()).expect("finite roots"));
    roots
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Newton in binary64 from `start`. Stops early, returning the known root,
/// once an iterate comes within `1e-9` of one of `known`.
fn newton_f64(polys: &[ChebPoly], start: &[f64], known: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = start.len();
    let mut x = start.to_vec();
    for _ in 0..50 {
        let mut jac = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n);
        for p in polys {
            let (v, g) = value_and_gradient(p, &x);
            jac.extend(g);
            rhs.push(-v);
        }
        let delta = solve_linear(jac, rhs)?;
        for (a, d) in x.iter_mut().zip(&delta) {
            *a += d;
        }
        if x.iter().any(|v| v.abs() > 1.1) {
            return None;
        }
        if delta.iter().all(|d| d.abs() <= 1e-14) {
            return Some(x);
        }
        if let Some(r) = known.iter().find(|r| max_dist(r, &x) <= 1e-9) {
            return Some(r.clone());
        }
    }
    None
}

/// Roots of `x_i^2 + eps_q (Q x)_i` (the coefficients rounded as the
/// polynomial tensor stores them), all within `|x| <= 2 eps_q sqrt n`.
///
/// Writing `x = 2 eps_q z` turns the system into `2 z_i^2 + (Q z)_i = 0`,
/// independent of `eps_q`, whose roots lie in `[-1, 1]^n`. They are found on
/// a grid, scaled back and polished against the actual system.
pub fn devastating_roots(n: usize, eps_q: f64, q: &[f64]) -> Vec<Polished> {
    if eps_q == 0.0 {
        return vec![Polished {
            hi: vec![0.0; n],
            lo: vec![0.0; n],
        }];
    }
    let scaled = devastating_polys(n, q, |v| v, 1.0);
    let actual = devastating_polys(n, q, |v| eps_q * v, 0.5);
    let mut roots: Vec<Polished> = Vec::new();
    for z in grid_roots(&scaled, 40) {
        let x0: Vec<f64> = z.approx().iter().map(|v| 2.0 * eps_q * v).collect();
        let Some(r) = polish(&actual, &x0) else {
            continue;
        };
        if !roots
            .iter()
            .any(|o| o.distance(&r.approx()) <= 1e-6 * eps_q)
        {
            roots.push(r);
        }
    }
    roots
}

/// `c (1 + T_2(x_i)) + sum_j lin(Q_ij) T_1(x_j)`, i.e. `2c x_i^2 + ...`.
fn devastating_polys(n: usize, q: &[f64], lin: impl Fn(f64) -> f64, c: f64) -> Vec<ChebPoly> {
    (0..n)
        .map(|i| {
            let mut coeffs = vec![0.0; 3usize.pow(n as u32)];
            let flat = |idx: &[usize]| idx.iter().fold(0, |acc, &k| acc * 3 + k);
            let mut idx = vec![0; n];
            coeffs[flat(&idx)] = c;
            idx[i] = 2;
            coeffs[flat(&idx)] = c;
            idx[i] = 0;
            for j in 0..n {
                idx[j] = 1;
                coeffs[flat(&idx)] += lin(q[i * n + j]);
                idx[j] = 0;
            }
            ChebPoly::new(vec![2; n], coeffs).expect("finite coefficients")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_round_trip_and_rounding() {
        for x in [1.0, -0.1, 1e-300, 3.5e300, f64::MIN_POSITIVE, 5e-324] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
        let third = Dyadic::from_f64(1.0 / 3.0);
        let sum = third.add(&third).add(&third);
        assert_eq!(sum.to_f64(), 1.0);
        assert!(!sum.sub(&Dyadic::one()).is_zero());
        // 1 + 2^-53 + 2^-80 rounds up, 1 + 2^-53 alone is a tie to even
        let tie = Dyadic::one().add(&Dyadic::one().scale2(-53));
        assert_eq!(tie.to_f64(), 1.0);
        assert_eq!(
            tie.add(&Dyadic::one().scale2(-80)).to_f64(),
            1.0 + f64::EPSILON
        );
    }

    #[test]
    fn exact_chebyshev_values() {
        let t = chebyshev_values_exact(5, 0.5);
        let expect = [1.0, 0.5, -0.5, -1.0, -0.5, 0.5];
        for (a, b) in t.iter().zip(expect) {
            assert_eq!(a.to_f64(), b);
        }
        let p = ChebPoly::new(vec![1, 2], vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let x = [0.3, -0.7];
        assert!((exact_value(&p, &x).to_f64() - p.evaluate(&x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_root_oracle() {
        let roots = chebyshev_roots(7);
        assert_eq!(roots.len(), 7);
        for (k, r) in roots.iter().enumerate() {
            let closed = ((6 - k) as f64 + 0.5) * std::f64::consts::PI / 7.0;
            // the binary64 closed form itself is a few ulps off
            assert!(r.distance(&[closed.cos()]) < 5e-16);
            assert!(r.lo[0].abs() < 5e-16);
        }
        // the middle root is exactly zero
        assert_eq!(roots[3].approx(), vec![0.0]);
    }

    #[test]
    fn exact_columns_match_identity_and_base() {
        let c = exact_transform_columns(1.0, 0.0, 6);
        for (k, col) in c.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                assert_eq!(v.to_f64(), if i == k { 1.0 } else { 0.0 });
            }
        }
        let c = exact_transform_columns(0.5, 0.25, 1);
        assert_eq!(c[1][0].to_f64(), 0.25);
        assert_eq!(c[1][1].to_f64(), 0.5);
    }

    #[test]
    fn finds_roots_of_a_known_system() {
        // x^2 + y^2 = 1/2 and x = y: roots (+-1/2, +-1/2)
        let p1 = ChebPoly::new(
            vec![2, 2],
            vec![0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0],
        )
        .unwrap();
        let p2 = ChebPoly::new(vec![1, 1], vec![0.0, -1.0, 1.0, 0.0]).unwrap();
        let roots = grid_roots(&[p1, p2], 30);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].distance(&[-0.5, -0.5]) < 1e-17);
        assert!(roots[1].distance(&[0.5, 0.5]) < 1e-17);
    }

    #[test]
    fn decoupled_devastating_roots() {
        let q = [1.0, 0.0, 0.0, 1.0];
        let mut roots: Vec<Vec<f64>> = devastating_roots(2, 0.01, &q)
            .iter()
            .map(Polished::approx)
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            roots,
            vec![
                vec![-0.01, -0.01],
                vec![-0.01, 0.0],
                vec![0.0, -0.01],
                vec![0.0, 0.0]
            ]
        );
    }

    #[test]
    fn grid_minimum() {
        let p = ChebPoly::univariate(vec![2.0, 0.0, 1.0]).unwrap();
        assert!((grid_min_abs(&p, 50) - (1.0 + 2.0 / 49.0f64.powi(2))).abs() < 1e-15);
    }
}
