//! Dense tensor-product Chebyshev polynomials on `[-1, 1]^n`.
//!
//! A [`ChebPoly`] of degrees `(d_1, ..., d_n)` stores the coefficients `a_k`
//! of
//!
//! ```text
//! p(x) = sum_k a_k T_{k_1}(x_1) ... T_{k_n}(x_n)
//! ```
//!
//! in a row-major tensor of shape `(d_1+1) x ... x (d_n+1)` with the last
//! dimension contiguous.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::MACHINE_EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub struct ChebPoly {
    degrees: Vec<usize>,
    coeffs: Vec<f64>,
}

/// Iterates the multi-indices of a row-major tensor in storage order.
pub(crate) struct Odometer<'a> {
    shape: &'a [usize],
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> Odometer<'a> {
    pub fn new(shape: &'a [usize]) -> Self {
        let done = shape.contains(&0);
        Odometer { shape, idx: vec![0; shape.len()], started: false, done }
    }

    /// Advance and return the next multi-index.
    pub fn next_index(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        for d in (0..self.shape.len()).rev() {
            self.idx[d] += 1;
            if self.idx[d] < self.shape[d] {
                return Some(&self.idx);
            }
            self.idx[d] = 0;
        }
        self.done = true;
        None
    }
}

impl ChebPoly {
    /// Build from degrees and a row-major coefficient list.
    pub fn new(degrees: Vec<usize>, coeffs: Vec<f64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(invalid("a polynomial needs at least one dimension"));
        }
        let len: usize = degrees.iter().map(|d| d + 1).product();
        if coeffs.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: coeffs.len() });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coefficients must be finite"));
        }
        Ok(ChebPoly { degrees, coeffs })
    }

    pub(crate) fn from_parts_unchecked(degrees: Vec<usize>, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), degrees.iter().map(|d| d + 1).product::<usize>());
        ChebPoly { degrees, coeffs }
    }

    pub fn zeros(degrees: Vec<usize>) -> Self {
        let len = degrees.iter().map(|d| d + 1).product();
        ChebPoly { degrees, coeffs: vec![0.0; len] }
    }

    pub fn constant(dims: usize, value: f64) -> Self {
        ChebPoly { degrees: vec![0; dims], coeffs: vec![value] }
    }

    /// One-dimensional polynomial from its coefficient list.
    pub fn univariate(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("empty coefficient list"));
        }
        ChebPoly::new(vec![coeffs.len() - 1], coeffs)
    }

    /// The single basis element `T_{k_1}(x_1) ... T_{k_n}(x_n)`.
    pub fn basis(index: &[usize]) -> Self {
        let mut p = ChebPoly::zeros(index.to_vec());
        let last = p.coeffs.len() - 1;
        p.coeffs[last] = 1.0;
        p
    }

    pub fn dims(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn shape(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d + 1).collect()
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape())
    }

    pub fn flat_index(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.dims() {
            return None;
        }
        let mut flat = 0;
        for (&k, &d) in index.iter().zip(&self.degrees) {
            if k > d {
                return None;
            }
            flat = flat * (d + 1) + k;
        }
        Some(flat)
    }

    /// Coefficient at a multi-index; zero outside the stored block.
    pub fn coeff(&self, index: &[usize]) -> f64 {
        self.flat_index(index).map_or(0.0, |i| self.coeffs[i])
    }

    /// `p(x)` for `x` in `[-1, 1]^n`, by Clenshaw's recurrence one dimension
    /// at a time starting from the contiguous one.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: x.len() });
        }
        let mut buf: Vec<f64> = self.coeffs.clone();
        for dim in (0..self.dims()).rev() {
            let len = self.degrees[dim] + 1;
            let outer = buf.len() / len;
            let mut next = Vec::with_capacity(outer);
            for line in buf.chunks_exact(len) {
                next.push(clenshaw(line, x[dim]));
            }
            buf = next;
        }
        Ok(buf[0])
    }

    /// `CoeffBound(p) = sum |a_k|`, an upper bound for `|p|` on `[-1, 1]^n`.
    pub fn coeff_bound(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Default trimming tolerance: machine epsilon times `CoeffBound(p)`.
    pub fn default_trim_tol(&self) -> f64 {
        MACHINE_EPSILON * self.coeff_bound()
    }

    /// Drop trailing slices whose coefficients are all at most `tol` in
    /// magnitude. Returns the trimmed polynomial and the absolute mass of the
    /// removed coefficients, which bounds `|p - trimmed|` on `[-1, 1]^n`.
    pub fn trim(&self, tol: f64) -> (ChebPoly, f64) {
        let degrees = self.trimmed_degrees(tol);
        if degrees == self.degrees {
            return (self.clone(), 0.0);
        }
        let removed = self.mass_outside(&degrees);
        (self.leading_block(&degrees), removed)
    }

    /// Degrees after trimming at `tol`. Removing a slice never makes another
    /// slice larger, so repeated trimming ends at the smallest block holding
    /// every coefficient above `tol`; that block is found in one pass.
    pub(crate) fn trimmed_degrees(&self, tol: f64) -> Vec<usize> {
        let last = self.dims() - 1;
        let row_len = self.degrees[last] + 1;
        let mut out = vec![0usize; self.dims()];
        let outer: Vec<usize> = self.degrees[..last].iter().map(|d| d + 1).collect();
        let mut odo = Odometer::new(&outer);
        let mut base = 0;
        while let Some(idx) = odo.next_index() {
            let row = &self.coeffs[base..base + row_len];
            base += row_len;
            if let Some(k) = row.iter().rposition(|c| c.abs() > tol) {
                out[last] = out[last].max(k);
                for (o, &i) in out.iter_mut().zip(idx) {
                    *o = (*o).max(i);
                }
            }
        }
        out
    }

    /// Copy of the coefficients with index `k <= degrees` componentwise.
    /// Degrees above the stored ones are zero-padded.
    pub fn leading_block(&self, degrees: &[usize]) -> ChebPoly {
        assert_eq!(degrees.len(), self.dims());
        let last = self.dims() - 1;
        let mut out = ChebPoly::zeros(degrees.to_vec());
        let src_strides = self.strides();
        let out_row = degrees[last] + 1;
        let copy = out_row.min(self.degrees[last] + 1);
        let outer: Vec<usize> = degrees[..last].iter().map(|d| d + 1).collect();
        let mut odo = Odometer::new(&outer);
        let mut dst = 0;
        while let Some(idx) = odo.next_index() {
            if idx.iter().zip(&self.degrees).all(|(k, d)| k <= d) {
                let base: usize = idx.iter().zip(&src_strides).map(|(k, s)| k * s).sum();
                out.coeffs[dst..dst + copy].copy_from_slice(&self.coeffs[base..base + copy]);
            }
            dst += out_row;
        }
        out
    }

    /// Sum of `|a_k|` over indices outside the block `k <= degrees`.
    pub fn mass_outside(&self, degrees: &[usize]) -> f64 {
        let last = self.dims() - 1;
        let row_len = self.degrees[last] + 1;
        let keep = (degrees[last] + 1).min(row_len);
        let outer: Vec<usize> = self.degrees[..last].iter().map(|d| d + 1).collect();
        let mut odo = Odometer::new(&outer);
        let mut base = 0;
        let mut mass = 0.0;
        while let Some(idx) = odo.next_index() {
            let row = &self.coeffs[base..base + row_len];
            let inside = idx.iter().zip(degrees).all(|(k, d)| k <= d);
            let from = if inside { keep } else { 0 };
            mass += row[from..].iter().map(|c| c.abs()).sum::<f64>();
            base += row_len;
        }
        mass
    }

    /// Per-index slab sums along `dim`: entry `k` is the sum of `|a|` over
    /// all coefficients whose index in `dim` equals `k`.
    pub fn slab_sums(&self, dim: usize) -> Vec<f64> {
        let (outer, len, inner) = self.split_at(dim);
        let mut out = vec![0.0; len];
        if inner == 1 {
            for row in self.coeffs.chunks_exact(len) {
                for (s, c) in out.iter_mut().zip(row) {
                    *s += c.abs();
                }
            }
            return out;
        }
        for o in 0..outer {
            for (k, s) in out.iter_mut().enumerate() {
                let base = (o * len + k) * inner;
                *s += self.coeffs[base..base + inner].iter().map(|c| c.abs()).sum::<f64>();
            }
        }
        out
    }

    /// Per-index maxima along `dim`: entry `k` is the largest `|a|` whose
    /// index in `dim` equals `k`.
    pub fn slab_maxima(&self, dim: usize) -> Vec<f64> {
        let (outer, len, inner) = self.split_at(dim);
        let mut out = vec![0.0f64; len];
        for o in 0..outer {
            for (k, m) in out.iter_mut().enumerate() {
                let base = (o * len + k) * inner;
                *m = self.coeffs[base..base + inner].iter().fold(*m, |acc, c| acc.max(c.abs()));
            }
        }
        out
    }

    /// `(outer, len, inner)` with the tensor viewed as `outer x len x inner`
    /// around `dim`.
    pub(crate) fn split_at(&self, dim: usize) -> (usize, usize, usize) {
        let outer = self.degrees[..dim].iter().map(|d| d + 1).product();
        let inner = self.degrees[dim + 1..].iter().map(|d| d + 1).product();
        (outer, self.degrees[dim] + 1, inner)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Low-order summary used by the exclusion checks and reductions.
    pub(crate) fn low_order(&self) -> LowOrder {
        LowOrder::of(self)
    }
}

pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for d in (0..shape.len().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * shape[d + 1];
    }
    strides
}

/// Clenshaw evaluation of a one-dimensional Chebyshev series.
pub(crate) fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let n = coeffs.len();
    if n == 1 {
        return coeffs[0];
    }
    let two_x = 2.0 * x;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &a in coeffs[1..].iter().rev() {
        let b0 = a + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + x * b1 - b2
}

/// The terms of total degree at most two plus the masses of the rest,
/// gathered in one pass over the tensor.
#[derive(Debug, Clone)]
pub(crate) struct LowOrder {
    pub constant: f64,
    /// Coefficient of `T_1(x_j)`.
    pub linear: Vec<f64>,
    /// Coefficient of `T_2(x_j)`.
    pub square: Vec<f64>,
    /// Coefficient of `T_1(x_j) T_1(x_k)` at `j * n + k`, `j < k`.
    pub cross: Vec<f64>,
    /// `sum |a_k|` over `|k|_1 >= 2`.
    pub mass_deg2: f64,
    /// `sum |a_k|` over `|k|_1 >= 3`.
    pub mass_deg3: f64,
    /// `sum |a_k|` over `k != 0`.
    pub mass_nonconst: f64,
}

impl LowOrder {
    fn of(p: &ChebPoly) -> Self {
        let n = p.dims();
        let mut lo = LowOrder {
            constant: 0.0,
            linear: vec![0.0; n],
            square: vec![0.0; n],
            cross: vec![0.0; n * n],
            mass_deg2: 0.0,
            mass_deg3: 0.0,
            mass_nonconst: 0.0,
        };
        let last = n - 1;
        let row_len = p.degrees[last] + 1;
        let outer: Vec<usize> = p.degrees[..last].iter().map(|d| d + 1).collect();
        let mut odo = Odometer::new(&outer);
        let mut base = 0;
        let mut idx = vec![0usize; n];
        while let Some(head) = odo.next_index() {
            let row = &p.coeffs[base..base + row_len];
            base += row_len;
            let head_total: usize = head.iter().sum();
            if head_total >= 3 {
                let m: f64 = row.iter().map(|c| c.abs()).sum();
                lo.mass_deg2 += m;
                lo.mass_deg3 += m;
                lo.mass_nonconst += m;
                continue;
            }
            idx[..last].copy_from_slice(head);
            for (k, &c) in row.iter().enumerate() {
                idx[last] = k;
                lo.add(&idx, head_total + k, c);
            }
        }
        lo
    }

    fn add(&mut self, idx: &[usize], total: usize, c: f64) {
        let n = idx.len();
        let a = c.abs();
        match total {
            0 => {
                self.constant = c;
                return;
            }
            1 => {
                let j = idx.iter().position(|&k| k == 1).unwrap();
                self.linear[j] = c;
            }
            2 => {
                self.mass_deg2 += a;
                if let Some(j) = idx.iter().position(|&k| k == 2) {
                    self.square[j] = c;
                } else {
                    let j = idx.iter().position(|&k| k == 1).unwrap();
                    let k = j + 1 + idx[j + 1..].iter().position(|&k| k == 1).unwrap();
                    self.cross[j * n + k] = c;
                }
            }
            _ => {
                self.mass_deg2 += a;
                self.mass_deg3 += a;
            }
        }
        self.mass_nonconst += a;
    }
}

/// An axis-aligned box `[lower_1, upper_1] x ... x [lower_n, upper_n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl IntervalBox {
    /// A box with `lower[i] < upper[i]` in every coordinate.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let b = IntervalBox::closed(lower, upper)?;
        if b.lower.iter().zip(&b.upper).any(|(l, u)| l >= u) {
            return Err(invalid("box bounds must satisfy lower < upper"));
        }
        Ok(b)
    }

    /// Like [`IntervalBox::new`] but permits `lower[i] == upper[i]`.
    pub fn closed(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), found: upper.len() });
        }
        if lower.is_empty() {
            return Err(invalid("a box needs at least one dimension"));
        }
        if lower.iter().chain(&upper).any(|v| !v.is_finite()) {
            return Err(invalid("box bounds must be finite"));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(invalid("box bounds must satisfy lower <= upper"));
        }
        Ok(IntervalBox { lower, upper })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        IntervalBox::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    /// `[-1, 1]^n`.
    pub fn unit(dims: usize) -> Self {
        IntervalBox { lower: vec![-1.0; dims], upper: vec![1.0; dims] }
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn widths(&self) -> Vec<f64> {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).collect()
    }

    /// Largest edge length.
    pub fn size(&self) -> f64 {
        self.widths().into_iter().fold(0.0, f64::max)
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower.iter().zip(&self.upper).map(|(l, u)| 0.5 * l + 0.5 * u).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims() && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (l, u))| l <= v && v <= u)
    }

    /// Whether the closed boxes intersect once each is grown by `slack`
    /// times the magnitude of its bounds.
    pub fn touches(&self, other: &IntervalBox, slack: f64) -> bool {
        self.lower.iter().zip(&self.upper).zip(other.lower.iter().zip(&other.upper)).all(|((l1, u1), (l2, u2))| {
            let t = slack * (l1.abs().max(u1.abs()).max(l2.abs()).max(u2.abs()));
            *l1 <= *u2 + t && *l2 <= *u1 + t
        })
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        IntervalBox {
            lower: self.lower.iter().zip(&other.lower).map(|(a, b)| a.min(*b)).collect(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a.max(*b)).collect(),
        }
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        self.lower.iter().zip(&other.lower).all(|(a, b)| a <= b)
            && self.upper.iter().zip(&other.upper).all(|(a, b)| a >= b)
    }
}

/// The linear decomposition of a system: `p_i = B_i + sum_j A_ij x_j + r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearParts {
    /// Row-major `n x n`; `a[i * n + j]` is the `T_1(x_j)` coefficient of `p_i`.
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// `E_i = eps_i + sum_{|k|_1 >= 2} |a_k|`.
    pub e: Vec<f64>,
}

impl LinearParts {
    pub fn dims(&self) -> usize {
        self.b.len()
    }

    pub fn a_ij(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.dims() + j]
    }
}

/// Split each `p_i` into constant, linear part and the remainder bound `E_i`.
pub fn linear_parts(polys: &[ChebPoly], eps: &[f64]) -> Result<LinearParts> {
    let n = check_system(polys, eps)?;
    let mut a = vec![0.0; n * n];
    let mut b = vec![0.0; n];
    let mut e = vec![0.0; n];
    for (i, p) in polys.iter().enumerate() {
        let lo = p.low_order();
        a[i * n..(i + 1) * n].copy_from_slice(&lo.linear);
        b[i] = lo.constant;
        e[i] = eps[i] + lo.mass_deg2;
    }
    Ok(LinearParts { a, b, e })
}

/// Validate a square system with matching error bounds; returns `n`.
pub(crate) fn check_system(polys: &[ChebPoly], eps: &[f64]) -> Result<usize> {
    let n = polys.len();
    if n == 0 {
        return Err(invalid("empty system"));
    }
    if eps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: eps.len() });
    }
    for p in polys {
        if p.dims() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dims() });
        }
    }
    if eps.iter().any(|e| !(*e >= 0.0) || !e.is_finite()) {
        return Err(invalid("error bounds must be finite and nonnegative"));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_at_zero() {
        let p = ChebPoly::univariate(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(&[0.0]).unwrap(), -1.0);
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let p = ChebPoly::constant(3, 3.5);
        assert_eq!(p.evaluate(&[0.3, -0.9, 1.0]).unwrap(), 3.5);
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let p = ChebPoly::constant(2, 1.0);
        assert!(matches!(p.evaluate(&[0.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coeff_bound_examples() {
        assert_eq!(ChebPoly::univariate(vec![1.0, -2.0, 3.0]).unwrap().coeff_bound(), 6.0);
        assert_eq!(ChebPoly::zeros(vec![2, 3]).coeff_bound(), 0.0);
    }

    #[test]
    fn trim_examples() {
        let (t, m) = ChebPoly::univariate(vec![1.0, 0.0, 0.0]).unwrap().trim(0.0);
        assert_eq!(t.coeffs(), &[1.0]);
        assert_eq!(m, 0.0);

        let (t, m) = ChebPoly::univariate(vec![1.0, 1e-20, 1e-20]).unwrap().trim(1e-15);
        assert_eq!(t.coeffs(), &[1.0]);
        assert_eq!(m, 2e-20);
    }

    #[test]
    fn trim_keeps_nonzero_degree_zero() {
        let (t, m) = ChebPoly::zeros(vec![3, 2]).trim(0.0);
        assert_eq!(t.degrees(), &[0, 0]);
        assert_eq!(m, 0.0);
    }

    #[test]
    fn trim_two_dims_interacts() {
        // Row 2 is small only after column 2 is dropped.
        let p = ChebPoly::new(vec![2, 2], vec![1.0, 2.0, 0.0, 3.0, 4.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let (t, _) = p.trim(0.0);
        assert_eq!(t.degrees(), &[1, 1]);
        assert_eq!(t.coeffs(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn linear_parts_examples() {
        let p = ChebPoly::univariate(vec![0.5, 2.0]).unwrap();
        let lp = linear_parts(&[p], &[0.1]).unwrap();
        assert_eq!(lp.a, vec![2.0]);
        assert_eq!(lp.b, vec![0.5]);
        assert_eq!(lp.e, vec![0.1]);

        let p1 = ChebPoly::basis(&[1, 0]);
        let p2 = ChebPoly::basis(&[0, 1]);
        let lp = linear_parts(&[p1, p2], &[0.0, 0.0]).unwrap();
        assert_eq!(lp.a, vec![1.0, 0.0, 0.0, 1.0]);
        assert_eq!(lp.b, vec![0.0, 0.0]);
        assert_eq!(lp.e, vec![0.0, 0.0]);
    }

    #[test]
    fn linear_parts_rejects_mismatch() {
        let p = ChebPoly::constant(2, 1.0);
        assert!(linear_parts(&[p], &[0.0]).is_err());
    }

    #[test]
    fn low_order_classifies_terms() {
        // 2-D degree (2,2): a_{ij} = 10 i + j + 1
        let coeffs: Vec<f64> = (0..3).flat_map(|i| (0..3).map(move |j| (10 * i + j + 1) as f64)).collect();
        let p = ChebPoly::new(vec![2, 2], coeffs).unwrap();
        let lo = p.low_order();
        assert_eq!(lo.constant, 1.0);
        assert_eq!(lo.linear, vec![11.0, 2.0]);
        assert_eq!(lo.square, vec![21.0, 3.0]);
        assert_eq!(lo.cross[1], 12.0);
        // degree >= 3: (1,2)=13, (2,1)=22, (2,2)=23
        assert_eq!(lo.mass_deg3, 58.0);
        assert_eq!(lo.mass_deg2, 58.0 + 21.0 + 3.0 + 12.0);
    }

    #[test]
    fn box_validation() {
        assert!(IntervalBox::new(vec![0.0], vec![0.0]).is_err());
        assert!(IntervalBox::closed(vec![0.0], vec![0.0]).is_ok());
        assert!(IntervalBox::new(vec![1.0], vec![0.0]).is_err());
        assert!(IntervalBox::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn boxes_touch_on_shared_face() {
        let a = IntervalBox::from_pairs(&[(-1.0, 0.0), (0.0, 1.0)]).unwrap();
        let b = IntervalBox::from_pairs(&[(0.0, 1.0), (0.5, 2.0)]).unwrap();
        let c = IntervalBox::from_pairs(&[(0.1, 1.0), (0.5, 2.0)]).unwrap();
        assert!(a.touches(&b, 0.0));
        assert!(!a.touches(&c, 0.0));
    }
}
