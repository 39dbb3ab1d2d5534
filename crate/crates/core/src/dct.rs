//! Chebyshev coefficients from values at the points `cos(j pi / d)`.
//!
//! Along one axis with samples `f_0..f_d` the coefficients are
//! `a_k = (2/d) sum'' f_j cos(j k pi / d)` with the first and last sample
//! halved, and `a_0`, `a_d` halved once more. With the `std` feature this is
//! done by an FFT of the even extension of length `2d`; otherwise by a direct
//! sum against a cosine table.

use alloc::vec;
use alloc::vec::Vec;

/// Transform every line of a row-major tensor along `dim` in place.
pub(crate) fn values_to_coeffs_dim(data: &mut [f64], shape: &[usize], dim: usize) {
    let len = shape[dim];
    if len < 2 {
        return;
    }
    let inner: usize = shape[dim + 1..].iter().product();
    let outer: usize = shape[..dim].iter().product();
    let mut line = vec![0.0; len];
    let mut plan = LinePlan::new(len - 1);
    for o in 0..outer {
        let base = o * len * inner;
        for s in 0..inner {
            for (j, v) in line.iter_mut().enumerate() {
                *v = data[base + j * inner + s];
            }
            plan.run(&mut line);
            for (j, v) in line.iter().enumerate() {
                data[base + j * inner + s] = *v;
            }
        }
    }
}

/// Transform all dimensions of a sample tensor.
pub(crate) fn values_to_coeffs(data: &mut [f64], shape: &[usize]) {
    for dim in 0..shape.len() {
        values_to_coeffs_dim(data, shape, dim);
    }
}

#[cfg(feature = "std")]
struct LinePlan {
    d: usize,
    fft: std::sync::Arc<dyn rustfft::Fft<f64>>,
    buf: Vec<rustfft::num_complex::Complex<f64>>,
    scratch: Vec<rustfft::num_complex::Complex<f64>>,
}

#[cfg(feature = "std")]
impl LinePlan {
    fn new(d: usize) -> Self {
        let mut planner = rustfft::FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(2 * d);
        let scratch_len = fft.get_inplace_scratch_len();
        LinePlan { d, fft, buf: vec![Default::default(); 2 * d], scratch: vec![Default::default(); scratch_len] }
    }

    fn run(&mut self, line: &mut [f64]) {
        let d = self.d;
        for (j, &v) in line.iter().enumerate() {
            self.buf[j] = rustfft::num_complex::Complex::new(v, 0.0);
        }
        for j in 1..d {
            self.buf[2 * d - j] = self.buf[j];
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        let scale = 1.0 / d as f64;
        for (k, v) in line.iter_mut().enumerate() {
            *v = self.buf[k].re * scale;
        }
        line[0] *= 0.5;
        line[d] *= 0.5;
    }
}

#[cfg(not(feature = "std"))]
type LinePlan = DirectPlan;

/// `O(d^2)` transform against a table of `cos(m pi / d)`, `m < 2d`.
#[cfg_attr(feature = "std", allow(dead_code))]
pub(crate) struct DirectPlan {
    d: usize,
    table: Vec<f64>,
    out: Vec<f64>,
}

#[cfg_attr(feature = "std", allow(dead_code))]
impl DirectPlan {
    pub(crate) fn new(d: usize) -> Self {
        let table = (0..2 * d).map(|m| cos_pi_ratio(m as i64, d)).collect();
        DirectPlan { d, table, out: vec![0.0; d + 1] }
    }

    pub(crate) fn run(&mut self, line: &mut [f64]) {
        let d = self.d;
        for k in 0..=d {
            let mut acc = 0.5 * (line[0] + if k % 2 == 0 { line[d] } else { -line[d] });
            for (j, &v) in line.iter().enumerate().take(d).skip(1) {
                acc += v * self.table[(j * k) % (2 * d)];
            }
            self.out[k] = acc * (2.0 / d as f64);
        }
        self.out[0] *= 0.5;
        self.out[d] *= 0.5;
        line.copy_from_slice(&self.out);
    }
}

/// `cos(m pi / d)` evaluated as `sin(pi (d - 2m) / (2d))`, which is exact at
/// the symmetric points and keeps the grid antisymmetric.
pub(crate) fn cos_pi_ratio(m: i64, d: usize) -> f64 {
    let num = d as i64 - 2 * m;
    libm::sin(core::f64::consts::PI * num as f64 / (2 * d) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_matches_fast_path() {
        for d in [1usize, 2, 3, 8, 17, 64] {
            let vals: Vec<f64> = (0..=d).map(|j| libm::exp(cos_pi_ratio(j as i64, d))).collect();
            let mut a = vals.clone();
            LinePlan::new(d).run(&mut a);
            let mut b = vals.clone();
            DirectPlan::new(d).run(&mut b);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-14, "d={d}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn reproduces_t3() {
        let d = 3;
        let mut vals: Vec<f64> = (0..=d)
            .map(|j| {
                let x = cos_pi_ratio(j as i64, d);
                4.0 * x * x * x - 3.0 * x
            })
            .collect();
        LinePlan::new(d).run(&mut vals);
        let expect = [0.0, 0.0, 0.0, 1.0];
        for (x, y) in vals.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
