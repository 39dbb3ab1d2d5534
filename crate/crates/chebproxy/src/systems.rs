//! Seeded random Chebyshev systems.
//!
//! Each polynomial has total degree at most `d`: the coefficient of
//! `T_{k_1}(x_1) ... T_{k_n}(x_n)` is a standard normal draw when
//! `k_1 + ... + k_n <= d` and zero otherwise. Draws come from ChaCha8 in
//! row-major order, one polynomial after another.

use chebproxy_core::ChebPoly;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn random_system(dim: usize, degree: usize, seed: u64) -> Vec<ChebPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = (degree + 1).pow(dim as u32);
    (0..dim)
        .map(|_| {
            let coeffs = (0..len)
                .map(|flat| {
                    let c: f64 = StandardNormal.sample(&mut rng);
                    if total_degree(flat, dim, degree + 1) <= degree {
                        c
                    } else {
                        0.0
                    }
                })
                .collect();
            ChebPoly::new(vec![degree; dim], coeffs).expect("finite coefficients")
        })
        .collect()
}

fn total_degree(mut flat: usize, dim: usize, side: usize) -> usize {
    let mut t = 0;
    for _ in 0..dim {
        t += flat % side;
        flat /= side;
    }
    t
}

/// Seed of trial `trial` in the `(dim, degree)` cell of a suite.
pub fn suite_seed(dim: usize, degree: usize, trial: u64) -> u64 {
    trial * 1000 + (dim * 100 + degree) as u64
}

/// A system with the known simple root `r`:
/// `p_i(x) = sum_j M_ij (x_j - r_j) + c_i (x_i - r_i)^2` on `[-1, 1]^n`, with
/// `r` uniform in `[-0.6, 0.6]^n`, `M = I + G / 4` for `G` uniform in
/// `[-1, 1]^(n x n)` and `c_i` uniform in `[0.2, 0.5]`. Coefficients are
/// rounded, so `r` is a root up to rounding.
pub fn known_root_system(dim: usize, seed: u64) -> (Vec<ChebPoly>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.6..0.6)).collect();
    let m: Vec<f64> = (0..dim * dim)
        .map(|k| if k / dim == k % dim { 1.0 } else { 0.0 } + 0.25 * rng.random_range(-1.0..1.0))
        .collect();
    let c: Vec<f64> = (0..dim).map(|_| rng.random_range(0.2..0.5)).collect();
    let flat = |idx: &[usize]| idx.iter().fold(0, |acc, &k| acc * 3 + k);
    let polys = (0..dim)
        .map(|i| {
            let mut coeffs = vec![0.0; 3usize.pow(dim as u32)];
            let mut idx = vec![0; dim];
            // (x - r)^2 = (T_0 + T_2) / 2 - 2 r T_1 + r^2
            let constant: f64 =
                c[i] * (0.5 + r[i] * r[i]) - (0..dim).map(|j| m[i * dim + j] * r[j]).sum::<f64>();
            coeffs[flat(&idx)] = constant;
            for j in 0..dim {
                idx[j] = 1;
                coeffs[flat(&idx)] = m[i * dim + j] - if i == j { 2.0 * c[i] * r[i] } else { 0.0 };
                idx[j] = 0;
            }
            idx[i] = 2;
            coeffs[flat(&idx)] = 0.5 * c[i];
            ChebPoly::new(vec![2; dim], coeffs).expect("finite coefficients")
        })
        .collect();
    (polys, r)
}
