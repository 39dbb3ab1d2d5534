//! Degree drop of `T_n` under affine maps.

use anyhow::{ensure, Result};
use chebproxy_core::transform::degree_after;
use chebproxy_core::{AffineMap1D, MACHINE_EPSILON};

#[derive(Debug, Clone, PartialEq)]
pub struct TauRow {
    pub n: usize,
    pub degree: usize,
    pub ratio: f64,
    pub conjectured: f64,
}

/// Closed-form guess `1 / ((1/a - 1/sqrt a) sqrt(1 - (b/(1-a))^2) + 1/sqrt a)`.
/// At `a = 1` the map is the identity and the value is 1.
pub fn conjectured_tau(alpha: f64, beta: f64) -> f64 {
    if alpha >= 1.0 {
        return 1.0;
    }
    let s = alpha.sqrt();
    let r = (beta / (1.0 - alpha)).min(1.0);
    1.0 / ((1.0 / alpha - 1.0 / s) * (1.0 - r * r).sqrt() + 1.0 / s)
}

/// `D / n` for each `n`, `D` the numerical degree of `T_n(alpha x + beta)`.
pub fn tau_table(alpha: f64, beta: f64, ns: &[usize]) -> Result<Vec<TauRow>> {
    ensure!(
        alpha > 0.0 && alpha <= 1.0,
        "alpha must lie in (0, 1], got {alpha}"
    );
    ensure!(
        beta >= 0.0 && alpha + beta <= 1.0,
        "beta must lie in [0, 1 - alpha], got {beta}"
    );
    ensure!(ns.iter().all(|&n| n >= 1), "degrees must be positive");
    let map = AffineMap1D::new(alpha, beta)?;
    let conjectured = conjectured_tau(alpha, beta);
    Ok(ns
        .iter()
        .map(|&n| {
            let degree = degree_after(map, n, MACHINE_EPSILON);
            TauRow {
                n,
                degree,
                ratio: degree as f64 / n as f64,
                conjectured,
            }
        })
        .collect())
}

/// Numerical degree of `T_n` on each of the `2^(l-1)` equal subintervals of
/// `[0, 1]`, for levels `l = 1..=levels`, left to right.
pub fn subdivision_degrees(n: usize, levels: usize) -> Result<Vec<Vec<usize>>> {
    ensure!(n >= 1 && levels >= 1, "n and levels must be positive");
    ensure!(levels <= 20, "at most 20 levels");
    Ok((1..=levels)
        .map(|level| {
            let m = 1usize << (level - 1);
            (0..m)
                .map(|k| {
                    let (a, b) = (k as f64 / m as f64, (k + 1) as f64 / m as f64);
                    let map = AffineMap1D::new(0.5 * (b - a), 0.5 * (a + b))
                        .expect("subinterval of [-1, 1]");
                    degree_after(map, n, MACHINE_EPSILON)
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjecture_endpoints() {
        assert!((conjectured_tau(0.5, 0.0) - 0.5).abs() < 1e-15);
        assert!((conjectured_tau(0.5, 0.5) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(conjectured_tau(1.0, 0.0), 1.0);
    }

    #[test]
    fn identity_keeps_degree() {
        let rows = tau_table(1.0, 0.0, &[7, 100]).unwrap();
        assert_eq!(rows[0].degree, 7);
        assert_eq!(rows[1].ratio, 1.0);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(tau_table(0.0, 0.0, &[10]).is_err());
        assert!(tau_table(0.5, 0.6, &[10]).is_err());
        assert!(tau_table(0.5, 0.0, &[0]).is_err());
    }

    #[test]
    fn small_table() {
        let t = subdivision_degrees(64, 2).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].len(), 2);
        assert!(t[1][0] < t[1][1] && t[1][1] <= t[0][0] && t[0][0] <= 64);
    }
}
