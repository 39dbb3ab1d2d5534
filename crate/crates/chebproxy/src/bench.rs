//! Timing and accuracy of the polynomial solver on random systems.

use std::time::Instant;

use anyhow::{ensure, Result};
use chebproxy_core::{cheb_solve_with, Executor, IntervalBox, SolveConfig};
use serde::Serialize;

use crate::systems::{random_system, suite_seed};
use crate::verify::{log_average, point_errors};

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub degree: usize,
    pub mean_seconds: f64,
    pub roots: usize,
    pub max_error: f64,
    pub log_average_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log time against log degree. Informational.
    pub slope: Option<f64>,
}

pub fn bench<E: Executor>(
    dim: usize,
    degrees: &[usize],
    trials: usize,
    seed: u64,
    exec: &E,
) -> Result<BenchReport> {
    ensure!((1..=5).contains(&dim), "dimension must be between 1 and 5");
    ensure!(trials >= 1, "at least one trial");
    ensure!(degrees.iter().all(|&d| d >= 1), "degrees must be positive");
    let cfg = SolveConfig::default();
    let mut rows = Vec::new();
    for &degree in degrees {
        let mut seconds = 0.0;
        let mut errors = Vec::new();
        for trial in 0..trials as u64 {
            let polys = random_system(
                dim,
                degree,
                seed.wrapping_add(suite_seed(dim, degree, trial)),
            );
            let started = Instant::now();
            let out =
                cheb_solve_with(&polys, &vec![0.0; dim], &IntervalBox::unit(dim), &cfg, exec)?;
            seconds += started.elapsed().as_secs_f64();
            errors.extend(point_errors(&polys, &out));
        }
        rows.push(BenchRow {
            degree,
            mean_seconds: seconds / trials as f64,
            roots: errors.len(),
            max_error: errors.iter().copied().fold(0.0, f64::max),
            log_average_error: log_average(&errors),
        });
    }
    let slope = fit_slope(&rows);
    Ok(BenchReport {
        dim,
        trials,
        seed,
        rows,
        slope,
    })
}

fn fit_slope(rows: &[BenchRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mean_seconds > 0.0)
        .map(|r| ((r.degree as f64).ln(), r.mean_seconds.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chebproxy_core::Sequential;

    #[test]
    fn one_dimensional_bench_is_accurate() {
        let r = bench(1, &[8, 16, 32], 2, 0, &Sequential).unwrap();
        assert_eq!(r.rows.len(), 3);
        for row in &r.rows {
            assert!(row.max_error <= 1e-13, "{row:?}");
        }
        assert!(r.slope.is_some());
    }

    #[test]
    fn slope_of_power_law() {
        let rows: Vec<BenchRow> = [2usize, 4, 8]
            .iter()
            .map(|&d| BenchRow {
                degree: d,
                mean_seconds: (d * d) as f64,
                roots: 0,
                max_error: 0.0,
                log_average_error: 0.0,
            })
            .collect();
        assert!((fit_slope(&rows).unwrap() - 2.0).abs() < 1e-12);
    }
}
