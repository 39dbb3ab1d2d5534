use chebproxy_core::solve::{constant_term_check, quadratic_check, reduce_full, reduce_single, Reduction};
use chebproxy_core::transform::{rescale, transform_dim};
use chebproxy_core::{AffineMap1D, ChebPoly, IntervalBox, SolveConfig};
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// `T_0(x), ..., T_d(x)` by the three-term recurrence.
fn cheb_values(x: f64, d: usize) -> Vec<f64> {
    let mut t = vec![1.0; d + 1];
    if d >= 1 {
        t[1] = x;
    }
    for k in 2..=d {
        t[k] = 2.0 * x * t[k - 1] - t[k - 2];
    }
    t
}

/// Term-by-term sum, no Clenshaw.
fn direct_eval(p: &ChebPoly, x: &[f64]) -> f64 {
    let degs = p.degrees().to_vec();
    let tables: Vec<Vec<f64>> = x.iter().zip(&degs).map(|(&xi, &d)| cheb_values(xi, d)).collect();
    let mut total = 0.0;
    let mut idx = vec![0usize; degs.len()];
    for &a in p.coeffs() {
        let mut term = a;
        for (t, &k) in tables.iter().zip(&idx) {
            term *= t[k];
        }
        total += term;
        for d in (0..idx.len()).rev() {
            idx[d] += 1;
            if idx[d] <= degs[d] {
                break;
            }
            idx[d] = 0;
        }
    }
    total
}

fn poly_strategy(max_dims: usize, max_deg: usize) -> impl Strategy<Value = ChebPoly> {
    prop::collection::vec(0..=max_deg, 1..=max_dims).prop_flat_map(|degs| {
        let len: usize = degs.iter().map(|d| d + 1).product();
        prop::collection::vec(-1.0f64..1.0, len).prop_map(move |c| ChebPoly::new(degs.clone(), c).unwrap())
    })
}

fn grid(n: usize, per_dim: usize) -> Vec<Vec<f64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &pts {
            for k in 0..per_dim {
                let mut q = p.clone();
                q.push(-1.0 + 2.0 * k as f64 / (per_dim - 1) as f64);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

#[test]
fn clenshaw_matches_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let degs = vec![rng.random_range(0..12usize), rng.random_range(0..12usize)];
        let len = (degs[0] + 1) * (degs[1] + 1);
        let coeffs: Vec<f64> = (0..len).map(|_| StandardNormal.sample(&mut rng)).collect();
        let p = ChebPoly::new(degs, coeffs).unwrap();
        let x = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let got = p.evaluate(&x).unwrap();
        let want = direct_eval(&p, &x);
        assert!((got - want).abs() <= 1e-12 * p.coeff_bound().max(1.0), "{got} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn values_bounded_by_coeff_bound(p in poly_strategy(3, 6), x in prop::collection::vec(-1.0f64..1.0, 3)) {
        let v = p.evaluate(&x[..p.dims()]).unwrap();
        prop_assert!(v.abs() <= p.coeff_bound() * (1.0 + 1e-12));
    }

    #[test]
    fn trim_error_within_removed_mass(p in poly_strategy(2, 8), tol in 0.0f64..0.5) {
        let (q, removed) = p.trim(tol);
        for x in grid(p.dims(), 9) {
            let diff = (p.evaluate(&x).unwrap() - q.evaluate(&x).unwrap()).abs();
            prop_assert!(diff <= removed + 1e-12 * p.coeff_bound());
        }
        let dropped: f64 = p.coeff_bound() - q.coeff_bound();
        prop_assert!((dropped - removed).abs() <= 1e-12 * p.coeff_bound().max(1.0));
    }

    #[test]
    fn transform_is_composition(p in poly_strategy(2, 10), a in 0.01f64..1.0, t in 0.0f64..1.0, dim in 0usize..2) {
        let dim = dim % p.dims();
        let b = (1.0 - a) * (2.0 * t - 1.0);
        let map = AffineMap1D::new(a, b).unwrap();
        let q = transform_dim(&p, dim, map).unwrap();
        prop_assert!(q.degrees()[dim] <= p.degrees()[dim]);
        for x in grid(p.dims(), 7) {
            let mut y = x.clone();
            y[dim] = a * x[dim] + b;
            let diff = (q.evaluate(&x).unwrap() - p.evaluate(&y).unwrap()).abs();
            prop_assert!(diff <= 1e-12 * p.coeff_bound().max(1e-300));
        }
    }

    #[test]
    fn exclusion_checks_are_sound(p in poly_strategy(2, 4), shift in -4.0f64..4.0, eps in 0.0f64..0.2) {
        let mut c = p.coeffs().to_vec();
        c[0] += shift;
        let p = ChebPoly::new(p.degrees().to_vec(), c).unwrap();
        if constant_term_check(&p, eps) || quadratic_check(&p, eps) {
            for x in grid(p.dims(), 41) {
                prop_assert!(p.evaluate(&x).unwrap().abs() > eps);
            }
        }
    }

    #[test]
    fn reductions_keep_zeros(r in prop::collection::vec(-0.9f64..0.9, 2), m in prop::collection::vec(-1.0f64..1.0, 4), c in -0.1f64..0.1) {
        // p_i(x) = sum_j M_ij (x_j - r_j) + c (x_i - r_i)^2 vanishes at r.
        let mut polys = Vec::new();
        for i in 0..2 {
            let mut p = ChebPoly::zeros(vec![2, 2]);
            let mut coeffs = p.coeffs().to_vec();
            let mut a0 = 0.0;
            for j in 0..2 {
                let lin = m[i * 2 + j] + if i == j { 2.0 } else { 0.0 };
                let at = if j == 0 { 3 } else { 1 };
                coeffs[at] += lin;
                a0 -= lin * r[j];
            }
            // (x - r)^2 = T2/2 + 1/2 - 2 r x + r^2
            let (t1, t2) = if i == 0 { (3, 6) } else { (1, 2) };
            coeffs[t2] += 0.5 * c;
            coeffs[t1] -= 2.0 * r[i] * c;
            a0 += c * (0.5 + r[i] * r[i]);
            coeffs[0] += a0;
            p = ChebPoly::new(vec![2, 2], coeffs).unwrap();
            prop_assert!(p.evaluate(&r).unwrap().abs() < 1e-12);
            polys.push(p);
        }
        let eps = [1e-12, 1e-12];
        for red in [reduce_single(&polys, &eps).unwrap(), reduce_full(&polys, &eps, &SolveConfig::default()).unwrap()] {
            match red {
                Reduction::Box(b) => prop_assert!(b.contains(&r), "{:?} misses {:?}", b, r),
                Reduction::Excluded => prop_assert!(false, "excluded a box with a zero"),
                Reduction::NoProgress => {}
            }
        }
    }
}

#[test]
fn rescale_then_evaluate() {
    let p = ChebPoly::new(vec![3, 2], (0..12).map(|k| 1.0 / (k as f64 + 1.0)).collect()).unwrap();
    let sub = IntervalBox::new(vec![-0.3, 0.2], vec![0.5, 0.9]).unwrap();
    let q = rescale(&p, &sub).unwrap();
    for x in grid(2, 5) {
        let y: Vec<f64> = (0..2)
            .map(|d| {
                let (l, h) = (sub.lower()[d], sub.upper()[d]);
                0.5 * (h - l) * x[d] + 0.5 * (h + l)
            })
            .collect();
        assert!((q.evaluate(&x).unwrap() - p.evaluate(&y).unwrap()).abs() < 1e-14);
    }
}
