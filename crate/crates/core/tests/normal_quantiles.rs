//! Cutpoints checked against a normal CDF inverted by bisection, with erf
//! evaluated from its positive-term power series.

use npcorr::grid::{inverse_normal_cdf, normal_quantile_cuts};

/// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1))
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-18 * sum.abs() {
        n += 1.0;
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 / std::f64::consts::PI.sqrt() * (-x * x).exp() * sum
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf_series(z / std::f64::consts::SQRT_2))
}

fn bisect_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn three_cuts() {
    let c = normal_quantile_cuts(3);
    assert_eq!(c[1], 0.0);
    assert!((c[0] + 0.67449).abs() < 1e-4);
    assert!((c[2] - 0.67449).abs() < 1e-4);
    assert!((c[2] - bisect_quantile(0.75)).abs() < 1e-8);
}

#[test]
fn deciles() {
    let c = normal_quantile_cuts(9);
    for (i, &v) in c.iter().enumerate() {
        let p = (i + 1) as f64 / 10.0;
        assert!((v - bisect_quantile(p)).abs() < 1e-8, "p={p}");
    }
    assert!((c[8] - 1.2815515655446004).abs() < 1e-9);
}

#[test]
fn accuracy_over_the_unit_interval() {
    let mut worst = 0.0f64;
    for i in 1..2000 {
        let p = i as f64 / 2000.0;
        worst = worst.max((inverse_normal_cdf(p) - bisect_quantile(p)).abs());
    }
    for p in [1e-6, 1e-4, 0.01, 0.02425, 0.97575, 0.99, 1.0 - 1e-4] {
        worst = worst.max((inverse_normal_cdf(p) - bisect_quantile(p)).abs());
    }
    assert!(worst < 1e-8, "worst abs error {worst:e}");
}
