//! Seeded synthetic streams with a known correlation structure.
//!
//! `x_i` and `z_i` are independent standard normals and
//! `y_i = (z_i + s x_i) / sqrt(s^2 + 1)`, so both marginals are standard
//! normal and the Pearson correlation is `s / sqrt(s^2 + 1)`. The first
//! design holds `s` constant; the second sweeps `s(i) = 5 ((i - m) / m)^2`
//! for `i = 1..=T`, which takes the correlation from about 0.98 down to 0 at
//! `i = m` and back.
//!
//! Normals come from ChaCha8 seeded with `seed` through the ziggurat sampler
//! of `rand_distr`, drawing `x_i` then `z_i` for each `i`. Output is
//! bit-identical for identical inputs on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Design {
    ConstantSigma { sigma: f64 },
    TimeVaryingSigma { midpoint: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSpec {
    pub design: Design,
    pub len: u64,
    pub seed: u64,
}

impl SimSpec {
    pub fn sim1(len: u64, sigma: f64, seed: u64) -> Self {
        SimSpec {
            design: Design::ConstantSigma { sigma },
            len,
            seed,
        }
    }

    /// `midpoint` of zero is treated as `len / 2` (at least 1).
    pub fn sim2(len: u64, midpoint: u64, seed: u64) -> Self {
        let midpoint = if midpoint == 0 { (len / 2).max(1) } else { midpoint };
        SimSpec {
            design: Design::TimeVaryingSigma { midpoint },
            len,
            seed,
        }
    }

    pub fn iter(&self) -> SimStream {
        SimStream {
            spec: *self,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            i: 0,
        }
    }

    pub fn generate(&self) -> Vec<(f64, f64)> {
        self.iter().collect()
    }

    /// Mixing weight at 1-based index `i`.
    pub fn sigma_at(&self, i: u64) -> f64 {
        match self.design {
            Design::ConstantSigma { sigma } => sigma,
            Design::TimeVaryingSigma { midpoint } => time_varying_sigma(i, midpoint),
        }
    }
}

/// `5 ((i - m) / m)^2`.
pub fn time_varying_sigma(i: u64, midpoint: u64) -> f64 {
    let u = (i as f64 - midpoint as f64) / midpoint as f64;
    5.0 * u * u
}

/// Pearson correlation implied by mixing weight `sigma`.
pub fn population_correlation(sigma: f64) -> f64 {
    if sigma.is_infinite() {
        return sigma.signum();
    }
    sigma / (sigma * sigma + 1.0).sqrt()
}

/// Iterator over the pairs of a [`SimSpec`].
#[derive(Debug, Clone)]
pub struct SimStream {
    spec: SimSpec,
    rng: ChaCha8Rng,
    i: u64,
}

impl Iterator for SimStream {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        if self.i >= self.spec.len {
            return None;
        }
        self.i += 1;
        let x: f64 = self.rng.sample(StandardNormal);
        let z: f64 = self.rng.sample(StandardNormal);
        let s = self.spec.sigma_at(self.i);
        Some((x, (z + s * x) / (s * s + 1.0).sqrt()))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.spec.len - self.i) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SimStream {}

pub fn gen_sim1(len: u64, sigma: f64, seed: u64) -> Vec<(f64, f64)> {
    SimSpec::sim1(len, sigma, seed).generate()
}

pub fn gen_sim2(len: u64, midpoint: u64, seed: u64) -> Vec<(f64, f64)> {
    SimSpec::sim2(len, midpoint, seed).generate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::exact_pearson;

    fn pearson(pairs: &[(f64, f64)]) -> f64 {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        exact_pearson(&xs, &ys).unwrap().value.unwrap()
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_sim1(1000, 1.0, 7), gen_sim1(1000, 1.0, 7));
        assert_ne!(gen_sim1(1000, 1.0, 7), gen_sim1(1000, 1.0, 8));
        assert_eq!(gen_sim2(500, 250, 3), gen_sim2(500, 0, 3));
    }

    #[test]
    fn sim1_correlation_levels() {
        assert!(pearson(&gen_sim1(100_000, 0.0, 1)).abs() < 0.01);
        assert!((pearson(&gen_sim1(100_000, 1.0, 1)) - 0.5f64.sqrt()).abs() < 0.01);
        assert!(pearson(&gen_sim1(1_000, 1e6, 1)) > 0.999_999);
    }

    #[test]
    fn marginals_are_standard_normal() {
        let pairs = gen_sim2(100_000, 50_000, 11);
        for series in [pairs.iter().map(|p| p.0).collect::<Vec<_>>(), pairs.iter().map(|p| p.1).collect()] {
            let n = series.len() as f64;
            let mean = series.iter().sum::<f64>() / n;
            let var = series.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            assert!(mean.abs() < 0.02, "mean {mean}");
            assert!((var - 1.0).abs() < 0.02, "var {var}");
        }
    }

    #[test]
    fn sigma_schedule() {
        let spec = SimSpec::sim2(10_000, 5_000, 1);
        assert_eq!(spec.sigma_at(5_000), 0.0);
        assert_eq!(spec.sigma_at(10_000), 5.0);
        assert!((population_correlation(5.0) - 5.0 / 26f64.sqrt()).abs() < 1e-15);
        assert!((population_correlation(5.0) - 0.9806).abs() < 1e-4);
    }

    #[test]
    fn independence_bound_across_seeds() {
        let t = 10_000u64;
        let bound = 3.0 / (t as f64).sqrt();
        let inside = (1..=100).filter(|&s| pearson(&gen_sim1(t, 0.0, s)).abs() < bound).count();
        assert!(inside >= 99, "{inside}/100 inside bound");
    }
}
