//! Exact batch reference implementations.
//!
//! These recompute from raw data and share no code with the sketch
//! estimators beyond [`KendallTally::tau_b`]. Kendall's tau-b is brute-force
//! pair enumeration, `O(n^2)`, which is fine at test scale.

use crate::estimators::{CorrelationEstimate, CorrelationKind, KendallTally};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::stream::{EmissionRecord, StreamConfig, WindowMode};

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::TooFewObservations(xs.len()));
    }
    Ok(())
}

/// Average ranks (1-based), ties sharing the mean of the ranks they span.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

/// Two-pass Pearson correlation.
pub fn exact_pearson(xs: &[f64], ys: &[f64]) -> Result<CorrelationEstimate> {
    check_pair(xs, ys)?;
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let value = (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt());
    Ok(CorrelationEstimate::new(value, xs.len() as u64))
}

/// Pearson correlation of the midranks.
pub fn exact_spearman(xs: &[f64], ys: &[f64]) -> Result<CorrelationEstimate> {
    check_pair(xs, ys)?;
    exact_pearson(&midranks(xs), &midranks(ys))
}

/// Classifies all `n(n-1)/2` pairs.
pub fn kendall_tally(xs: &[f64], ys: &[f64], exec: Execution) -> Result<KendallTally> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let row = |i: usize| {
        let (xi, yi) = (xs[i], ys[i]);
        let (mut p, mut q, mut t, mut u, mut b) = (0u64, 0u64, 0u64, 0u64, 0u64);
        for (&xj, &yj) in xs[i + 1..].iter().zip(&ys[i + 1..]) {
            let dx = xi.partial_cmp(&xj);
            let dy = yi.partial_cmp(&yj);
            match (dx, dy) {
                (Some(a), Some(c)) if a.is_eq() && c.is_eq() => b += 1,
                (Some(a), _) if a.is_eq() => t += 1,
                (_, Some(c)) if c.is_eq() => u += 1,
                (Some(a), Some(c)) if a == c => p += 1,
                _ => q += 1,
            }
        }
        KendallTally {
            concordant: p as u128,
            discordant: q as u128,
            x_ties: t as u128,
            y_ties: u as u128,
            joint_ties: b as u128,
        }
    };
    Ok(exec.reduce_range(xs.len(), KendallTally::default, row, |a, b| a + b))
}

/// Kendall's tau-b by brute-force pair enumeration.
pub fn exact_kendall_taub(xs: &[f64], ys: &[f64]) -> Result<CorrelationEstimate> {
    exact_kendall_taub_with(xs, ys, Execution::Parallel)
}

pub fn exact_kendall_taub_with(xs: &[f64], ys: &[f64], exec: Execution) -> Result<CorrelationEstimate> {
    check_pair(xs, ys)?;
    let tally = kendall_tally(xs, ys, exec)?;
    Ok(CorrelationEstimate::new(tally.tau_b(), xs.len() as u64))
}

/// Exact correlation of the given kind.
pub fn exact(kind: CorrelationKind, xs: &[f64], ys: &[f64], exec: Execution) -> Result<CorrelationEstimate> {
    match kind {
        CorrelationKind::Spearman => exact_spearman(xs, ys),
        CorrelationKind::Kendall => exact_kendall_taub_with(xs, ys, exec),
        CorrelationKind::Pearson => exact_pearson(xs, ys),
    }
}

/// Running sufficient statistics for Pearson correlation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PearsonState {
    pub n: u64,
    pub sum_x: f64,
    pub sum_y: f64,
    pub sum_xx: f64,
    pub sum_yy: f64,
    pub sum_xy: f64,
}

impl PearsonState {
    pub fn update(&mut self, x: f64, y: f64) {
        self.n += 1;
        self.sum_x += x;
        self.sum_y += y;
        self.sum_xx += x * x;
        self.sum_yy += y * y;
        self.sum_xy += x * y;
    }

    /// Subtracts a previously added observation (sliding windows).
    pub fn remove(&mut self, x: f64, y: f64) {
        debug_assert!(self.n > 0);
        self.n -= 1;
        self.sum_x -= x;
        self.sum_y -= y;
        self.sum_xx -= x * x;
        self.sum_yy -= y * y;
        self.sum_xy -= x * y;
    }

    pub fn value(&self) -> CorrelationEstimate {
        if self.n < 2 {
            return CorrelationEstimate::undefined(self.n);
        }
        let n = self.n as f64;
        let vx = n * self.sum_xx - self.sum_x * self.sum_x;
        let vy = n * self.sum_yy - self.sum_y * self.sum_y;
        let cov = n * self.sum_xy - self.sum_x * self.sum_y;
        let value = (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt());
        CorrelationEstimate::new(value, self.n)
    }
}

/// Recomputes the exact correlations from scratch at every emission point of
/// `config`, over the whole prefix or the trailing window.
///
/// NaN pairs are dropped first, mirroring the online driver. Emission points
/// are independent and are spread over `exec`.
pub fn batch_emissions(pairs: &[(f64, f64)], config: &StreamConfig, exec: Execution) -> Vec<EmissionRecord> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs
        .iter()
        .copied()
        .filter(|(x, y)| !x.is_nan() && !y.is_nan())
        .unzip();
    let n_gap = config.n_gap as usize;
    let points: Vec<usize> = (1..=xs.len() / n_gap).map(|k| k * n_gap).collect();
    // inside one emission the oracle runs sequentially; parallelism is across emissions
    exec.map(&points, |&t| {
        let start = match config.mode {
            WindowMode::AllPast => 0,
            WindowMode::Sliding(w) => t.saturating_sub(w.get()),
        };
        batch_record(&xs[start..t], &ys[start..t], t as u64, &config.kinds)
    })
}

/// Same as [`batch_emissions`] on one thread, stopping once `budget` has
/// elapsed. Returns the records computed and whether the run finished.
pub fn batch_emissions_timed(
    pairs: &[(f64, f64)],
    config: &StreamConfig,
    budget: std::time::Duration,
) -> (Vec<EmissionRecord>, bool) {
    let started = std::time::Instant::now();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs
        .iter()
        .copied()
        .filter(|(x, y)| !x.is_nan() && !y.is_nan())
        .unzip();
    let n_gap = config.n_gap as usize;
    let mut out = Vec::new();
    for t in (1..=xs.len() / n_gap).map(|k| k * n_gap) {
        if started.elapsed() > budget {
            return (out, false);
        }
        let start = match config.mode {
            WindowMode::AllPast => 0,
            WindowMode::Sliding(w) => t.saturating_sub(w.get()),
        };
        out.push(batch_record(&xs[start..t], &ys[start..t], t as u64, &config.kinds));
    }
    (out, true)
}

fn batch_record(xs: &[f64], ys: &[f64], t: u64, kinds: &[CorrelationKind]) -> EmissionRecord {
    let estimates = kinds
        .iter()
        .map(|&kind| {
            let est = exact(kind, xs, ys, Execution::Sequential)
                .unwrap_or_else(|_| CorrelationEstimate::undefined(xs.len() as u64));
            (kind, est)
        })
        .collect();
    EmissionRecord { t, estimates }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sr(xs: &[f64], ys: &[f64]) -> Option<f64> {
        exact_spearman(xs, ys).unwrap().value
    }

    fn kt(xs: &[f64], ys: &[f64]) -> Option<f64> {
        exact_kendall_taub(xs, ys).unwrap().value
    }

    #[test]
    fn midranks_average_ties() {
        assert_eq!(midranks(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0]), vec![2.0, 2.0, 2.0, 5.0, 5.0, 5.0]);
        assert_eq!(midranks(&[1.0, 1.0, 2.0, 2.0, 2.0, 2.0]), vec![1.5, 1.5, 4.5, 4.5, 4.5, 4.5]);
        assert_eq!(midranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(sr(&[1.0, 2.0, 3.0], &[1.0, 8.0, 27.0]), Some(1.0));
        assert_eq!(sr(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        let v = sr(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0], &[1.0, 1.0, 2.0, 2.0, 2.0, 2.0]).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(sr(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), None);
    }

    #[test]
    fn kendall_examples() {
        assert_eq!(kt(&[1.0, 2.0], &[1.0, 2.0]), Some(1.0));
        let v = kt(&[1.0, 1.0, 1.0, 2.0, 2.0, 2.0], &[1.0, 1.0, 2.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(v, 6.0 / 72f64.sqrt());
        let v = kt(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 3.0]).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn kendall_tally_identity() {
        let xs = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0];
        let ys = [1.0, 1.0, 2.0, 2.0, 2.0, 2.0];
        let t = kendall_tally(&xs, &ys, Execution::Sequential).unwrap();
        assert_eq!((t.concordant, t.discordant, t.x_ties, t.y_ties, t.joint_ties), (6, 0, 2, 3, 4));
        assert_eq!(t.pairs(), 15);
    }

    #[test]
    fn input_errors() {
        assert_eq!(exact_spearman(&[1.0], &[1.0]), Err(Error::TooFewObservations(1)));
        assert_eq!(exact_kendall_taub(&[1.0, 2.0], &[1.0]), Err(Error::LengthMismatch(2, 1)));
        assert_eq!(exact_pearson(&[], &[]), Err(Error::TooFewObservations(0)));
    }

    #[test]
    fn pearson_stream() {
        let mut s = PearsonState::default();
        assert_eq!(s.value().value, None);
        s.update(0.0, 0.0);
        s.update(1.0, 1.0);
        assert_eq!(s.value().value, Some(1.0));
        let mut s = PearsonState::default();
        s.update(0.0, 0.0);
        s.update(1.0, -1.0);
        assert_eq!(s.value().value, Some(-1.0));
        s.update(2.0, 5.0);
        s.remove(2.0, 5.0);
        assert_eq!(s.value().value, Some(-1.0));
    }

    #[test]
    fn pearson_online_matches_batch() {
        let xs: Vec<f64> = (0..500).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let ys: Vec<f64> = xs.iter().enumerate().map(|(i, x)| x * 0.3 + ((i * 13) % 17) as f64).collect();
        let mut s = PearsonState::default();
        xs.iter().zip(&ys).for_each(|(&x, &y)| s.update(x, y));
        let online = s.value().value.unwrap();
        let batch = exact_pearson(&xs, &ys).unwrap().value.unwrap();
        assert!(((online - batch) / batch).abs() < 1e-9);
    }
}
