//! Spearman and Kendall tau-b read off a [`CountSketch`] in `O(m1 * m2)`.
//!
//! Both estimators treat every observation in cell `(i, j)` as the point
//! `(i, j)`; the results are the exact tie-aware correlations of that
//! discretized data. All intermediate quantities are integers, so results do
//! not depend on summation order or platform.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::grid::CountSketch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorrelationKind {
    Spearman,
    Kendall,
    Pearson,
}

impl CorrelationKind {
    pub const ALL: [CorrelationKind; 3] = [
        CorrelationKind::Spearman,
        CorrelationKind::Kendall,
        CorrelationKind::Pearson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorrelationKind::Spearman => "spearman",
            CorrelationKind::Kendall => "kendall",
            CorrelationKind::Pearson => "pearson",
        }
    }
}

impl fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorrelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spearman" | "sr" => Ok(CorrelationKind::Spearman),
            "kendall" | "kt" => Ok(CorrelationKind::Kendall),
            "pearson" | "p" => Ok(CorrelationKind::Pearson),
            other => Err(format!("unknown correlation kind `{other}`")),
        }
    }
}

/// A correlation value, or `None` when a denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub value: Option<f64>,
    /// Number of observations the estimate covers.
    pub at_index: u64,
}

impl CorrelationEstimate {
    /// Clamps defined values into `[-1, 1]`; non-finite values become undefined.
    pub fn new(value: Option<f64>, at_index: u64) -> Self {
        let value = value.filter(|v| v.is_finite()).map(|v| v.clamp(-1.0, 1.0));
        CorrelationEstimate { value, at_index }
    }

    pub fn undefined(at_index: u64) -> Self {
        CorrelationEstimate { value: None, at_index }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }
}

/// Pair classification counts for Kendall's tau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KendallTally {
    /// `P`: pairs ordered the same way on both axes.
    pub concordant: u128,
    /// `Q`: pairs ordered oppositely.
    pub discordant: u128,
    /// `T`: pairs tied on x only.
    pub x_ties: u128,
    /// `U`: pairs tied on y only.
    pub y_ties: u128,
    /// `B`: pairs tied on both.
    pub joint_ties: u128,
}

impl KendallTally {
    pub fn pairs(&self) -> u128 {
        self.concordant + self.discordant + self.x_ties + self.y_ties + self.joint_ties
    }

    /// `(P - Q) / sqrt((P + Q + T)(P + Q + U))`, undefined if either factor is 0.
    pub fn tau_b(&self) -> Option<f64> {
        let pq = self.concordant + self.discordant;
        let (dx, dy) = (pq + self.x_ties, pq + self.y_ties);
        if dx == 0 || dy == 0 {
            return None;
        }
        let num = self.concordant as i128 - self.discordant as i128;
        Some(num as f64 / (dx as f64 * dy as f64).sqrt())
    }
}

impl Add for KendallTally {
    type Output = KendallTally;

    fn add(self, o: KendallTally) -> KendallTally {
        KendallTally {
            concordant: self.concordant + o.concordant,
            discordant: self.discordant + o.discordant,
            x_ties: self.x_ties + o.x_ties,
            y_ties: self.y_ties + o.y_ties,
            joint_ties: self.joint_ties + o.joint_ties,
        }
    }
}

/// Above this total, `n^3`-sized rank moments may overflow `i128`.
const EXACT_RANK_LIMIT: u64 = 1 << 40;

/// Twice the centered midrank of each margin bucket: `2 * r_k - (n + 1)`,
/// where `r_k` is the average rank of bucket `k`. Empty buckets get the
/// running rank (they carry no weight).
fn doubled_centered_ranks(sums: &[u64], n: u64) -> Vec<i128> {
    let n = n as i128;
    let mut below: i128 = 0;
    sums.iter()
        .map(|&c| {
            let c = c as i128;
            let v = if c == 0 {
                2 * below - (n + 1)
            } else {
                // 2 * [(below + 1) + (below + c)] / 2 - (n + 1)
                2 * below + c - n
            };
            below += c;
            v
        })
        .collect()
}

/// Spearman's rank correlation of the sketched data.
pub fn spearman_from_sketch(sketch: &CountSketch) -> CorrelationEstimate {
    let n = sketch.total();
    if n < 2 {
        return CorrelationEstimate::undefined(n);
    }
    let a = doubled_centered_ranks(sketch.row_sums(), n);
    let b = doubled_centered_ranks(sketch.col_sums(), n);
    let value = if n <= EXACT_RANK_LIMIT {
        spearman_exact(sketch, &a, &b)
    } else {
        spearman_float(sketch, &a, &b)
    };
    CorrelationEstimate::new(value, n)
}

fn spearman_exact(sketch: &CountSketch, a: &[i128], b: &[i128]) -> Option<f64> {
    let weighted = |sums: &[u64], r: &[i128]| -> i128 {
        sums.iter().zip(r).map(|(&c, &v)| c as i128 * v * v).sum()
    };
    let sxx = weighted(sketch.row_sums(), a);
    let syy = weighted(sketch.col_sums(), b);
    if sxx == 0 || syy == 0 {
        return None;
    }
    let sxy: i128 = (0..sketch.rows())
        .filter(|&i| sketch.row_sums()[i] > 0)
        .map(|i| {
            let inner: i128 = sketch.row(i).iter().zip(b).map(|(&m, &bj)| m as i128 * bj).sum();
            a[i] * inner
        })
        .sum();
    let denom = match sxx.checked_mul(syy) {
        Some(prod) => (prod as f64).sqrt(),
        None => (sxx as f64).sqrt() * (syy as f64).sqrt(),
    };
    Some(sxy as f64 / denom)
}

fn spearman_float(sketch: &CountSketch, a: &[i128], b: &[i128]) -> Option<f64> {
    let a: Vec<f64> = a.iter().map(|&v| v as f64).collect();
    let b: Vec<f64> = b.iter().map(|&v| v as f64).collect();
    let weighted = |sums: &[u64], r: &[f64]| -> f64 {
        sums.iter().zip(r).map(|(&c, &v)| c as f64 * v * v).sum()
    };
    let sxx = weighted(sketch.row_sums(), &a);
    let syy = weighted(sketch.col_sums(), &b);
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let sxy: f64 = (0..sketch.rows())
        .map(|i| a[i] * sketch.row(i).iter().zip(&b).map(|(&m, &bj)| m as f64 * bj).sum::<f64>())
        .sum();
    Some(sxy / (sxx * syy).sqrt())
}

/// Concordant, discordant and tie counts of the sketched data.
pub fn tally_from_sketch(sketch: &CountSketch) -> KendallTally {
    let (rows, cols) = (sketch.rows(), sketch.cols());
    // above[j]: observations in column j from rows strictly before the current one
    let mut above = vec![0u128; cols];
    let mut concordant = 0u128;
    let mut sum_sq_cells = 0u128;
    let mut joint_ties = 0u128;
    for i in 0..rows {
        let row = sketch.row(i);
        // running sum of above[..j]: observations strictly below-left of (i, j)
        let mut southwest = 0u128;
        for j in 0..cols {
            let m = row[j] as u128;
            concordant += m * southwest;
            sum_sq_cells += m * m;
            if m > 0 {
                joint_ties += m * (m - 1) / 2;
            }
            southwest += above[j];
        }
        for (acc, &m) in above.iter_mut().zip(row) {
            *acc += m as u128;
        }
    }
    let sq = |s: &[u64]| s.iter().map(|&c| c as u128 * c as u128).sum::<u128>();
    let x_ties = (sq(sketch.row_sums()) - sum_sq_cells) / 2;
    let y_ties = (sq(sketch.col_sums()) - sum_sq_cells) / 2;
    let n = sketch.total() as u128;
    let all_pairs = if n == 0 { 0 } else { n * (n - 1) / 2 };
    let discordant = all_pairs - concordant - x_ties - y_ties - joint_ties;
    KendallTally {
        concordant,
        discordant,
        x_ties,
        y_ties,
        joint_ties,
    }
}

/// Kendall's tau-b of the sketched data.
pub fn kendall_from_sketch(sketch: &CountSketch) -> CorrelationEstimate {
    let n = sketch.total();
    if n < 2 {
        return CorrelationEstimate::undefined(n);
    }
    CorrelationEstimate::new(tally_from_sketch(sketch).tau_b(), n)
}

/// Dispatches on `kind`. Pearson has no sketch form and returns `None`.
pub fn estimate_from_sketch(kind: CorrelationKind, sketch: &CountSketch) -> Option<CorrelationEstimate> {
    match kind {
        CorrelationKind::Spearman => Some(spearman_from_sketch(sketch)),
        CorrelationKind::Kendall => Some(kendall_from_sketch(sketch)),
        CorrelationKind::Pearson => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sr(m: &[[u64; 2]]) -> Option<f64> {
        spearman_from_sketch(&CountSketch::from_counts(m)).value
    }

    fn kt(m: &[[u64; 2]]) -> Option<f64> {
        kendall_from_sketch(&CountSketch::from_counts(m)).value
    }

    fn tally(p: u128, q: u128, t: u128, u: u128, b: u128) -> KendallTally {
        KendallTally {
            concordant: p,
            discordant: q,
            x_ties: t,
            y_ties: u,
            joint_ties: b,
        }
    }

    #[test]
    fn spearman_small_matrices() {
        assert_eq!(sr(&[[1, 0], [0, 1]]), Some(1.0));
        assert_eq!(sr(&[[0, 1], [1, 0]]), Some(-1.0));
        assert_eq!(sr(&[[1, 1], [1, 1]]), Some(0.0));
        // 6 expanded observations; oracle value 9 / sqrt(13.5 * 12)
        let v = sr(&[[2, 1], [0, 3]]).unwrap();
        assert!((v - 9.0 / (13.5f64 * 12.0).sqrt()).abs() < 1e-15);
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn spearman_undefined_cases() {
        assert_eq!(sr(&[[1, 0], [0, 0]]), None);
        assert_eq!(sr(&[[3, 2], [0, 0]]), None);
        assert_eq!(sr(&[[3, 0], [2, 0]]), None);
        assert_eq!(sr(&[[0, 0], [0, 0]]), None);
    }

    #[test]
    fn kendall_small_matrices() {
        assert_eq!(kt(&[[1, 0], [0, 1]]), Some(1.0));
        assert_eq!(kt(&[[1, 1], [1, 1]]), Some(0.0));
        let v = kt(&[[2, 1], [0, 3]]).unwrap();
        assert_eq!(v, 6.0 / 72f64.sqrt());
    }

    #[test]
    fn tallies() {
        assert_eq!(tally_from_sketch(&CountSketch::from_counts(&[[0u64; 3]; 2])), KendallTally::default());
        assert_eq!(tally_from_sketch(&CountSketch::from_counts(&[[3u64]])), tally(0, 0, 0, 0, 3));
        assert_eq!(tally_from_sketch(&CountSketch::from_counts(&[[1, 0], [0, 1]])), tally(1, 0, 0, 0, 0));
        assert_eq!(tally_from_sketch(&CountSketch::from_counts(&[[1, 1], [1, 1]])), tally(1, 1, 2, 2, 0));
        // brute-force enumeration of the 6 expanded observations
        assert_eq!(tally_from_sketch(&CountSketch::from_counts(&[[2, 1], [0, 3]])), tally(6, 0, 2, 3, 4));
    }

    #[test]
    fn kendall_undefined_on_one_sided_ties() {
        // every pair tied on y only: P + Q + T = 0
        assert_eq!(kt(&[[0, 1], [0, 1]]), None);
        assert_eq!(kt(&[[1, 1], [0, 0]]), None);
        assert_eq!(kt(&[[4, 0], [0, 0]]), None);
    }

    #[test]
    fn doubled_ranks() {
        // margins [3, 0, 3] over n = 6: midranks 2 and 5, centered -1.5 / +1.5
        assert_eq!(doubled_centered_ranks(&[3, 0, 3], 6), vec![-3, -1, 3]);
    }

    #[test]
    fn float_path_matches_exact_path() {
        let s = CountSketch::from_counts(&[[5, 1, 0], [2, 7, 3], [0, 4, 9]]);
        let n = s.total();
        let a = doubled_centered_ranks(s.row_sums(), n);
        let b = doubled_centered_ranks(s.col_sums(), n);
        let exact = spearman_exact(&s, &a, &b).unwrap();
        let float = spearman_float(&s, &a, &b).unwrap();
        assert!((exact - float).abs() < 1e-14);
    }

    #[test]
    fn huge_counts_do_not_overflow() {
        let big = 1u64 << 41;
        let s = CountSketch::from_counts(&[[big, 1], [1, big]]);
        let sr = spearman_from_sketch(&s).value.unwrap();
        let kt = kendall_from_sketch(&s).value.unwrap();
        assert!(sr > 0.99 && sr <= 1.0);
        assert!(kt > 0.99 && kt <= 1.0);
        assert_eq!(tally_from_sketch(&s).pairs(), {
            let n = s.total() as u128;
            n * (n - 1) / 2
        });
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("SR".parse::<CorrelationKind>(), Ok(CorrelationKind::Spearman));
        assert_eq!("kendall".parse::<CorrelationKind>(), Ok(CorrelationKind::Kendall));
        assert!("tau".parse::<CorrelationKind>().is_err());
        assert_eq!(CorrelationKind::Pearson.to_string(), "pearson");
    }

    #[test]
    fn estimate_clamps() {
        assert_eq!(CorrelationEstimate::new(Some(1.0 + 1e-13), 3).value, Some(1.0));
        assert_eq!(CorrelationEstimate::new(Some(f64::NAN), 3).value, None);
    }
}
