//! Cutpoint construction: known-distribution quantiles, sample quantiles and
//! per-level cells for discrete data.

use crate::error::{Error, Result};

/// Standard normal quantile function, Wichura's AS 241 (PPND16).
///
/// Relative accuracy is about 1e-16 over the open unit interval. Returns
/// `-inf`/`+inf` at 0 and 1 and NaN outside `[0, 1]`.
// coefficients kept exactly as published
#[allow(clippy::excessive_precision)]
pub fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561e3,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34,
        4.630_337_846_156_545_295_9,
        5.769_497_221_460_691_405_5,
        3.647_848_324_763_204_605_04,
        1.270_458_252_452_368_382_58,
        2.417_807_251_774_506_117_7e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_4e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87,
        1.676_384_830_183_803_849_4,
        6.897_673_349_851_000_045_5e-1,
        1.481_039_764_274_800_745_9e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_2,
        5.463_784_911_164_114_369_9,
        1.784_826_539_917_291_335_8,
        2.965_605_718_285_048_912_3e-1,
        2.653_218_952_657_612_309_3e-2,
        1.242_660_947_388_078_438_6e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_9e-1,
        1.369_298_809_227_358_053_1e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];

    fn poly(c: &[f64; 8], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
    }

    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }

    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let z = if r <= 5.0 {
        r -= 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        r -= 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

/// `k` equally spaced standard-normal quantiles at `i / (k + 1)`.
///
/// The lower half is computed and mirrored, so the result is exactly
/// antisymmetric and the middle cutpoint (odd `k`) is exactly zero.
pub fn normal_quantile_cuts(k: usize) -> Vec<f64> {
    let mut cuts = vec![0.0; k];
    let denom = (k + 1) as f64;
    for i in 0..k / 2 {
        let z = inverse_normal_cdf((i + 1) as f64 / denom);
        cuts[i] = z;
        cuts[k - 1 - i] = -z;
    }
    cuts
}

/// Nearest-rank sample quantiles at `probs`, deduplicated.
///
/// The quantile at `p` is the `ceil(p * n)`-th smallest sample value
/// (1-based). NaN samples are ignored. The result can be shorter than `probs`
/// when quantiles coincide.
pub fn empirical_quantile_cuts(sample: &[f64], probs: &[f64]) -> Result<Vec<f64>> {
    if probs
        .iter()
        .enumerate()
        .any(|(i, &p)| !(p > 0.0 && p < 1.0) || (i > 0 && probs[i - 1] >= p))
    {
        return Err(Error::InvalidProbabilities);
    }
    let mut sorted: Vec<f64> = sample.iter().copied().filter(|v| !v.is_nan()).collect();
    if sorted.is_empty() {
        return Err(Error::EmptySample);
    }
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let mut cuts: Vec<f64> = probs
        .iter()
        .map(|&p| {
            let rank = (p * n as f64).ceil() as usize;
            sorted[rank.clamp(1, n) - 1]
        })
        .collect();
    cuts.dedup();
    Ok(cuts)
}

/// Midpoints between consecutive distinct levels, giving each level a cell.
pub fn unique_value_cuts(levels: &[f64]) -> Result<Vec<f64>> {
    if levels.is_empty()
        || levels.iter().any(|v| !v.is_finite())
        || levels.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidLevels);
    }
    Ok(levels
        .windows(2)
        .map(|w| {
            let mid = w[0] + (w[1] - w[0]) / 2.0;
            // adjacent floats: the lower bound keeps the lower level in its own cell
            if mid > w[0] {
                mid
            } else {
                w[1]
            }
        })
        .collect())
}

/// Sorted distinct finite values of a sample.
pub fn unique_levels(sample: &[f64]) -> Vec<f64> {
    let mut levels: Vec<f64> = sample.iter().copied().filter(|v| v.is_finite()).collect();
    levels.sort_unstable_by(f64::total_cmp);
    // PartialEq dedup also folds -0.0 into 0.0
    levels.dedup();
    levels
}
