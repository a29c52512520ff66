//! Driver-level properties: sliding-window state, emission schedule,
//! discrete exactness and merge equivalence.

use std::sync::Arc;

use npcorr::grid::{unique_levels, unique_value_cuts};
use npcorr::oracles::{batch_emissions, exact_spearman};
use npcorr::simgen::gen_sim1;
use npcorr::{
    spearman_from_sketch, CorrelationKind, Correlator, CountSketch, CutpointGrid, Execution, StreamConfig,
};
use proptest::prelude::*;

const BOTH: [CorrelationKind; 2] = [CorrelationKind::Spearman, CorrelationKind::Kendall];

fn unique_grid(pairs: &[(f64, f64)]) -> Arc<CutpointGrid> {
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    Arc::new(
        CutpointGrid::new(
            unique_value_cuts(&unique_levels(&xs)).unwrap(),
            unique_value_cuts(&unique_levels(&ys)).unwrap(),
        )
        .unwrap(),
    )
}

fn discrete_stream() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0u8..6, 0u8..5), 1..120)
        .prop_map(|v| v.into_iter().map(|(a, b)| (a as f64 * 0.5, b as f64 - 2.0)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sliding_sketch_equals_rebuilt(pairs in discrete_stream(), window in 1usize..30) {
        let grid = unique_grid(&pairs);
        let mut d = Correlator::new(grid.clone(), StreamConfig::sliding(window, &BOTH)).unwrap();
        for (t, &(x, y)) in pairs.iter().enumerate() {
            d.step(x, y);
            let mut fresh = CountSketch::new(grid.clone());
            for &(a, b) in &pairs[(t + 1).saturating_sub(window)..=t] {
                fresh.insert_point(a, b).unwrap();
            }
            prop_assert_eq!(d.sketch(), &fresh);
            prop_assert_eq!(d.window().unwrap().len() as u64, d.sketch().total());
        }
    }

    #[test]
    fn discrete_data_is_exact(pairs in discrete_stream(), gap in 1u64..5, window in prop::option::of(2usize..40)) {
        let grid = unique_grid(&pairs);
        let config = match window {
            Some(w) => StreamConfig::sliding(w, &BOTH),
            None => StreamConfig::all_past(&BOTH),
        }
        .with_gap(gap);
        let online = npcorr::run_pairs(&pairs, grid, config.clone()).unwrap();
        let batch = batch_emissions(&pairs, &config, Execution::Sequential);
        prop_assert_eq!(online.len(), batch.len());
        for (o, b) in online.iter().zip(&batch) {
            prop_assert_eq!(o.t, b.t);
            prop_assert_eq!(o.t % gap, 0);
            for kind in BOTH {
                let (ov, bv) = (o.get(kind).unwrap().value, b.get(kind).unwrap().value);
                match (ov, bv) {
                    (Some(a), Some(c)) => prop_assert!((a - c).abs() <= 1e-12, "{kind} t={} {a} vs {c}", o.t),
                    (a, c) => prop_assert_eq!(a, c),
                }
            }
        }
    }
}

#[test]
fn merged_halves_equal_single_stream() {
    let pairs = gen_sim1(4_000, 1.0, 9);
    let grid = Arc::new(CutpointGrid::normal_quantiles(20));
    let (first, second) = pairs.split_at(1_500);
    let build = |part: &[(f64, f64)]| {
        let mut s = CountSketch::new(grid.clone());
        part.iter().for_each(|&(x, y)| {
            s.insert_point(x, y).unwrap();
        });
        s
    };
    let merged = build(first).merge(&build(second)).unwrap();
    let whole = build(&pairs);
    assert_eq!(merged, whole);
    assert_eq!(spearman_from_sketch(&merged), spearman_from_sketch(&whole));
}

#[test]
fn all_past_estimate_tracks_exact_on_sim1() {
    let pairs = gen_sim1(10_000, 1.0, 1);
    let grid = Arc::new(CutpointGrid::normal_quantiles(30));
    let config = StreamConfig::all_past(&[CorrelationKind::Spearman]).with_gap(10_000);
    let out = npcorr::run_pairs(&pairs, grid, config).unwrap();
    assert_eq!(out.len(), 1);
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
    let exact = exact_spearman(&xs, &ys).unwrap().value.unwrap();
    let online = out[0].get(CorrelationKind::Spearman).unwrap().value.unwrap();
    assert!((online - exact).abs() < 0.02, "{online} vs {exact}");
}

#[test]
fn deterministic_output() {
    let pairs = gen_sim1(3_000, 2.0, 5);
    let grid = Arc::new(CutpointGrid::normal_quantiles(25));
    let config = StreamConfig::sliding(500, &BOTH).with_gap(7);
    let a = npcorr::run_pairs(&pairs, grid.clone(), config.clone()).unwrap();
    let b = npcorr::run_pairs(&pairs, grid, config).unwrap();
    assert_eq!(a, b);
}

#[test]
fn one_emission_per_observation_at_gap_one() {
    let pairs = gen_sim1(321, 0.5, 2);
    let grid = Arc::new(CutpointGrid::normal_quantiles(5));
    let out = npcorr::run_pairs(&pairs, grid, StreamConfig::all_past(&BOTH)).unwrap();
    assert_eq!(out.len(), 321);
    assert!(out.iter().enumerate().all(|(i, r)| r.t == i as u64 + 1));
}
