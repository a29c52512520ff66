use std::io::{Read, Write};
use std::sync::Arc;
use std::time::Instant;

use npcorr::grid::{empirical_quantile_cuts, normal_quantile_cuts, unique_levels, unique_value_cuts};
use npcorr::{Correlator, CutpointGrid};

use super::{open_output, output_error, Summary};
use crate::error::CliError;
use crate::input::{PairResult, PairSource};
use crate::manifest::{AxisCuts, GridSpec, RunManifest};
use crate::output::EmissionWriter;

fn axis_cuts(spec: &AxisCuts, sample: &[f64]) -> Result<Vec<f64>, CliError> {
    let no_data = || CliError::Data {
        row: 0,
        message: "no valid observations to estimate cutpoints from".into(),
    };
    Ok(match spec {
        AxisCuts::Explicit(c) => c.clone(),
        AxisCuts::Normal(k) => normal_quantile_cuts(*k),
        AxisCuts::Empirical(k) => {
            let probs: Vec<f64> = (1..=*k).map(|i| i as f64 / (*k + 1) as f64).collect();
            empirical_quantile_cuts(sample, &probs).map_err(|_| no_data())?
        }
        AxisCuts::Unique => {
            let levels = unique_levels(sample);
            if levels.is_empty() {
                return Err(no_data());
            }
            unique_value_cuts(&levels)?
        }
    })
}

/// Builds the grid, estimating data-driven axes from `warmup` pairs.
pub fn resolve_grid(spec: &GridSpec, warmup: &[(f64, f64)]) -> Result<CutpointGrid, CliError> {
    let valid = warmup.iter().filter(|(x, y)| !x.is_nan() && !y.is_nan());
    let xs: Vec<f64> = valid.clone().map(|p| p.0).collect();
    let ys: Vec<f64> = valid.map(|p| p.1).collect();
    Ok(CutpointGrid::new(axis_cuts(&spec.x, &xs)?, axis_cuts(&spec.y, &ys)?)?)
}

/// Streams the input through the online driver, writing emissions as they
/// occur. Data-driven grids first buffer the warm-up rows, then replay them.
pub fn cmd_run(manifest: &RunManifest, stdin: Box<dyn Read>, stdout: &mut dyn Write) -> Result<Summary, CliError> {
    let started = Instant::now();
    let mut source = PairSource::open(manifest, stdin)?;

    let mut buffered: Vec<(f64, f64)> = Vec::new();
    if manifest.grid.needs_data() {
        let limit = manifest.grid.warmup.unwrap_or(usize::MAX);
        for item in source.by_ref().take(limit) {
            buffered.push(item?);
        }
    }
    let grid = Arc::new(resolve_grid(&manifest.grid, &buffered)?);
    let mut driver = Correlator::new(grid, manifest.stream.clone())?;

    let out_path = manifest.output.as_deref();
    let out = open_output(out_path, stdout)?;
    let mut writer = EmissionWriter::new(out, &manifest.na).map_err(|e| output_error(out_path, e))?;
    let mut emissions = 0u64;

    let mut feed = |item: PairResult| -> Result<(), CliError> {
        let (x, y) = item?;
        if let Some(record) = driver.step(x, y) {
            emissions += 1;
            writer.write(&record).map_err(|e| output_error(out_path, e))?;
        }
        Ok(())
    };
    for pair in buffered {
        feed(Ok(pair))?;
    }
    for item in source.by_ref() {
        feed(item)?;
    }
    writer.finish().map_err(|e| output_error(out_path, e))?;

    Ok(Summary {
        observations: driver.observations(),
        skipped_nan: driver.skipped(),
        bad_rows: source.bad_rows(),
        emissions,
        wall: started.elapsed(),
    })
}
