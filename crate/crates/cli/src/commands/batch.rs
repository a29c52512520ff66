use std::io::{Read, Write};
use std::time::Instant;

use npcorr::oracles::batch_emissions;
use npcorr::Execution;

use super::{open_output, output_error, Summary};
use crate::error::CliError;
use crate::input::PairSource;
use crate::manifest::RunManifest;
use crate::output::EmissionWriter;

/// Reads the whole input and recomputes the exact correlations over the
/// prefix (or window) ending at every emission point.
pub fn cmd_batch(manifest: &RunManifest, stdin: Box<dyn Read>, stdout: &mut dyn Write) -> Result<Summary, CliError> {
    let started = Instant::now();
    let mut source = PairSource::open(manifest, stdin)?;
    let pairs = source.by_ref().collect::<Result<Vec<_>, _>>()?;
    let skipped_nan = pairs.iter().filter(|(x, y)| x.is_nan() || y.is_nan()).count() as u64;

    let records = batch_emissions(&pairs, &manifest.stream, Execution::Parallel);

    let out_path = manifest.output.as_deref();
    let out = open_output(out_path, stdout)?;
    let mut writer = EmissionWriter::new(out, &manifest.na).map_err(|e| output_error(out_path, e))?;
    for record in &records {
        writer.write(record).map_err(|e| output_error(out_path, e))?;
    }
    writer.finish().map_err(|e| output_error(out_path, e))?;

    Ok(Summary {
        observations: pairs.len() as u64 - skipped_nan,
        skipped_nan,
        bad_rows: source.bad_rows(),
        emissions: records.len() as u64,
        wall: started.elapsed(),
    })
}
