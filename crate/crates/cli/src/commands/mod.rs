mod batch;
mod bench;
mod gen;
mod run;

pub use batch::cmd_batch;
pub use bench::{cmd_bench, run_sweep, BenchRow, BENCH_HEADER};
pub use gen::cmd_gen;
pub use run::{cmd_run, resolve_grid};

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use crate::error::CliError;

/// Counters reported on standard error after a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub observations: u64,
    pub skipped_nan: u64,
    pub bad_rows: u64,
    pub emissions: u64,
    pub wall: Duration,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "observations={} skipped_nan={} bad_rows={} emissions={} wall_secs={:.6}",
            self.observations,
            self.skipped_nan,
            self.bad_rows,
            self.emissions,
            self.wall.as_secs_f64()
        )
    }
}

/// Opens `path` for writing, or wraps `stdout`.
pub(crate) fn open_output<'a>(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(stdout)),
    })
}

pub(crate) fn output_error(path: Option<&Path>, e: std::io::Error) -> CliError {
    CliError::io(path.map_or_else(|| "<stdout>".into(), Path::to_path_buf), e)
}
