//! Validated run configuration assembled from command-line arguments.

use std::path::PathBuf;

use npcorr::simgen::SimSpec;
use npcorr::{CorrelationKind, StreamConfig};

use crate::args::{ModeArg, RunArgs, SimArgs};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Stdin,
    File(PathBuf),
    Sim(SimSpec),
}

/// How one axis gets its cutpoints.
#[derive(Debug, Clone, PartialEq)]
pub enum AxisCuts {
    Explicit(Vec<f64>),
    Normal(usize),
    /// `k` sample quantiles at `i / (k + 1)`.
    Empirical(usize),
    Unique,
}

impl AxisCuts {
    pub fn needs_data(&self) -> bool {
        matches!(self, AxisCuts::Empirical(_) | AxisCuts::Unique)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x: AxisCuts,
    pub y: AxisCuts,
    /// Rows buffered to estimate data-driven cutpoints; `None` buffers all.
    pub warmup: Option<usize>,
}

impl GridSpec {
    pub fn needs_data(&self) -> bool {
        self.x.needs_data() || self.y.needs_data()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub source: InputSource,
    pub x_col: usize,
    pub y_col: usize,
    pub header: bool,
    pub skip_bad_rows: bool,
    pub grid: GridSpec,
    pub stream: StreamConfig,
    pub output: Option<PathBuf>,
    pub na: String,
}

pub fn sim_spec(sim: &SimArgs) -> Option<SimSpec> {
    if sim.sim1 {
        Some(SimSpec::sim1(sim.len, sim.sigma, sim.seed))
    } else if sim.sim2 {
        Some(SimSpec::sim2(sim.len, sim.m, sim.seed))
    } else {
        None
    }
}

/// Default cutpoint count: 30 for Spearman alone, 100 whenever Kendall is
/// requested.
pub fn default_cutpoints(kinds: &[CorrelationKind]) -> usize {
    if kinds.contains(&CorrelationKind::Kendall) {
        100
    } else {
        30
    }
}

impl RunManifest {
    pub fn from_args(args: &RunArgs) -> Result<Self, CliError> {
        let source = match (sim_spec(&args.sim), &args.input) {
            (Some(_), Some(_)) => return Err(CliError::config("--input cannot be combined with --sim1/--sim2")),
            (Some(spec), None) => {
                if !(args.sim.sigma.is_finite()) {
                    return Err(CliError::config("--sigma must be finite"));
                }
                InputSource::Sim(spec)
            }
            (None, Some(p)) if p.as_os_str() != "-" => InputSource::File(p.clone()),
            (None, _) => InputSource::Stdin,
        };
        if args.x_col == args.y_col {
            return Err(CliError::config("--x-col and --y-col must differ"));
        }

        let mode = match (args.mode, args.window) {
            (ModeArg::All, None) => npcorr::WindowMode::AllPast,
            (ModeArg::All, Some(_)) => return Err(CliError::config("--window needs --mode window")),
            (ModeArg::Window, None) => return Err(CliError::config("--mode window needs --window N")),
            (ModeArg::Window, Some(0)) => return Err(CliError::config("--window must be at least 1")),
            (ModeArg::Window, Some(w)) => npcorr::WindowMode::Sliding(w.try_into().expect("nonzero")),
        };
        let stream = StreamConfig {
            mode,
            n_gap: args.ngap,
            kinds: args.kinds.clone(),
        };
        stream.validate()?;

        let global = if let Some(k) = args.cuts_normal {
            AxisCuts::Normal(k)
        } else if let Some(k) = args.cuts_empirical {
            AxisCuts::Empirical(k)
        } else if args.cuts_unique {
            AxisCuts::Unique
        } else {
            AxisCuts::Normal(default_cutpoints(&args.kinds))
        };
        let grid = GridSpec {
            x: args.cuts_x.clone().map(AxisCuts::Explicit).unwrap_or_else(|| global.clone()),
            y: args.cuts_y.clone().map(AxisCuts::Explicit).unwrap_or(global),
            warmup: args.warmup,
        };
        if grid.warmup.is_some() && !grid.needs_data() {
            return Err(CliError::config("--warmup only applies to --cuts-empirical or --cuts-unique"));
        }
        if grid.warmup == Some(0) {
            return Err(CliError::config("--warmup must be at least 1"));
        }
        for (cuts, axis) in [(&grid.x, npcorr::Axis::X), (&grid.y, npcorr::Axis::Y)] {
            if let AxisCuts::Explicit(c) = cuts {
                npcorr::grid::Cutpoints::new(c.clone(), axis)?;
            }
        }

        Ok(RunManifest {
            source,
            x_col: args.x_col,
            y_col: args.y_col,
            header: args.header,
            skip_bad_rows: args.skip_bad_rows,
            grid,
            stream,
            output: args.output.clone().filter(|p| p.as_os_str() != "-"),
            na: args.na.clone(),
        })
    }
}
