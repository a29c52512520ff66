//! Online-vs-batch timing and accuracy sweep over simulated streams.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use npcorr::oracles::{batch_emissions, exact};
use npcorr::simgen::SimSpec;
use npcorr::{CorrelationKind, Correlator, CutpointGrid, Execution, StreamConfig};

use super::{open_output, output_error};
use crate::args::{BenchArgs, DesignArg};
use crate::error::CliError;
use crate::output::format_value;

/// Averages over replications for one sweep setting.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub design: &'static str,
    pub len: u64,
    pub cutpoints: usize,
    pub n_gap: u64,
    pub kind: CorrelationKind,
    pub reps: u64,
    pub seed_first: u64,
    pub online_secs: f64,
    pub batch_secs: Option<f64>,
    pub l1_error: Option<f64>,
}

pub const BENCH_HEADER: &str = "design,T,cutpoints,n_gap,kind,reps,seed_first,online_secs,batch_secs,l1_error";

type Key = (u64, usize, u64, CorrelationKind);

#[derive(Default)]
struct Acc {
    online: Vec<f64>,
    batch: Vec<f64>,
    l1: Vec<f64>,
}

struct Sample {
    key: Key,
    online: Duration,
    batch: Option<Duration>,
    l1: Option<f64>,
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn stream_config(args: &BenchArgs, kind: CorrelationKind, n_gap: u64) -> StreamConfig {
    match args.window {
        Some(w) => StreamConfig::sliding(w, &[kind]),
        None => StreamConfig::all_past(&[kind]),
    }
    .with_gap(n_gap)
}

fn replicate(args: &BenchArgs, len: u64, seed: u64) -> Vec<Sample> {
    let spec = match args.design {
        DesignArg::Sim1 => SimSpec::sim1(len, args.sigma, seed),
        DesignArg::Sim2 => SimSpec::sim2(len, args.m, seed),
    };
    let pairs = spec.generate();
    let tail = args.window.map_or(0, |w| pairs.len().saturating_sub(w));
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs[tail..].iter().copied().unzip();

    let mut out = Vec::new();
    for &kind in &args.kinds {
        let truth = exact(kind, &xs, &ys, Execution::Sequential).ok().and_then(|e| e.value);
        for &n_gap in &args.ngaps {
            let config = stream_config(args, kind, n_gap);
            // batch cost does not depend on the grid; time it once per n_gap
            let batch = (len <= args.batch_max_t).then(|| {
                let t0 = Instant::now();
                let recs = batch_emissions(&pairs, &config, Execution::Sequential);
                std::hint::black_box(recs);
                t0.elapsed()
            });
            for &k in &args.cutpoints {
                let grid = Arc::new(CutpointGrid::normal_quantiles(k));
                let t0 = Instant::now();
                let mut driver = Correlator::new(grid, config.clone()).expect("validated config");
                let mut emitted = 0u64;
                for &(x, y) in &pairs {
                    emitted += driver.step(x, y).is_some() as u64;
                }
                let online = t0.elapsed();
                std::hint::black_box(emitted);
                let estimate = driver.emit().get(kind).and_then(|e| e.value);
                let l1 = truth.zip(estimate).map(|(a, b)| (a - b).abs());
                out.push(Sample {
                    key: (len, k, n_gap, kind),
                    online,
                    batch,
                    l1,
                });
            }
        }
    }
    out
}

/// Runs the sweep and returns one row per setting, sorted by
/// `(T, cutpoints, n_gap, kind)`.
pub fn run_sweep(args: &BenchArgs) -> Result<Vec<BenchRow>, CliError> {
    if args.reps == 0 || args.t_values.is_empty() || args.cutpoints.is_empty() || args.ngaps.is_empty() {
        return Err(CliError::config("bench sweep needs at least one T, cutpoint count, n_gap and replication"));
    }
    if args.ngaps.contains(&0) || args.window == Some(0) || args.kinds.is_empty() {
        return Err(CliError::config("n_gap and window must be positive and kinds non-empty"));
    }
    let jobs: Vec<(u64, u64)> = args
        .t_values
        .iter()
        .flat_map(|&t| (0..args.reps).map(move |r| (t, args.seed + r)))
        .collect();
    let exec = if args.parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let samples = exec.map(&jobs, |&(len, seed)| replicate(args, len, seed));

    let mut acc: BTreeMap<Key, Acc> = BTreeMap::new();
    for s in samples.into_iter().flatten() {
        let a = acc.entry(s.key).or_default();
        a.online.push(s.online.as_secs_f64());
        if let Some(b) = s.batch {
            a.batch.push(b.as_secs_f64());
        }
        if let Some(e) = s.l1 {
            a.l1.push(e);
        }
    }
    let design = match args.design {
        DesignArg::Sim1 => "sim1",
        DesignArg::Sim2 => "sim2",
    };
    Ok(acc
        .into_iter()
        .map(|((len, cutpoints, n_gap, kind), a)| BenchRow {
            design,
            len,
            cutpoints,
            n_gap,
            kind,
            reps: args.reps,
            seed_first: args.seed,
            online_secs: mean(&a.online).unwrap_or(f64::NAN),
            batch_secs: mean(&a.batch),
            l1_error: mean(&a.l1),
        })
        .collect())
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<Vec<BenchRow>, CliError> {
    let rows = run_sweep(args)?;
    let path = args.output.as_deref().filter(|p| p.as_os_str() != "-");
    let mut out = open_output(path, stdout)?;
    let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), format_value);
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "{BENCH_HEADER}")?;
        for r in &rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.design,
                r.len,
                r.cutpoints,
                r.n_gap,
                r.kind,
                r.reps,
                r.seed_first,
                format_value(r.online_secs),
                opt(r.batch_secs),
                opt(r.l1_error)
            )?;
        }
        out.flush()
    };
    write().map_err(|e| output_error(path, e))?;
    Ok(rows)
}
