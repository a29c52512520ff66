//! The online driver: bin each observation, update the sketch, and emit
//! correlations every `n_gap` accepted observations, over all past data or a
//! sliding window.

use std::collections::VecDeque;
use std::num::NonZeroUsize;
use std::sync::Arc;

use crate::estimators::{estimate_from_sketch, CorrelationEstimate, CorrelationKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid::{Cell, CountSketch, CutpointGrid};
use crate::oracles::PearsonState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    AllPast,
    Sliding(NonZeroUsize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StreamConfig {
    pub mode: WindowMode,
    /// Emission period, `>= 1`.
    pub n_gap: u64,
    pub kinds: Vec<CorrelationKind>,
}

impl StreamConfig {
    pub fn all_past(kinds: &[CorrelationKind]) -> Self {
        StreamConfig {
            mode: WindowMode::AllPast,
            n_gap: 1,
            kinds: kinds.to_vec(),
        }
    }

    /// # Panics
    /// If `window` is zero.
    pub fn sliding(window: usize, kinds: &[CorrelationKind]) -> Self {
        StreamConfig {
            mode: WindowMode::Sliding(NonZeroUsize::new(window).expect("window must be positive")),
            n_gap: 1,
            kinds: kinds.to_vec(),
        }
    }

    pub fn with_gap(mut self, n_gap: u64) -> Self {
        self.n_gap = n_gap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_gap == 0 {
            return Err(Error::InvalidConfig("n_gap must be at least 1".into()));
        }
        if self.kinds.is_empty() {
            return Err(Error::InvalidConfig("no correlation kinds requested".into()));
        }
        let mut seen = self.kinds.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.kinds.len() {
            return Err(Error::InvalidConfig("correlation kinds repeated".into()));
        }
        Ok(())
    }

    pub fn window(&self) -> Option<usize> {
        match self.mode {
            WindowMode::AllPast => None,
            WindowMode::Sliding(w) => Some(w.get()),
        }
    }
}

/// Estimates produced after observation `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionRecord {
    pub t: u64,
    pub estimates: Vec<(CorrelationKind, CorrelationEstimate)>,
}

impl EmissionRecord {
    pub fn get(&self, kind: CorrelationKind) -> Option<CorrelationEstimate> {
        self.estimates.iter().find(|(k, _)| *k == kind).map(|(_, e)| *e)
    }
}

/// FIFO of the cells of the last `capacity` observations. Raw values are
/// kept as well only when Pearson is tracked.
#[derive(Debug, Clone)]
pub struct ObservationWindow {
    cells: VecDeque<Cell>,
    raw: Option<VecDeque<(f64, f64)>>,
    capacity: usize,
}

impl ObservationWindow {
    pub fn new(capacity: usize, keep_raw: bool) -> Self {
        // capacity can be huge; let the deque grow instead of reserving it all
        let reserve = capacity.min(1 << 16);
        ObservationWindow {
            cells: VecDeque::with_capacity(reserve),
            raw: keep_raw.then(|| VecDeque::with_capacity(reserve)),
            capacity,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.cells.len() == self.capacity
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Appends, returning the evicted entry when the window was full.
    fn push(&mut self, cell: Cell, raw: (f64, f64)) -> Option<(Cell, Option<(f64, f64)>)> {
        let evicted = if self.is_full() {
            let c = self.cells.pop_front().expect("full window is non-empty");
            let r = self.raw.as_mut().and_then(|q| q.pop_front());
            Some((c, r))
        } else {
            None
        };
        self.cells.push_back(cell);
        if let Some(q) = self.raw.as_mut() {
            q.push_back(raw);
        }
        evicted
    }
}

/// Online correlation driver for one `(x, y)` stream.
#[derive(Debug, Clone)]
pub struct Correlator {
    sketch: CountSketch,
    window: Option<ObservationWindow>,
    pearson: Option<PearsonState>,
    config: StreamConfig,
    t: u64,
    skipped: u64,
}

impl Correlator {
    pub fn new(grid: Arc<CutpointGrid>, config: StreamConfig) -> Result<Self> {
        config.validate()?;
        let wants_pearson = config.kinds.contains(&CorrelationKind::Pearson);
        Ok(Correlator {
            sketch: CountSketch::new(grid),
            window: config.window().map(|w| ObservationWindow::new(w, wants_pearson)),
            pearson: wants_pearson.then(PearsonState::default),
            config,
            t: 0,
            skipped: 0,
        })
    }

    pub fn sketch(&self) -> &CountSketch {
        &self.sketch
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn window(&self) -> Option<&ObservationWindow> {
        self.window.as_ref()
    }

    /// Accepted observations so far.
    pub fn observations(&self) -> u64 {
        self.t
    }

    /// Pairs rejected for containing NaN.
    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    /// Feeds one observation. Returns a record when the accepted count
    /// reaches a multiple of `n_gap`. NaN pairs are counted and ignored.
    pub fn step(&mut self, x: f64, y: f64) -> Option<EmissionRecord> {
        let cell = match self.sketch.grid().find_cell(x, y) {
            Ok(cell) => cell,
            Err(_) => {
                self.skipped += 1;
                return None;
            }
        };
        if let Some(window) = self.window.as_mut() {
            if let Some((old, raw)) = window.push(cell, (x, y)) {
                self.sketch
                    .remove(old)
                    .expect("evicted cell must be present in the sketch");
                if let (Some(p), Some((ox, oy))) = (self.pearson.as_mut(), raw) {
                    p.remove(ox, oy);
                }
            }
        }
        self.sketch.insert(cell).expect("grid cells are in range");
        if let Some(p) = self.pearson.as_mut() {
            p.update(x, y);
        }
        self.t += 1;
        self.t.is_multiple_of(self.config.n_gap).then(|| self.emit())
    }

    /// Current estimates regardless of the emission schedule.
    pub fn emit(&self) -> EmissionRecord {
        let estimates = self
            .config
            .kinds
            .iter()
            .map(|&kind| {
                let est = match kind {
                    CorrelationKind::Pearson => self.pearson.map(|p| p.value()).unwrap_or_else(|| {
                        CorrelationEstimate::undefined(self.sketch.total())
                    }),
                    _ => estimate_from_sketch(kind, &self.sketch).expect("sketch kind"),
                };
                (kind, est)
            })
            .collect();
        EmissionRecord { t: self.t, estimates }
    }
}

/// Runs a fallible observation source through a fresh driver.
///
/// The first source error is returned with the 0-based index of the record
/// that produced it.
pub fn run_stream<I, E>(source: I, grid: Arc<CutpointGrid>, config: StreamConfig) -> Result<Vec<EmissionRecord>>
where
    I: IntoIterator<Item = std::result::Result<(f64, f64), E>>,
    E: std::fmt::Display,
{
    let mut driver = Correlator::new(grid, config)?;
    let mut out = Vec::new();
    for (index, item) in source.into_iter().enumerate() {
        let (x, y) = item.map_err(|e| Error::Source {
            index: index as u64,
            message: e.to_string(),
        })?;
        out.extend(driver.step(x, y));
    }
    Ok(out)
}

/// [`run_stream`] over in-memory pairs.
pub fn run_pairs(pairs: &[(f64, f64)], grid: Arc<CutpointGrid>, config: StreamConfig) -> Result<Vec<EmissionRecord>> {
    let mut driver = Correlator::new(grid, config)?;
    Ok(pairs.iter().filter_map(|&(x, y)| driver.step(x, y)).collect())
}

/// Builds one all-past sketch from `pairs` by binning shards independently
/// and merging. Returns the sketch and the number of NaN pairs skipped.
pub fn ingest_sharded(grid: Arc<CutpointGrid>, pairs: &[(f64, f64)], exec: Execution) -> (CountSketch, u64) {
    let shard = (pairs.len() / (exec.threads() * 4)).max(4096);
    let empty = || (CountSketch::new(grid.clone()), 0u64);
    exec.fold_chunks(
        pairs,
        shard,
        empty,
        |(mut sketch, mut skipped), chunk| {
            for &(x, y) in chunk {
                if sketch.insert_point(x, y).is_err() {
                    skipped += 1;
                }
            }
            (sketch, skipped)
        },
        |(mut a, sa), (b, sb)| {
            a.merge_from(&b).expect("shards share one grid");
            (a, sa + sb)
        },
    )
}
