use std::sync::Arc;

use super::{Cell, CutpointGrid};
use crate::error::{Error, Result};

/// The `m1 x m2` count matrix over a [`CutpointGrid`], with cached row sums,
/// column sums and total.
///
/// Counts are `u64`. A sketch is a plain value: clone it to snapshot, move it
/// across threads freely, and combine shards with [`CountSketch::merge`].
#[derive(Debug, Clone)]
pub struct CountSketch {
    grid: Arc<CutpointGrid>,
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl PartialEq for CountSketch {
    fn eq(&self, other: &Self) -> bool {
        self.same_grid(other) && self.counts == other.counts && self.total == other.total
    }
}

impl CountSketch {
    pub fn new(grid: Arc<CutpointGrid>) -> Self {
        let (rows, cols) = (grid.rows(), grid.cols());
        CountSketch {
            grid,
            rows,
            cols,
            counts: vec![0; rows * cols],
            row_sums: vec![0; rows],
            col_sums: vec![0; cols],
            total: 0,
        }
    }

    /// Builds a sketch from an explicit row-major matrix of counts.
    ///
    /// The grid is [`CutpointGrid::integer_levels`], so cell `(i, j)` holds
    /// the observation `(i as f64, j as f64)`.
    ///
    /// # Panics
    /// If `matrix` is empty or ragged.
    pub fn from_counts<R: AsRef<[u64]>>(matrix: &[R]) -> Self {
        let rows = matrix.len();
        assert!(rows > 0, "count matrix needs at least one row");
        let cols = matrix[0].as_ref().len();
        assert!(cols > 0, "count matrix needs at least one column");
        let mut sketch = CountSketch::new(Arc::new(CutpointGrid::integer_levels(rows, cols)));
        for (i, row) in matrix.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged count matrix");
            for (j, &c) in row.iter().enumerate() {
                sketch.add_unchecked(i, j, c);
            }
        }
        sketch
    }

    pub fn grid(&self) -> &Arc<CutpointGrid> {
        &self.grid
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    /// Counts of row `i`, one entry per column.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.counts[i * self.cols..(i + 1) * self.cols]
    }

    pub fn count(&self, cell: Cell) -> u64 {
        self.counts[cell.row as usize * self.cols + cell.col as usize]
    }

    /// Row-major view of all counts.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Non-empty cells and their counts, row-major.
    pub fn occupied(&self) -> impl Iterator<Item = (Cell, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (Cell::new(k / self.cols, k % self.cols), c))
    }

    fn check(&self, cell: Cell) -> Result<usize> {
        let (row, col) = (cell.row as usize, cell.col as usize);
        if row >= self.rows || col >= self.cols {
            return Err(Error::CellOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(row * self.cols + col)
    }

    fn add_unchecked(&mut self, row: usize, col: usize, c: u64) {
        self.counts[row * self.cols + col] += c;
        self.row_sums[row] += c;
        self.col_sums[col] += c;
        self.total += c;
    }

    pub fn insert(&mut self, cell: Cell) -> Result<()> {
        let k = self.check(cell)?;
        self.counts[k] += 1;
        self.row_sums[cell.row as usize] += 1;
        self.col_sums[cell.col as usize] += 1;
        self.total += 1;
        Ok(())
    }

    /// Undoes one [`insert`](Self::insert). Fails on an empty cell, which
    /// means the caller's bookkeeping is corrupt.
    pub fn remove(&mut self, cell: Cell) -> Result<()> {
        let k = self.check(cell)?;
        if self.counts[k] == 0 {
            return Err(Error::EmptyCell {
                row: cell.row as usize,
                col: cell.col as usize,
            });
        }
        self.counts[k] -= 1;
        self.row_sums[cell.row as usize] -= 1;
        self.col_sums[cell.col as usize] -= 1;
        self.total -= 1;
        Ok(())
    }

    /// Bins `(x, y)` on this sketch's grid and inserts it.
    pub fn insert_point(&mut self, x: f64, y: f64) -> Result<Cell> {
        let cell = self.grid.find_cell(x, y)?;
        self.insert(cell)?;
        Ok(cell)
    }

    fn same_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Adds `other`'s counts into `self`.
    pub fn merge_from(&mut self, other: &CountSketch) -> Result<()> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        for (a, b) in self.row_sums.iter_mut().zip(&other.row_sums) {
            *a += b;
        }
        for (a, b) in self.col_sums.iter_mut().zip(&other.col_sums) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }

    /// Elementwise sum of two sketches over the same grid.
    pub fn merge(&self, other: &CountSketch) -> Result<CountSketch> {
        let mut out = self.clone();
        out.merge_from(other)?;
        Ok(out)
    }

    /// Empties every cell, keeping the grid.
    pub fn clear(&mut self) {
        self.counts.fill(0);
        self.row_sums.fill(0);
        self.col_sums.fill(0);
        self.total = 0;
    }

    /// The sketch of `(y, x)`.
    pub fn transposed(&self) -> CountSketch {
        let mut out = CountSketch::new(Arc::new(self.grid.transposed()));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.add_unchecked(j, i, self.counts[i * self.cols + j]);
            }
        }
        out
    }

    /// The sketch of `(-x, y)`: row order reversed.
    pub fn rows_reversed(&self) -> CountSketch {
        let mut out = CountSketch::new(Arc::new(self.grid.x_reflected()));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.add_unchecked(self.rows - 1 - i, j, self.counts[i * self.cols + j]);
            }
        }
        out
    }

    /// True when the cached sums agree with the counts.
    pub fn is_consistent(&self) -> bool {
        let rows_ok = (0..self.rows).all(|i| self.row(i).iter().sum::<u64>() == self.row_sums[i]);
        let cols_ok = (0..self.cols)
            .all(|j| (0..self.rows).map(|i| self.counts[i * self.cols + j]).sum::<u64>() == self.col_sums[j]);
        rows_ok
            && cols_ok
            && self.row_sums.iter().sum::<u64>() == self.total
            && self.col_sums.iter().sum::<u64>() == self.total
    }
}
