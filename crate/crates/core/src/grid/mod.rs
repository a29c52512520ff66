//! Cutpoint partitions and the count-matrix sketch.
//!
//! Each axis is split by `m*` finite, strictly increasing cutpoints into
//! `m = m* + 1` half-open cells `[c_{i-1}, c_i)`, with implicit sentinels
//! `c_0 = -inf` and `c_{m*+1} = +inf`. A value equal to a cutpoint lands in
//! the cell above it.
//!
//! Cell indices in this crate are 0-based: cell `i` on an axis holds values
//! with exactly `i` cutpoints less than or equal to them.

mod cuts;
mod sketch;

pub use cuts::{
    empirical_quantile_cuts, inverse_normal_cdf, normal_quantile_cuts, unique_value_cuts,
    unique_levels,
};
pub use sketch::CountSketch;

use crate::error::{Axis, Error, Result};

/// Sorted, finite cutpoints for one axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Cutpoints(Vec<f64>);

impl Cutpoints {
    pub fn new(cuts: Vec<f64>, axis: Axis) -> Result<Self> {
        for (index, c) in cuts.iter().enumerate() {
            if !c.is_finite() || (index > 0 && cuts[index - 1] >= *c) {
                return Err(Error::InvalidCutpoints { axis, index });
            }
        }
        if cuts.len() >= u32::MAX as usize {
            return Err(Error::InvalidCutpoints { axis, index: u32::MAX as usize });
        }
        Ok(Cutpoints(cuts))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Number of cells, `m* + 1`.
    pub fn cells(&self) -> usize {
        self.0.len() + 1
    }

    /// Cell holding `v`: the count of cutpoints `<= v`, by binary search.
    #[inline]
    pub fn locate(&self, v: f64) -> usize {
        self.0.partition_point(|&c| c <= v)
    }

    fn negated_reversed(&self) -> Cutpoints {
        Cutpoints(self.0.iter().rev().map(|c| -c).collect())
    }
}

/// Coordinates of a count-matrix cell (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row: row as u32, col: col as u32 }
    }
}

/// The product partition of the `x` and `y` axes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CutpointGrid {
    x: Cutpoints,
    y: Cutpoints,
}

impl CutpointGrid {
    pub fn new(x_cuts: Vec<f64>, y_cuts: Vec<f64>) -> Result<Self> {
        Ok(CutpointGrid {
            x: Cutpoints::new(x_cuts, Axis::X)?,
            y: Cutpoints::new(y_cuts, Axis::Y)?,
        })
    }

    /// Same normal-quantile cutpoints on both axes.
    pub fn normal_quantiles(k: usize) -> Self {
        let cuts = normal_quantile_cuts(k);
        CutpointGrid {
            x: Cutpoints(cuts.clone()),
            y: Cutpoints(cuts),
        }
    }

    /// Grid with a cell per integer level `0..rows` and `0..cols`.
    pub fn integer_levels(rows: usize, cols: usize) -> Self {
        let mids = |m: usize| Cutpoints((1..m).map(|i| i as f64 - 0.5).collect());
        CutpointGrid {
            x: mids(rows.max(1)),
            y: mids(cols.max(1)),
        }
    }

    pub fn x_cuts(&self) -> &[f64] {
        self.x.as_slice()
    }

    pub fn y_cuts(&self) -> &[f64] {
        self.y.as_slice()
    }

    /// `m1`, the number of row cells.
    pub fn rows(&self) -> usize {
        self.x.cells()
    }

    /// `m2`, the number of column cells.
    pub fn cols(&self) -> usize {
        self.y.cells()
    }

    /// Bins an observation. NaN in either coordinate is rejected; infinities
    /// fall into the outermost cells.
    #[inline]
    pub fn find_cell(&self, x: f64, y: f64) -> Result<Cell> {
        if x.is_nan() || y.is_nan() {
            return Err(Error::NanInput);
        }
        Ok(Cell {
            row: self.x.locate(x) as u32,
            col: self.y.locate(y) as u32,
        })
    }

    /// Axes swapped.
    pub fn transposed(&self) -> Self {
        CutpointGrid {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }

    /// Grid for `(-x, y)`, so that row order is reversed.
    pub fn x_reflected(&self) -> Self {
        CutpointGrid {
            x: self.x.negated_reversed(),
            y: self.y.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear_locate(cuts: &[f64], v: f64) -> usize {
        // cell i covers [c_{i-1}, c_i) with c_{-1} = -inf, c_{m*} = +inf
        (0..=cuts.len())
            .find(|&i| {
                let lo = if i == 0 { f64::NEG_INFINITY } else { cuts[i - 1] };
                let hi = if i == cuts.len() { f64::INFINITY } else { cuts[i] };
                lo <= v && v < hi
            })
            .unwrap_or(cuts.len())
    }

    #[test]
    fn sign_grid_cells() {
        let g = CutpointGrid::new(vec![0.0], vec![0.0]).unwrap();
        assert_eq!(g.find_cell(-0.3, 0.3).unwrap(), Cell::new(0, 1));
        // a value equal to a cutpoint goes to the upper cell
        assert_eq!(g.find_cell(0.0, 0.0).unwrap(), Cell::new(1, 1));
    }

    #[test]
    fn empty_axis_has_one_cell() {
        let g = CutpointGrid::new(vec![-1.0, 1.0], vec![]).unwrap();
        assert_eq!((g.rows(), g.cols()), (3, 1));
        assert_eq!(g.find_cell(5.0, 7.0).unwrap(), Cell::new(2, 0));
    }

    #[test]
    fn nan_rejected() {
        let g = CutpointGrid::new(vec![0.0], vec![0.0]).unwrap();
        assert_eq!(g.find_cell(f64::NAN, 0.0), Err(Error::NanInput));
        assert_eq!(g.find_cell(0.0, f64::NAN), Err(Error::NanInput));
        assert_eq!(g.find_cell(f64::NEG_INFINITY, f64::INFINITY).unwrap(), Cell::new(0, 1));
    }

    #[test]
    fn bad_cutpoints() {
        assert_eq!(
            CutpointGrid::new(vec![0.0, 0.0], vec![]),
            Err(Error::InvalidCutpoints { axis: Axis::X, index: 1 })
        );
        assert_eq!(
            CutpointGrid::new(vec![], vec![1.0, f64::INFINITY]),
            Err(Error::InvalidCutpoints { axis: Axis::Y, index: 1 })
        );
        assert!(CutpointGrid::new(vec![f64::NAN], vec![]).is_err());
        assert!(CutpointGrid::new(vec![2.0, 1.0], vec![]).is_err());
    }

    #[test]
    fn integer_level_grid_bins_levels() {
        let g = CutpointGrid::integer_levels(3, 2);
        assert_eq!(g.x_cuts(), &[0.5, 1.5]);
        for r in 0..3 {
            for c in 0..2 {
                assert_eq!(g.find_cell(r as f64, c as f64).unwrap(), Cell::new(r, c));
            }
        }
    }

    proptest! {
        #[test]
        fn binary_search_matches_linear_scan(
            mut cuts in prop::collection::vec(-100.0f64..100.0, 0..40),
            probes in prop::collection::vec(-150.0f64..150.0, 1..50),
        ) {
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let axis = Cutpoints::new(cuts.clone(), Axis::X).unwrap();
            for v in probes.iter().copied().chain(cuts.iter().copied()) {
                prop_assert_eq!(axis.locate(v), linear_locate(&cuts, v));
            }
        }
    }
}
