//! Sequential / data-parallel dispatch.
//!
//! Every data-parallel loop in the crate goes through [`Execution`]. With the
//! `parallel` feature disabled, [`Execution::Parallel`] silently runs the
//! sequential path, so callers never need their own `cfg` switches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Folds each chunk into an accumulator, then combines accumulators.
    ///
    /// `reduce` must be associative; chunk boundaries differ between the
    /// two execution modes.
    pub fn fold_chunks<T, A, I, F, R>(
        self,
        items: &[T],
        chunk_len: usize,
        init: I,
        fold: F,
        reduce: R,
    ) -> A
    where
        T: Sync,
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, &[T]) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let chunk_len = chunk_len.max(1);
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items
                .par_chunks(chunk_len)
                .fold(&init, &fold)
                .reduce(&init, &reduce);
        }
        // one accumulator threads through every chunk, so nothing to combine
        let _ = reduce;
        items.chunks(chunk_len).fold(init(), fold)
    }

    /// Sums `f(i)` over `0..n` with an associative combiner.
    pub fn reduce_range<A, I, F, R>(self, n: usize, init: I, f: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(usize) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(&f).reduce(&init, &reduce);
        }
        (0..n).map(f).fold(init(), reduce)
    }

    /// Number of worker threads work is split over.
    pub fn threads(self) -> usize {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return rayon::current_num_threads();
        }
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..10_000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(exec.map(&items, |v| v * 2)[9_999], 19_998);
            let sum = exec.fold_chunks(&items, 333, || 0u64, |a, c| a + c.iter().sum::<u64>(), |a, b| a + b);
            assert_eq!(sum, 49_995_000);
            let sq = exec.reduce_range(100, || 0u64, |i| (i * i) as u64, |a, b| a + b);
            assert_eq!(sq, 328_350);
        }
    }
}
