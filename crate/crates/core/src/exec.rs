//! Execution-mode selection for the data-parallel kernels.
//!
//! Embarrassingly parallel stages (norm evaluation over a step-size grid,
//! batch analysis of matrix families, subset levels of the division-free
//! determinant) either run sequentially or fan out over a rayon pool. Results
//! are collected in input order and reduced sequentially, so both modes are
//! bit-identical; the mode only changes wall-clock time.

/// How data-parallel stages are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// Process items in order on the calling thread.
    Sequential,
    /// Fan work out over the global rayon pool (`parallel` feature).
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Execution::Parallel
    }

    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Execution::Sequential
    }
}

impl Execution {
    /// Apply `f` to every element of `items`, returning results in input order.
    pub(crate) fn map_slice<'a, T, U, F>(self, items: &'a [T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&'a T) -> U + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_slice_preserves_order() {
        let items: Vec<usize> = (0..5).collect();
        let out = Execution::Sequential.map_slice(&items, |&i| 2 * i);
        assert_eq!(out, vec![0, 2, 4, 6, 8]);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_map_matches_sequential() {
        let items: Vec<usize> = (0..100).collect();
        let seq = Execution::Sequential.map_slice(&items, |&i| i * i + 1);
        let par = Execution::Parallel.map_slice(&items, |&i| i * i + 1);
        assert_eq!(seq, par);
    }
}
