//! Execution policy for the data-parallel scans.
//!
//! Every scan in the crate runs over an index range `0..n` and combines
//! per-index results with an associative, commutative reduction (sums, lcm,
//! "first index in range order"). Results are therefore identical for any
//! worker count. With the `parallel` feature disabled, or with one worker,
//! everything runs on the calling thread.

use std::fmt;
#[cfg(feature = "parallel")]
use std::sync::Arc;

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone)]
pub struct Exec {
    threads: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl fmt::Debug for Exec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Exec")
            .field("threads", &self.threads)
            .finish()
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::sequential()
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec {
            threads: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// A dedicated pool of `threads` workers. Without the `parallel` feature
    /// the count is recorded but work stays on the calling thread.
    pub fn with_threads(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::InvalidArgument(
                "thread count must be positive".into(),
            ));
        }
        if threads == 1 {
            return Ok(Exec::sequential());
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(Exec {
                threads,
                pool: Some(Arc::new(pool)),
            })
        }
        #[cfg(not(feature = "parallel"))]
        Ok(Exec { threads })
    }

    /// One worker per available core.
    pub fn all_cores() -> Self {
        let n = std::thread::available_parallelism().map_or(1, |n| n.get());
        Exec::with_threads(n).unwrap_or_else(|_| Exec::sequential())
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn is_parallel(&self) -> bool {
        #[cfg(feature = "parallel")]
        {
            self.pool.is_some()
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }

    /// Folds `0..n` into per-worker accumulators and merges them.
    pub fn fold_reduce<T, I, F, M>(&self, n: u64, init: I, fold: F, merge: M) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(T, u64) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| {
                (0..n)
                    .into_par_iter()
                    .fold(&init, &fold)
                    .reduce(&init, &merge)
            });
        }
        let _ = merge;
        (0..n).fold(init(), fold)
    }

    /// The result for the smallest index in `0..n` for which `f` returns `Some`.
    pub fn find_first<T, F>(&self, n: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| (0..n).into_par_iter().find_map_first(&f));
        }
        (0..n).find_map(f)
    }

    /// `f(0), …, f(n-1)` in index order.
    pub fn map_collect<T, F>(&self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| (0..n).into_par_iter().map(&f).collect());
        }
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_agree_across_worker_counts() {
        let expected: u64 = (0..10_000u64).map(|i| i * i % 97).sum();
        for threads in [1, 2, 8] {
            let exec = Exec::with_threads(threads).unwrap();
            let got = exec.fold_reduce(10_000, || 0u64, |acc, i| acc + i * i % 97, |a, b| a + b);
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn find_first_is_order_stable() {
        for threads in [1, 2, 8] {
            let exec = Exec::with_threads(threads).unwrap();
            let hit = exec.find_first(100_000, |i| (i % 7919 == 7918).then_some(i));
            assert_eq!(hit, Some(7918));
        }
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(Exec::with_threads(0).is_err());
    }
}
