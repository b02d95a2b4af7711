//! Execution policy for the data-parallel loops (prime scans, Birch
//! enumeration, Monte Carlo sampling, Chebotarev shapes).
//!
//! Every parallel path collects results in input order, so outputs are
//! identical whatever the thread count.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Plain iterator on the calling thread.
    Sequential,
    /// Rayon on the global pool. Falls back to [`Exec::Sequential`] when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
    /// Rayon on a dedicated pool with this many workers.
    Threads(usize),
}

impl Exec {
    /// Policy for a `--threads` style setting: `1` means sequential, `0`
    /// means the global pool.
    pub fn from_threads(threads: usize) -> Self {
        match threads {
            0 => Exec::Parallel,
            1 => Exec::Sequential,
            n => Exec::Threads(n),
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Exec::Sequential)
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            match *self {
                Exec::Sequential => items.iter().map(f).collect(),
                Exec::Parallel => items.par_iter().map(f).collect(),
                Exec::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
                    Err(_) => items.par_iter().map(f).collect(),
                },
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            items.iter().map(f).collect()
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<U, F>(&self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        let idx: Vec<usize> = (0..n).collect();
        self.map(&idx, |&i| f(i))
    }
}
