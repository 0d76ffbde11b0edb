//! Ordered data-parallel map with a sequential fallback.

use crate::annotation::AnnotatedSentence;
use crate::engine::{generate_questions, HeuristicConfig, QgExample};

#[derive(Debug, thiserror::Error)]
pub enum ExecutorError {
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[cfg(feature = "parallel")]
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Runs independent work items and returns results in input order.
pub struct Executor {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl std::fmt::Debug for Executor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Executor").field("workers", &self.workers).finish()
    }
}

impl Executor {
    pub fn sequential() -> Self {
        Executor {
            workers: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// A pool of `workers` threads. One worker, or a build without the
    /// `parallel` feature, runs on the calling thread.
    pub fn new(workers: usize) -> Result<Self, ExecutorError> {
        if workers == 0 {
            return Err(ExecutorError::ZeroWorkers);
        }
        if workers == 1 {
            return Ok(Self::sequential());
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
            Ok(Executor { workers, pool: Some(pool) })
        }
        #[cfg(not(feature = "parallel"))]
        {
            Ok(Executor { workers: 1 })
        }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn map_ordered<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }
}

impl Default for Executor {
    fn default() -> Self {
        Self::sequential()
    }
}

/// `generate_questions` over many sentences; one result list per sentence.
pub fn generate_batch(
    sentences: &[AnnotatedSentence],
    cfg: &HeuristicConfig,
    executor: &Executor,
) -> Vec<Vec<QgExample>> {
    executor.map_ordered(sentences, |s| generate_questions(s, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_workers_rejected() {
        assert!(matches!(Executor::new(0), Err(ExecutorError::ZeroWorkers)));
    }

    #[test]
    fn order_is_preserved() {
        let exec = Executor::new(4).unwrap();
        let items: Vec<u64> = (0..1000).collect();
        let out = exec.map_ordered(&items, |x| x * 3);
        assert_eq!(out, items.iter().map(|x| x * 3).collect::<Vec<_>>());
    }
}
