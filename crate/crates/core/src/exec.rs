//! Injection point for parallelism.
//!
//! Estimators split their work into indexed jobs (sample chunks, report rows)
//! and hand them to an [`Executor`]. Results come back in index order, so the
//! final reduction is identical whether the jobs ran on one thread or many.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Evaluate `job(0..count)` and return the results in index order.
    fn map<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every job on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(job).collect()
    }
}
