//! Order-preserving execution of independent jobs.
//!
//! The solver hands sibling subproblems to an [`Executor`]. Results always
//! come back in input order, so output does not depend on scheduling.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Apply `f` to every item and return the results in input order.
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send;
}

/// Runs jobs one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}
