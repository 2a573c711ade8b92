//! Execution strategy shared by the data-parallel loops of the workspace.
//!
//! With the `parallel` feature the default strategy fans work out over the
//! rayon pool; without it every strategy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Map then fold with an associative, commutative reduction.
    pub fn map_reduce<T, R, F, Id, Red>(self, items: Vec<T>, f: F, identity: Id, reduce: Red) -> R
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
        Id: Fn() -> R + Sync + Send,
        Red: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).reduce(identity, reduce),
            _ => items.into_iter().map(f).fold(identity(), reduce),
        }
    }
}
