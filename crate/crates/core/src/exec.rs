//! Sequential / data-parallel execution of the enumeration-heavy loops.
//!
//! Every reduction used with these helpers is associative and commutative
//! with a total-order tie-break, so the parallel and sequential paths return
//! bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    /// All execution modes compiled into this build.
    pub fn available() -> &'static [Exec] {
        #[cfg(feature = "parallel")]
        {
            &[Exec::Sequential, Exec::Parallel]
        }
        #[cfg(not(feature = "parallel"))]
        {
            &[Exec::Sequential]
        }
    }
}

/// Folds `f` over task indices `0..tasks`, merging partial results with
/// `reduce`.
pub(crate) fn fold_tasks<A, I, F, R>(exec: Exec, tasks: u64, identity: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        Exec::Sequential => {
            let _ = &reduce;
            (0..tasks).fold(identity(), fold)
        }
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..tasks)
            .into_par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce),
    }
}

/// Maps `f` over `items`, preserving order.
pub(crate) fn map_slice<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Reduces `f(item)` over `items` with an associative, commutative `pick`.
pub(crate) fn reduce_slice<T, U, F, P>(exec: Exec, items: &[T], f: F, pick: P) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
    P: Fn(U, U) -> U + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).reduce(pick),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).reduce_with(pick),
    }
}
