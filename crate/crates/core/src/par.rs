//! Order-preserving map over a slice: rayon when the `parallel` feature is on,
//! a plain iterator otherwise. Results never depend on scheduling.

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Whether this build evaluates independent work items on the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
