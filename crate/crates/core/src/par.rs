//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! global pool; without it they fall back to plain iterators. Results are
//! always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// First item (in input order) satisfying `pred`.
#[cfg(feature = "parallel")]
pub(crate) fn find_first<T: Sync>(
    items: &[T],
    pred: impl Fn(&T) -> bool + Sync + Send,
) -> Option<&T> {
    items.par_iter().find_first(|x| pred(x))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first<T: Sync>(
    items: &[T],
    pred: impl Fn(&T) -> bool + Sync + Send,
) -> Option<&T> {
    items.iter().find(|x| pred(x))
}

/// Maps every item through a fallible function; on failure returns the error
/// of the first failing item in input order. Items after a known failure are
/// skipped.
#[cfg(feature = "parallel")]
pub(crate) fn try_map<T: Sync, R: Send, E: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, E> + Sync + Send,
) -> Result<Vec<R>, E> {
    use std::sync::atomic::{AtomicUsize, Ordering};

    let first_failure = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<Result<R, E>>> = items
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            if i > first_failure.load(Ordering::Relaxed) {
                return None;
            }
            let r = f(x);
            if r.is_err() {
                first_failure.fetch_min(i, Ordering::Relaxed);
            }
            Some(r)
        })
        .collect();
    // every index below the smallest failure was evaluated, so the first
    // `Some(Err)` is reached before any skipped slot
    results
        .into_iter()
        .map(|r| r.expect("skipped only after an earlier failure"))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map<T: Sync, R: Send, E: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, E> + Sync + Send,
) -> Result<Vec<R>, E> {
    items.iter().map(f).collect()
}

/// Whether the crate was built with rayon support.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
