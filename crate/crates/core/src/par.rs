//! Order-preserving data parallelism.
//!
//! With the `parallel` feature and `workers > 1` work runs on a dedicated
//! rayon pool; otherwise it runs inline. Both paths return results in input
//! order.

use crate::config::CHUNK;

/// Splits `start..end` into fixed-size half-open chunks.
pub fn chunk_bounds(start: u64, end: u64) -> Vec<(u64, u64)> {
    let step = CHUNK as u64;
    let mut out = Vec::with_capacity(((end.saturating_sub(start)) / step + 1) as usize);
    let mut lo = start;
    while lo < end {
        let hi = (lo + step).min(end);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

#[cfg(feature = "parallel")]
pub fn map_ordered<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        // A pool that cannot be built degrades to the inline path.
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, R, F>(items: &[T], _workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// True when this build can actually use more than one worker.
pub fn is_parallel_build() -> bool {
    cfg!(feature = "parallel")
}
