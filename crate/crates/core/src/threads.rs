//! Optional data parallelism, capped by the `QCONV_THREADS` environment
//! variable (positive integer; 1 forces sequential execution).
//!
//! Work is only ever split across disjoint output chunks or independent
//! term evaluations, so results are bit-identical for any thread count.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;
    use rayon::ThreadPool;
    use std::sync::OnceLock;

    static POOL: OnceLock<Option<ThreadPool>> = OnceLock::new();

    fn pool() -> Option<&'static ThreadPool> {
        POOL.get_or_init(|| {
            let cap = std::env::var("QCONV_THREADS")
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&n| n > 0);
            match cap {
                Some(1) => None,
                Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().ok(),
                None => rayon::ThreadPoolBuilder::new().build().ok(),
            }
        })
        .as_ref()
    }

    pub fn for_each_chunk<T: Send>(
        data: &mut [T],
        chunk: usize,
        f: impl Fn(usize, &mut [T]) + Sync,
    ) {
        match pool() {
            Some(p) => p.install(|| {
                data.par_chunks_mut(chunk)
                    .enumerate()
                    .for_each(|(i, c)| f(i, c));
            }),
            None => {
                for (i, c) in data.chunks_mut(chunk).enumerate() {
                    f(i, c);
                }
            }
        }
    }

    /// Order-preserving map; safe for reductions accumulated afterwards.
    pub fn map_collect<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
        match pool() {
            Some(p) => p.install(|| items.par_iter().map(&f).collect()),
            None => items.iter().map(f).collect(),
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn for_each_chunk<T: Send>(
        data: &mut [T],
        chunk: usize,
        f: impl Fn(usize, &mut [T]) + Sync,
    ) {
        for (i, c) in data.chunks_mut(chunk).enumerate() {
            f(i, c);
        }
    }

    pub fn map_collect<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
        items.iter().map(f).collect()
    }
}

pub(crate) use imp::{for_each_chunk, map_collect};
