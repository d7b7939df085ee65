//! Data-parallel inner loops: rayon when the `parallel` feature is enabled
//! (the default), plain sequential loops otherwise. Both paths produce
//! identical output for identical input because every work item derives its
//! randomness from its own index, never from shared state.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps replicate indices `0..n` through `f`, returning results in index
/// order regardless of scheduling.
pub fn map_replicates<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_replicates_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_replicates_seq(n, f)
    }
}

/// Sequential baseline, always available; benches compare this against the
/// rayon path.
pub fn map_replicates_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_replicates_par<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `0..n` with per-worker scratch and reduces with `max`. `None` iff
/// `n == 0`.
pub fn map_reduce_max<S, T, I, F>(n: usize, init: I, f: F) -> Option<T>
where
    S: Send,
    T: Ord + Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map_init(&init, |scratch, i| f(scratch, i))
            .max()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut scratch = init();
        (0..n).map(|i| f(&mut scratch, i)).max()
    }
}

/// Runs `f` on a dedicated pool with `workers` threads. With the `parallel`
/// feature disabled the worker count is ignored and `f` runs inline.
pub fn with_worker_count<T, F>(workers: usize, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replicate_order_is_preserved() {
        let out = map_replicates(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn seq_and_default_agree() {
        let a = map_replicates(64, |i| i as u64 * 3 + 1);
        let b = map_replicates_seq(64, |i| i as u64 * 3 + 1);
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_max_empty_is_none() {
        assert_eq!(map_reduce_max(0, || (), |_, i| i), None);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = with_worker_count(1, || map_replicates(50, |i| i as u64 + 7));
        let eight = with_worker_count(8, || map_replicates(50, |i| i as u64 + 7));
        assert_eq!(one, eight);
    }
}
