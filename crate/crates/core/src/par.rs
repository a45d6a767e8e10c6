use num_bigint::BigInt;
use num_traits::Zero;

/// Execution strategy for the data-parallel oracles.
///
/// `Parallel` runs on the global rayon pool when the crate is built with the
/// `parallel` feature and silently degrades to `Sequential` without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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

/// Sum `f` over `items`. Integer addition is associative, so the parallel
/// reduction gives the same value as the sequential fold.
pub(crate) fn sum_by<T, F>(exec: Exec, items: &[T], f: F) -> BigInt
where
    T: Sync,
    F: Fn(&T) -> BigInt + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).reduce(BigInt::zero, |a, b| a + b)
        }
        _ => items.iter().map(f).fold(BigInt::zero(), |a, b| a + b),
    }
}

/// Sum `f` over the half-open range `0..end` of `u64`s, chunked.
pub(crate) fn sum_range<F>(exec: Exec, end: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..end).into_par_iter().map(f).sum()
        }
        _ => (0..end).map(f).sum(),
    }
}
