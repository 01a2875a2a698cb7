//! Data-parallel helpers with a sequential fallback.
//!
//! The hot inner loops of this crate (probe pair sweeps, growth-check pair
//! grids, per-delta modulus scans, Peano batches) are embarrassingly
//! parallel. With the default `parallel` feature they fan out over rayon;
//! without it they run sequentially with identical results. Results are
//! collected in input order and all reductions are order-independent
//! (max/min), so reports are byte-identical in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map `f` over the index range `0..n`, preserving order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// True when the parallel feature is compiled in; used by the bench suite
/// to label measurements.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
