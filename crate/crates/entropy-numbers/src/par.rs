//! Thin indirection over rayon so every data-parallel reduction has a
//! sequential twin. The parallel paths are compiled in with the `parallel`
//! feature (on by default); the sequential variants are always available and
//! are what the benchmark suite compares against.
//!
//! All reductions here are order-independent (min/max/all), so results do not
//! depend on the degree of parallelism.

/// Maximum of `f(item)` over a slice, sequentially.
pub fn map_max_seq<T, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64,
{
    items.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
}

/// Maximum of `f(item)` over a slice; parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_max<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    use rayon::prelude::*;
    items
        .par_iter()
        .map(f)
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

#[cfg(not(feature = "parallel"))]
pub fn map_max<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    map_max_seq(items, f)
}

/// Minimum over all unordered pairs of `f(a, b)`, sequentially.
pub fn pairwise_min_seq<T, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T, &T) -> f64,
{
    let mut best = f64::INFINITY;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            best = best.min(f(&items[i], &items[j]));
        }
    }
    best
}

/// Minimum over all unordered pairs; parallel over the first index when the
/// feature is enabled.
#[cfg(feature = "parallel")]
pub fn pairwise_min<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T, &T) -> f64 + Sync + Send,
{
    use rayon::prelude::*;
    (0..items.len())
        .into_par_iter()
        .map(|i| {
            let mut best = f64::INFINITY;
            for j in i + 1..items.len() {
                best = best.min(f(&items[i], &items[j]));
            }
            best
        })
        .reduce(|| f64::INFINITY, f64::min)
}

#[cfg(not(feature = "parallel"))]
pub fn pairwise_min<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T, &T) -> f64 + Sync + Send,
{
    pairwise_min_seq(items, f)
}
