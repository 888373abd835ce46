//! Data-parallel helpers with a sequential fallback.
//!
//! Every hot loop in the crate goes through these functions. With the
//! `parallel` feature (default) they dispatch to rayon when asked to; without
//! it, `Execution::Parallel` silently runs sequentially. Results are identical
//! either way: maps are merged by exact addition and ordered collections keep
//! input order.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::scalar::Scalar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        Execution::auto()
    }
}

impl Execution {
    /// Parallel when the crate was built with rayon, sequential otherwise.
    pub const fn auto() -> Execution {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Below this many work items the rayon overhead is not worth it.
const PAR_THRESHOLD: usize = 8;

pub type TermMap<K> = FxHashMap<K, Scalar>;

pub(crate) fn add_term<K: Hash + Eq>(map: &mut TermMap<K>, key: K, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(c) => *c += coeff,
        None => {
            map.insert(key, coeff.clone());
        }
    }
}

pub(crate) fn merge_maps<K: Hash + Eq>(mut a: TermMap<K>, b: TermMap<K>) -> TermMap<K> {
    if a.len() < b.len() {
        return merge_maps(b, a);
    }
    for (k, c) in b {
        add_term(&mut a, k, &c);
    }
    a
}

/// Runs `f` on every item, each call adding terms into a shared accumulator.
/// Zero coefficients may remain in the result; callers prune.
pub fn accumulate<T, K, F>(exec: Execution, items: &[T], f: F) -> TermMap<K>
where
    T: Sync,
    K: Hash + Eq + Send,
    F: Fn(&T, &mut TermMap<K>) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() >= PAR_THRESHOLD {
        return items
            .par_iter()
            .fold(TermMap::default, |mut acc, item| {
                f(item, &mut acc);
                acc
            })
            .reduce(TermMap::default, merge_maps);
    }
    let _ = exec;
    let mut acc = TermMap::default();
    for item in items {
        f(item, &mut acc);
    }
    acc
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}
