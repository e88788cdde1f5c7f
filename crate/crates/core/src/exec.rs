//! Data-parallel helpers with a sequential fallback.
//!
//! Protocol runs over distinct words, folds, and examples are independent,
//! so the inner loops map over slices and collect results in input order.
//! With the `parallel` feature (default) the mapping runs on rayon; without
//! it the same code compiles to plain iterators. Results are collected in
//! input order and reduced sequentially, so output bytes do not depend on
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving input order.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Fallible variant of [`map_ordered`]; the first error wins.
#[cfg(feature = "parallel")]
pub fn try_map_ordered<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Send + Sync,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map_ordered<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Always-sequential mapping, kept public so benchmarks can compare the
/// rayon path against the fallback on identical workloads.
pub fn map_ordered_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// FNV-1a over the given byte chunks, with a separator folded in between
/// chunks so `["ab","c"]` and `["a","bc"]` hash differently.
///
/// Used for deriving per-word and per-fold RNG seeds and for addressing
/// document-store directories. Hand-rolled so the value is stable across
/// toolchain and dependency upgrades.
pub fn stable_hash64(chunks: &[&[u8]]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for chunk in chunks {
        for &b in *chunk {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
        h ^= 0xff;
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// Derives a child seed from a base seed and a list of string tags.
pub fn derive_seed(base: u64, tags: &[&str]) -> u64 {
    let base_bytes = base.to_le_bytes();
    let mut chunks: Vec<&[u8]> = Vec::with_capacity(tags.len() + 1);
    chunks.push(&base_bytes);
    for t in tags {
        chunks.push(t.as_bytes());
    }
    stable_hash64(&chunks)
}
