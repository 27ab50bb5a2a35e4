//! Deterministic pairwise reduction used by the float engines.

use rayon::join;

/// Below this range length the reduction stays on the current thread.
const PARALLEL_CUTOFF: u64 = 1024;

/// Reduces `leaf(lo), …, leaf(hi-1)` with a balanced binary tree whose
/// shape depends only on the index range: each call splits at the midpoint
/// and combines the left result with the right one, in that order.
///
/// Because the association of `combine` applications is fixed by the range
/// alone, the result — floating-point rounding included — is the same no
/// matter how many rayon workers pick up the halves. That is what lets the
/// CLI promise bit-identical output across `--threads` settings.
pub fn tree_reduce<T, L, C>(lo: u64, hi: u64, leaf: &L, combine: &C) -> T
where
    T: Send,
    L: Fn(u64) -> T + Sync,
    C: Fn(T, T) -> T + Sync,
{
    debug_assert!(lo < hi);
    if hi - lo == 1 {
        return leaf(lo);
    }
    let mid = lo + (hi - lo) / 2;
    if hi - lo >= PARALLEL_CUTOFF {
        let (left, right) = join(
            || tree_reduce(lo, mid, leaf, combine),
            || tree_reduce(mid, hi, leaf, combine),
        );
        combine(left, right)
    } else {
        let left = tree_reduce(lo, mid, leaf, combine);
        let right = tree_reduce(mid, hi, leaf, combine);
        combine(left, right)
    }
}
