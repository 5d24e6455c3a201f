//! Brute-force enumeration used as ground truth for the fast paths.
//!
//! * [`enumerate_partitions`] streams every partition of `n` exactly once in
//!   reverse-lexicographic order on part sequences, holding one partition in
//!   memory at a time.
//! * [`brute_power_sum`] and [`brute_max_norm`] fold the stream directly, so
//!   they share the enumeration logic with the iterator.
//!
//! Everything here is deliberately naive: cost grows with p(n), so keep
//! `n` small (n <= 60 or so).  The fast series/closed-form modules are
//! cross-checked against these at small `n` and trusted beyond.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partition::Partition;

/// Streams all partitions of `n` in reverse-lexicographic order:
/// `n = 4` yields `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: u64) -> ReverseLexPartitions {
    ReverseLexPartitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Iterator over the partitions of a fixed integer; see
/// [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct ReverseLexPartitions {
    next: Option<Vec<u64>>,
}

impl Iterator for ReverseLexPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let item = Partition::from_sorted_unchecked(current.clone());
        let mut parts = current;
        if advance(&mut parts) {
            self.next = Some(parts);
        }
        Some(item)
    }
}

/// Rewrites `parts` into its reverse-lexicographic successor in place.
/// Returns `false` when `parts` was the last partition (all ones, or empty).
///
/// Successor rule: find the last part `> 1`, lower it by one to `x`, then
/// redistribute that part plus all trailing ones greedily as copies of `x`
/// followed by one remainder part.
fn advance(parts: &mut Vec<u64>) -> bool {
    let Some(i) = parts.iter().rposition(|&p| p > 1) else {
        return false;
    };
    let x = parts[i] - 1;
    let total = parts[i] + (parts.len() - 1 - i) as u64;
    parts.truncate(i);
    let q = total / x;
    let r = total % x;
    parts.extend(std::iter::repeat(x).take(q as usize));
    if r > 0 {
        parts.push(r);
    }
    true
}

/// Folds the enumeration of `n` without allocating per-partition.
fn fold_partitions<T>(n: u64, init: T, mut f: impl FnMut(T, &[u64]) -> T) -> T {
    let mut parts = if n == 0 { Vec::new() } else { vec![n] };
    let mut acc = f(init, &parts);
    while advance(&mut parts) {
        acc = f(acc, &parts);
    }
    acc
}

fn norm_of(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= p;
    }
    acc
}

/// Sum of the `ell`-th powers of the norm over all partitions of `n`, by
/// direct enumeration.
pub fn brute_power_sum(ell: u32, n: u64) -> BigInt {
    fold_partitions(n, BigInt::zero(), |acc, parts| {
        acc + num_traits::Pow::pow(norm_of(parts), ell)
    })
}

/// Maximum norm over all partitions of `n`, with the first maximizer in
/// enumeration order as witness.
pub fn brute_max_norm(n: u64) -> (BigInt, Partition) {
    fold_partitions(n, None, |best: Option<(BigInt, Partition)>, parts| {
        let norm = norm_of(parts);
        match best {
            Some((value, witness)) if value >= norm => Some((value, witness)),
            _ => Some((norm, Partition::from_sorted_unchecked(parts.to_vec()))),
        }
    })
    .expect("every n has at least one partition")
}
