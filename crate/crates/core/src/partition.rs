//! Integer partitions and their multiplicative norm.
//!
//! * [`Partition`] stores parts canonically non-increasing; constructors sort
//!   and reject zero parts, so every stored value is valid by construction.
//! * [`Partition::norm`] is the product of the parts (1 for the empty
//!   partition, by the empty-product convention), and
//!   [`Partition::norm_power`] raises it to an integer power exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;

/// A partition of a non-negative integer: a non-increasing sequence of
/// positive parts.  The empty sequence is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order.  Parts are sorted into
    /// canonical non-increasing order; a zero part is rejected.
    pub fn new(parts: impl IntoIterator<Item = u64>) -> Result<Self, Error> {
        let mut parts: Vec<u64> = parts.into_iter().collect();
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Wraps parts that are already known to be positive and non-increasing.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    /// The parts, non-increasing.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// The partitioned integer: the sum of the parts.
    pub fn n(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether this is the empty partition of 0.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The norm: the product of the parts.  The empty product is 1.
    pub fn norm(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &p in &self.parts {
            acc *= p;
        }
        acc
    }

    /// The norm raised to the `ell`-th power, exactly.
    pub fn norm_power(&self, ell: u32) -> BigInt {
        num_traits::Pow::pow(self.norm(), ell)
    }
}

/// Renders parts joined by `+`, e.g. `4+3+1+1`; the empty partition renders
/// as `()`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let mut first = true;
        for &p in &self.parts {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u64]) -> Partition {
        Partition::new(parts.iter().copied()).unwrap()
    }

    #[test]
    fn constructor_canonicalizes_order() {
        assert_eq!(part(&[1, 4, 3, 1]).parts(), &[4, 3, 1, 1]);
        assert_eq!(part(&[2, 2]).parts(), &[2, 2]);
    }

    #[test]
    fn constructor_rejects_zero_parts() {
        assert!(matches!(Partition::new([3, 0, 1]), Err(Error::ZeroPart)));
    }

    #[test]
    fn empty_partition_is_the_partition_of_zero() {
        let e = Partition::empty();
        assert_eq!(e.n(), 0);
        assert_eq!(e.len(), 0);
        assert!(e.is_empty());
        assert_eq!(e, Partition::new([]).unwrap());
    }

    #[test]
    fn norm_of_known_partitions() {
        assert_eq!(Partition::empty().norm(), BigInt::from(1));
        assert_eq!(part(&[3, 2]).norm(), BigInt::from(6));
        assert_eq!(part(&[4, 3, 1, 1]).norm(), BigInt::from(12));
    }

    #[test]
    fn norm_power_of_known_partitions() {
        assert_eq!(part(&[2, 2, 1]).norm_power(2), BigInt::from(16));
        assert_eq!(Partition::empty().norm_power(5), BigInt::from(1));
        assert_eq!(part(&[3, 2]).norm_power(3), BigInt::from(216));
    }

    #[test]
    fn norm_power_zero_is_one() {
        assert_eq!(part(&[5, 2]).norm_power(0), BigInt::from(1));
    }

    #[test]
    fn prepending_a_part_multiplies_the_norm() {
        let mu = part(&[3, 2, 2]);
        let with_a = part(&[5, 3, 2, 2]);
        assert_eq!(with_a.norm(), BigInt::from(5) * mu.norm());
    }

    #[test]
    fn display_formats() {
        assert_eq!(part(&[4, 3, 1, 1]).to_string(), "4+3+1+1");
        assert_eq!(part(&[2]).to_string(), "2");
        assert_eq!(Partition::empty().to_string(), "()");
    }
}
