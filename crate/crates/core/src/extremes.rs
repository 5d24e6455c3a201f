//! Closed-form maximum norm over all partitions of `n`, with witness.
//!
//! For n >= 2 the maximum norm M_n depends only on n mod 3:
//!
//! * n ≡ 0: M_n = 3^(n/3), attained by all parts 3;
//! * n ≡ 1: M_n = 4·3^((n-4)/3), attained by one 4 plus 3s;
//! * n ≡ 2: M_n = 2·3^((n-2)/3), attained by one 2 plus 3s.
//!
//! The edge cases n = 0 and n = 1 fall outside the three-case formula and
//! are defined to have M_n = 1 (empty partition, single part 1).

use num_bigint::BigInt;
use num_traits::Pow;

use crate::partition::Partition;

/// Maximum norm `value` over all partitions of `n`, plus one partition
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxNormResult {
    /// The partitioned integer.
    pub n: u64,
    /// The maximum norm M_n.
    pub value: BigInt,
    /// A partition of `n` whose norm equals `value`.
    pub witness: Partition,
}

fn three_pow(exp: u64) -> BigInt {
    BigInt::from(3).pow(exp)
}

fn threes(count: u64) -> Vec<u64> {
    std::iter::repeat(3).take(count as usize).collect()
}

/// Computes M_n and a maximizing partition in closed form.
///
/// For n ≡ 1 (mod 3) the maximum is also attained by trading the 4 for two
/// 2s; the returned witness deterministically contains the 4.
pub fn max_norm(n: u64) -> MaxNormResult {
    let (value, witness) = match n {
        0 => (BigInt::from(1), Partition::empty()),
        1 => (BigInt::from(1), Partition::from_sorted_unchecked(vec![1])),
        _ => match n % 3 {
            0 => (three_pow(n / 3), Partition::from_sorted_unchecked(threes(n / 3))),
            1 => {
                let k = (n - 4) / 3;
                let mut parts = vec![4];
                parts.extend(threes(k));
                (4 * three_pow(k), Partition::from_sorted_unchecked(parts))
            }
            _ => {
                let k = (n - 2) / 3;
                let mut parts = threes(k);
                parts.push(2);
                (2 * three_pow(k), Partition::from_sorted_unchecked(parts))
            }
        },
    };
    MaxNormResult { n, value, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_cases_below_two() {
        let r = max_norm(0);
        assert_eq!(r.value, BigInt::from(1));
        assert!(r.witness.is_empty());

        let r = max_norm(1);
        assert_eq!(r.value, BigInt::from(1));
        assert_eq!(r.witness.parts(), &[1]);
    }

    #[test]
    fn residue_zero_case() {
        let r = max_norm(9);
        assert_eq!(r.value, BigInt::from(27));
        assert_eq!(r.witness.parts(), &[3, 3, 3]);
    }

    #[test]
    fn residue_one_case() {
        let r = max_norm(7);
        assert_eq!(r.value, BigInt::from(12));
        assert_eq!(r.witness.parts(), &[4, 3]);

        let r = max_norm(4);
        assert_eq!(r.value, BigInt::from(4));
        assert_eq!(r.witness.parts(), &[4]);
    }

    #[test]
    fn residue_two_case() {
        let r = max_norm(5);
        assert_eq!(r.value, BigInt::from(6));
        assert_eq!(r.witness.parts(), &[3, 2]);

        let r = max_norm(2);
        assert_eq!(r.value, BigInt::from(2));
        assert_eq!(r.witness.parts(), &[2]);
    }

    #[test]
    fn witness_norm_equals_value_and_sums_to_n() {
        for n in 0..=60 {
            let r = max_norm(n);
            assert_eq!(r.witness.n(), n, "witness must partition n={n}");
            assert_eq!(r.witness.norm(), r.value, "witness norm at n={n}");
        }
    }

    #[test]
    fn tripling_recurrence() {
        for n in 2..=57 {
            assert_eq!(
                max_norm(n + 3).value,
                BigInt::from(3) * max_norm(n).value,
                "M_(n+3) = 3 M_n at n={n}",
            );
        }
    }

    #[test]
    fn matches_brute_force_on_small_range() {
        for n in 2..=28 {
            let (value, witness) = crate::oracle::brute_max_norm(n);
            let r = max_norm(n);
            assert_eq!(r.value, value, "value at n={n}");
            assert_eq!(r.witness, witness, "witness at n={n}");
        }
    }
}
