//! Randomized invariants tying the independent computation routes together:
//! enumeration, series expansion, closed forms, and the cache layer must
//! agree wherever their domains overlap.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use proptest::prelude::*;

use pnorm_core::cache::{cache_load, cache_store};
use pnorm_core::extremes::max_norm;
use pnorm_core::oracle::{brute_max_norm, brute_power_sum, enumerate_partitions};
use pnorm_core::series::{
    absorb_factor, expand_euler_product, moment, norm_power_sum, partition_numbers,
};
use pnorm_core::{Partition, WeightSpec};

proptest! {
    /// Construction sorts parts, so the norm cannot depend on input order.
    #[test]
    fn norm_ignores_part_order(mut parts in proptest::collection::vec(1u64..30, 0..8)) {
        let canonical = Partition::new(parts.clone()).unwrap();
        parts.reverse();
        let reversed = Partition::new(parts).unwrap();
        prop_assert_eq!(canonical.clone(), reversed.clone());
        prop_assert_eq!(canonical.norm(), reversed.norm());
    }

    /// The powered norm is literally the norm raised to the power.
    #[test]
    fn norm_power_is_pow_of_norm(
        parts in proptest::collection::vec(1u64..20, 0..7),
        ell in 0u32..5,
    ) {
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.norm_power(ell), p.norm().pow(ell));
    }

    /// The series engine and the brute-force enumeration compute the same
    /// power sums.
    #[test]
    fn series_agrees_with_enumeration(ell in 1u32..4, n in 0u64..19) {
        prop_assert_eq!(norm_power_sum(ell, n as usize), brute_power_sum(ell, n));
    }

    /// Product expansion is order-independent: absorbing the factors in any
    /// order gives the same coefficients.
    #[test]
    fn factor_absorption_commutes(
        weights in proptest::collection::vec(-4i64..5, 1..10).prop_shuffle(),
        seed in any::<u64>(),
    ) {
        let n_max = weights.len();
        let mut forward = vec![BigInt::zero(); n_max + 1];
        forward[0] = BigInt::from(1);
        let mut shuffled = forward.clone();

        for (i, w) in weights.iter().enumerate() {
            absorb_factor(&mut forward, i + 1, &BigInt::from(*w));
        }
        // A deterministic permutation derived from the seed.
        let mut order: Vec<usize> = (1..=n_max).collect();
        let mut state = seed;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        for k in order {
            absorb_factor(&mut shuffled, k, &BigInt::from(weights[k - 1]));
        }
        prop_assert_eq!(forward, shuffled);
    }

    /// Every power sum is sandwiched between the extremes: the maximum norm
    /// contributes one term, and no partition exceeds it.
    #[test]
    fn power_sum_sandwiched_by_max_norm(ell in 1u32..4, n in 2u64..35) {
        let m = max_norm(n).value.pow(ell);
        let s = norm_power_sum(ell, n as usize);
        let count = partition_numbers(n as usize).coeff(n as usize).clone();
        prop_assert!(m <= s);
        prop_assert!(s <= count * m);
    }

    /// Norms are ≥ 1, so power sums are monotone in the exponent.
    #[test]
    fn power_sums_monotone_in_ell(ell in 1u32..4, n in 0usize..30) {
        prop_assert!(norm_power_sum(ell, n) <= norm_power_sum(ell + 1, n));
    }

    /// Cauchy–Schwarz: E(N)² ≤ E(N²), exactly in rational arithmetic.
    #[test]
    fn first_moment_squared_at_most_second_moment(n in 0usize..30) {
        let first = moment(1, n);
        let second = moment(2, n);
        prop_assert!(&first * &first <= second);
    }

    /// Any weighted series survives a disk round trip losslessly, whole or
    /// as a prefix.
    #[test]
    fn cache_round_trip_preserves_series(
        weights in proptest::collection::vec(-9i64..10, 1..12),
        keep_fraction in 0.0f64..=1.0,
    ) {
        let n_max = weights.len();
        let spec = WeightSpec::Custom(weights.into_iter().map(BigInt::from).collect());
        let series = expand_euler_product(&spec, n_max).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("series.series");
        cache_store(&series, &path).unwrap();

        let keep = ((n_max as f64) * keep_fraction) as usize;
        let loaded = cache_load(series.tag(), keep, &path).unwrap();
        prop_assert_eq!(loaded, series.prefix(keep));
    }

    /// The closed-form maximum matches the enumeration, value and witness.
    #[test]
    fn closed_form_max_matches_enumeration(n in 0u64..26) {
        let closed = max_norm(n);
        let (value, witness) = brute_max_norm(n);
        prop_assert_eq!(closed.value, value);
        prop_assert_eq!(closed.witness, witness);
    }

    /// Enumeration hits every partition exactly once, in strictly
    /// decreasing lexicographic order.
    #[test]
    fn enumeration_is_complete_and_ordered(n in 0u64..22) {
        let all: Vec<_> = enumerate_partitions(n).collect();
        let expected = partition_numbers(n as usize).coeff(n as usize).clone();
        prop_assert_eq!(BigInt::from(all.len()), expected);
        for p in &all {
            prop_assert_eq!(p.n(), n);
        }
        for pair in all.windows(2) {
            prop_assert!(pair[0].parts() > pair[1].parts(), "{} !> {}", pair[0], pair[1]);
        }
    }
}
