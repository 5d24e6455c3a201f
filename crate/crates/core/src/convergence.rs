//! Asymptotic predictions and the diagnostics comparing them with exact
//! values: the leading-order partition-count estimate, predicted moments,
//! scaled power sums, dispersion growth, and convergence tables.
//!
//! The key comparison is `S_ℓ(n)·3^{-ℓn/3} → c_ℓ^{(n0)}`: the exact power
//! sum, scaled by the dominant growth factor, approaches a constant that
//! depends only on n mod 3.  [`convergence_table`] tabulates both sides and
//! their relative deviation.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cache::SeriesCache;
use crate::constants::{residue_class, ConstantEvaluator};
use crate::error::Error;
use crate::hp::{precision_for_digits, HpReal};
use crate::series::{partition_numbers, WeightSpec};

/// One row of a convergence table: everything exact about `n` plus the
/// asymptotic comparison.
#[derive(Clone, Debug)]
pub struct MomentRecord {
    /// Partition size.
    pub n: u64,
    /// Weight exponent.
    pub ell: u32,
    /// Exact power sum `S_ℓ(n)`.
    pub power_sum: BigInt,
    /// Exact partition count `p(n)`.
    pub partition_count: BigInt,
    /// Exact moment `S_ℓ(n)/p(n)`.
    pub moment: BigRational,
    /// `S_ℓ(n)·3^{-ℓn/3}`.
    pub scaled: HpReal,
    /// The growth constant for `n`'s residue class.
    pub constant: HpReal,
    /// `|scaled - constant| / constant`.
    pub rel_dev: HpReal,
}

/// The partition count used by [`predicted_moment_with`]: the exact value,
/// or the leading-order estimate for demonstrating its error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionCountSource {
    /// Exact `p(n)` from the pentagonal recurrence.
    Exact,
    /// The leading-order exponential estimate.
    HardyRamanujan,
}

/// `exp(±(ℓn/3)·ln 3)`, the dominant growth factor of the power sums,
/// evaluated at `prec` plus 64 guard bits.
///
/// The guard absorbs the error amplification of `exp`: a relative error δ in
/// the argument x becomes ≈ x·δ in the result, and x ≤ ℓn ≲ 2¹² for every
/// size this crate targets, well inside 64 bits of headroom.  Computing the
/// factor through `exp` keeps one uniform error analysis whether or not
/// `3 | ℓn`.
fn growth_scale(ell: u32, n: u64, negate: bool, prec: usize) -> HpReal {
    let p = prec + 64;
    let ln3 = HpReal::from_u64(3, p).ln();
    let mut arg = ln3
        .mul(&HpReal::from_u64(u64::from(ell), p))
        .mul(&HpReal::from_u64(n, p))
        .div(&HpReal::from_u64(3, p));
    if negate {
        arg = arg.neg();
    }
    arg.exp()
}

/// Leading-order estimate of the partition count,
/// `p(n) ≈ e^{π·sqrt(2n/3)} / (4n·sqrt(3))`.
///
/// This is the first term of the classical expansion only; its relative
/// error at n=100 is still ≈ 4.6% and decays slowly, which
/// [`predicted_moment_with`] can demonstrate.
pub fn hardy_ramanujan_p(n: u64, digits: u32) -> Result<HpReal, Error> {
    if n == 0 {
        return Err(Error::InvalidRequest {
            reason: "the partition-count estimate requires n >= 1".to_string(),
        });
    }
    let prec = precision_for_digits(digits);
    let p = prec + 64;
    let pi = HpReal::pi(p);
    let sqrt_arg = HpReal::from_u64(2 * n, p).div(&HpReal::from_u64(3, p)).sqrt();
    let numerator = pi.mul(&sqrt_arg).exp();
    let denominator = HpReal::from_u64(4 * n, p).mul(&HpReal::from_u64(3, p).sqrt());
    Ok(numerator.div(&denominator).with_prec(prec))
}

/// `S_ℓ(n)·3^{-ℓn/3}` from an already-computed power sum.
pub fn scaled_from_power_sum(power_sum: &BigInt, ell: u32, n: u64, digits: u32) -> HpReal {
    let prec = precision_for_digits(digits);
    let s = HpReal::from_bigint(power_sum, prec + 64);
    s.mul(&growth_scale(ell, n, true, prec)).with_prec(prec)
}

/// `S_ℓ(n)·3^{-ℓn/3}`: the exact power sum under the scaling that makes it
/// converge to the residue-class constant.
pub fn scaled_power_sum(ell: u32, n: u64, digits: u32) -> Result<HpReal, Error> {
    if ell == 0 {
        return Err(Error::InvalidRequest {
            reason: "weight exponent ell must be >= 1".to_string(),
        });
    }
    let s = crate::series::norm_power_sum(ell, n as usize);
    Ok(scaled_from_power_sum(&s, ell, n, digits))
}

/// The predicted moment `constant·3^{ℓn/3}/count` from an already-evaluated
/// constant and partition count — the building block behind
/// [`predicted_moment_with`], exposed so tabulations can reuse one constant
/// evaluation across many rows.
pub fn predicted_moment_from(
    constant: &HpReal,
    count: &HpReal,
    ell: u32,
    n: u64,
    digits: u32,
) -> HpReal {
    let prec = precision_for_digits(digits);
    constant
        .mul(&growth_scale(ell, n, false, prec))
        .div(count)
        .with_prec(prec)
}

/// The moment the asymptotic predicts, `c_ℓ^{(n0)}·3^{ℓn/3}/p(n)`, with the
/// partition count drawn from `source`.
///
/// The exact count is the default choice (see [`predicted_moment`]): the
/// prediction's accuracy is then purely the constant-versus-scaled-sum
/// convergence, undiluted by the count estimate's own error.
pub fn predicted_moment_with(
    ell: u32,
    n: u64,
    digits: u32,
    source: PartitionCountSource,
) -> Result<HpReal, Error> {
    if ell == 0 {
        return Err(Error::InvalidRequest {
            reason: "weight exponent ell must be >= 1".to_string(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidRequest {
            reason: format!("predicted moments require n >= 2, got {n}"),
        });
    }
    let prec = precision_for_digits(digits);
    let constant = ConstantEvaluator::new()
        .evaluate(&crate::constants::ConstantRequest {
            ell,
            n0: residue_class(n),
            precision_digits: digits,
            truncation: None,
        })?
        .value;
    let count = match source {
        PartitionCountSource::Exact => {
            let counts = partition_numbers(n as usize);
            HpReal::from_bigint(counts.coeff(n as usize), prec + 64)
        }
        PartitionCountSource::HardyRamanujan => hardy_ramanujan_p(n, digits)?,
    };
    Ok(predicted_moment_from(&constant, &count, ell, n, digits))
}

/// [`predicted_moment_with`] using the exact partition count.
pub fn predicted_moment(ell: u32, n: u64, digits: u32) -> Result<HpReal, Error> {
    predicted_moment_with(ell, n, digits, PartitionCountSource::Exact)
}

/// Exact dispersion statistics of the norm at size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispersionStats {
    /// `E(N²) - E(N)²`, nonnegative.
    pub variance: BigRational,
    /// `E(N²)/E(N)²`, the squared dispersion ratio; its divergence shows the
    /// norm does not concentrate under any rescaling.
    pub cv_squared: BigRational,
}

/// Dispersion statistics from already-computed power sums and count.
pub fn dispersion_from(s1: &BigInt, s2: &BigInt, count: &BigInt) -> DispersionStats {
    let mean = BigRational::new(s1.clone(), count.clone());
    let second = BigRational::new(s2.clone(), count.clone());
    let mean_sq = &mean * &mean;
    DispersionStats {
        variance: &second - &mean_sq,
        cv_squared: second / mean_sq,
    }
}

/// Exact variance and squared dispersion ratio of the norm over the uniform
/// measure on partitions of `n`.
pub fn dispersion(n: u64) -> Result<DispersionStats, Error> {
    if n == 0 {
        return Err(Error::InvalidRequest {
            reason: "dispersion requires n >= 1".to_string(),
        });
    }
    let n = n as usize;
    let s1 = crate::series::norm_power_sum(1, n);
    let s2 = crate::series::norm_power_sum(2, n);
    let count = partition_numbers(n).coeff(n).clone();
    Ok(dispersion_from(&s1, &s2, &count))
}

/// One convergence-table row from its exact ingredients.
pub fn moment_record(
    n: u64,
    ell: u32,
    power_sum: BigInt,
    partition_count: BigInt,
    constant: &HpReal,
    digits: u32,
) -> MomentRecord {
    let scaled = scaled_from_power_sum(&power_sum, ell, n, digits);
    let rel_dev = scaled.rel_diff(constant);
    MomentRecord {
        n,
        ell,
        moment: BigRational::new(power_sum.clone(), partition_count.clone()),
        power_sum,
        partition_count,
        scaled,
        constant: constant.clone(),
        rel_dev,
    }
}

/// Tabulates the exact-versus-asymptotic comparison for
/// `n = n_from, n_from+step, … ≤ n_to`, reading the power-sum series through
/// `cache`.
///
/// One series expansion (at degree `n_to`) and one constant evaluation per
/// residue class serve every row.  The relative deviation is reported, not
/// asserted monotone: within a residue class it decays, but adjacent `n`
/// belong to different classes with different constants.
pub fn convergence_table_with_cache(
    cache: &SeriesCache,
    ell: u32,
    n_from: u64,
    n_to: u64,
    step: u64,
    digits: u32,
) -> Result<Vec<MomentRecord>, Error> {
    if ell == 0 {
        return Err(Error::InvalidRequest {
            reason: "weight exponent ell must be >= 1".to_string(),
        });
    }
    if n_from > n_to {
        return Err(Error::InvalidRequest {
            reason: format!("empty range: n_from {n_from} > n_to {n_to}"),
        });
    }
    if step == 0 {
        return Err(Error::InvalidRequest {
            reason: "step must be >= 1".to_string(),
        });
    }
    let series = cache.series(&WeightSpec::NormPower(ell), n_to as usize)?;
    let counts = partition_numbers(n_to as usize);
    let (constants, _, _) = ConstantEvaluator::new().evaluate_row(ell, digits, None)?;

    let mut rows = Vec::new();
    let mut n = n_from;
    while n <= n_to {
        let constant = &constants[residue_class(n) as usize - 1];
        rows.push(moment_record(
            n,
            ell,
            series.coeff(n as usize).clone(),
            counts.coeff(n as usize).clone(),
            constant,
            digits,
        ));
        n += step;
    }
    Ok(rows)
}

/// [`convergence_table_with_cache`] without a disk cache: every call
/// recomputes the series.
pub fn convergence_table(
    ell: u32,
    n_from: u64,
    n_to: u64,
    step: u64,
    digits: u32,
) -> Result<Vec<MomentRecord>, Error> {
    convergence_table_with_cache(&SeriesCache::disabled(), ell, n_from, n_to, step, digits)
}
