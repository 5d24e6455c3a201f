//! Euler-product series expansion over exact integers.
//!
//! The generating function `∏_{k>=1} (1 - w(k) q^k)^{-1}` has degree-n
//! coefficient `Σ_{λ⊢n} ∏_j w(λ_j)`, the sum over partitions of n of the
//! product of the weights of the parts.  Specializations:
//!
//! * `w(k) = k^ℓ` gives the norm power sums S_ℓ(n),
//! * `w(k) = 1` gives the partition numbers p(n),
//! * arbitrary weight lists cover other multiplicative partition statistics.
//!
//! Expansion absorbs one factor at a time: for each k, the in-place ascending
//! update `c[m] += w(k)·c[m-k]` multiplies the series by the geometric series
//! of that factor without materializing it.  Factors with k > n_max cannot
//! touch degrees <= n_max and are skipped.  Total cost is O(n_max²)
//! exact-integer operations.
//!
//! [`partition_numbers`] instead uses the pentagonal-number recurrence, an
//! algorithm independent of the product expansion; the two are cross-checked
//! against each other in tests and in the CLI verification command.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use sha2::{Digest, Sha256};

use crate::error::Error;

/// Weight sequence `w(k)` (indexed from k = 1) defining one Euler product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    /// `w(k) = 1`: coefficients are the partition numbers p(n).
    Unit,
    /// `w(k) = k^ell`: coefficients are the norm power sums S_ell(n).
    NormPower(u32),
    /// Explicit weights; `values[k-1]` is `w(k)`.
    Custom(Vec<BigInt>),
}

impl WeightSpec {
    /// The weight of part size `k` (k >= 1), or an error if a custom list
    /// does not reach `k`.  `requested` is the expansion degree, reported in
    /// the error.
    fn weight(&self, k: usize, requested: usize) -> Result<BigInt, Error> {
        match self {
            WeightSpec::Unit => Ok(BigInt::one()),
            WeightSpec::NormPower(ell) => Ok(BigInt::from(k).pow(*ell)),
            WeightSpec::Custom(values) => {
                values.get(k - 1).cloned().ok_or(Error::WeightUndefined {
                    defined: values.len(),
                    missing: k,
                    requested,
                })
            }
        }
    }

    /// The identity tag for this weight sequence, used to label series and
    /// name cache files.  Custom weights are identified by a digest of the
    /// value list.
    pub fn tag(&self) -> WeightTag {
        match self {
            WeightSpec::Unit => WeightTag::Unit,
            WeightSpec::NormPower(ell) => WeightTag::NormPower(*ell),
            WeightSpec::Custom(values) => {
                let mut hasher = Sha256::new();
                for v in values {
                    hasher.update(v.to_string().as_bytes());
                    hasher.update(b"\n");
                }
                let digest = hasher.finalize();
                let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
                WeightTag::Custom(hex)
            }
        }
    }
}

/// Identity of a weight sequence, without the weights themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightTag {
    /// Tag of [`WeightSpec::Unit`].
    Unit,
    /// Tag of [`WeightSpec::NormPower`].
    NormPower(u32),
    /// Tag of [`WeightSpec::Custom`]: lowercase hex SHA-256 of the
    /// newline-separated decimal weight list.
    Custom(String),
}

impl WeightTag {
    /// The token stored on the `weight=` line of a cache file:
    /// `unit`, `norm_power:<ell>`, or `custom:<hex digest>`.
    pub fn header_token(&self) -> String {
        match self {
            WeightTag::Unit => "unit".to_string(),
            WeightTag::NormPower(ell) => format!("norm_power:{ell}"),
            WeightTag::Custom(hex) => format!("custom:{hex}"),
        }
    }

    /// Parses a `weight=` token back into a tag.
    pub fn from_header_token(token: &str) -> Option<Self> {
        if token == "unit" {
            return Some(WeightTag::Unit);
        }
        if let Some(ell) = token.strip_prefix("norm_power:") {
            return ell.parse().ok().map(WeightTag::NormPower);
        }
        if let Some(hex) = token.strip_prefix("custom:") {
            let valid = hex.len() == 64 && hex.bytes().all(|b| b.is_ascii_hexdigit());
            if valid {
                return Some(WeightTag::Custom(hex.to_string()));
            }
        }
        None
    }

    /// A short filesystem-safe stem for naming cache files.
    pub fn file_stem(&self) -> String {
        match self {
            WeightTag::Unit => "unit".to_string(),
            WeightTag::NormPower(ell) => format!("norm_power_{ell}"),
            WeightTag::Custom(hex) => format!("custom_{}", &hex[..16]),
        }
    }
}

/// Truncated power-series coefficients `c[0..=n_max]` of one Euler product,
/// labelled by the weight that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSeries {
    tag: WeightTag,
    coeffs: Vec<BigInt>,
}

impl CoefficientSeries {
    /// Wraps coefficients under a tag.  `coeffs` must be non-empty with
    /// leading coefficient 1 (the empty partition's contribution).
    pub(crate) fn from_parts(tag: WeightTag, coeffs: Vec<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs[0].is_one());
        Self { tag, coeffs }
    }

    /// The weight identity this series was expanded from.
    pub fn tag(&self) -> &WeightTag {
        &self.tag
    }

    /// Largest degree stored.
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The degree-`n` coefficient; panics if `n` exceeds [`Self::n_max`].
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// All coefficients, index = degree.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The prefix of this series up to degree `n_max` (which must not exceed
    /// the stored degree).
    pub fn prefix(&self, n_max: usize) -> Self {
        assert!(n_max <= self.n_max(), "prefix cannot extend a series");
        Self {
            tag: self.tag.clone(),
            coeffs: self.coeffs[..=n_max].to_vec(),
        }
    }
}

/// Multiplies the series `coeffs` in place by `(1 - w q^k)^{-1}`, i.e. by the
/// geometric series `1 + w q^k + w² q^{2k} + …`, truncated to the slice
/// length.  The ascending update order makes each source index already
/// include its own multiples of the factor.
///
/// Exposed so tests can verify that absorption order does not matter.
pub fn absorb_factor(coeffs: &mut [BigInt], k: usize, w: &BigInt) {
    if w.is_zero() || k == 0 {
        return;
    }
    for m in k..coeffs.len() {
        let add = w * &coeffs[m - k];
        coeffs[m] += add;
    }
}

/// Expands `∏_{k=1}^{n_max} (1 - w(k) q^k)^{-1}` to degree `n_max`, exactly.
pub fn expand_euler_product(weight: &WeightSpec, n_max: usize) -> Result<CoefficientSeries, Error> {
    let mut coeffs = vec![BigInt::zero(); n_max + 1];
    coeffs[0] = BigInt::one();
    for k in 1..=n_max {
        let w = weight.weight(k, n_max)?;
        absorb_factor(&mut coeffs, k, &w);
    }
    Ok(CoefficientSeries::from_parts(weight.tag(), coeffs))
}

/// Partition numbers `p(0..=n_max)` by Euler's pentagonal-number recurrence
/// `p(n) = Σ_{j>=1} (-1)^{j+1} [ p(n - j(3j-1)/2) + p(n - j(3j+1)/2) ]`.
pub fn partition_numbers(n_max: usize) -> CoefficientSeries {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut sum = BigInt::zero();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let mut term = p[n - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
            j += 1;
        }
        p.push(sum);
    }
    CoefficientSeries::from_parts(WeightTag::Unit, p)
}

/// The norm power sum S_ell(n), the degree-`n` coefficient of the
/// `w(k) = k^ell` Euler product.
pub fn norm_power_sum(ell: u32, n: usize) -> BigInt {
    let series = expand_euler_product(&WeightSpec::NormPower(ell), n)
        .expect("norm-power weights are total");
    series.coeff(n).clone()
}

/// The `ell`-th moment of the norm over the uniform measure on partitions of
/// `n`: `S_ell(n)/p(n)`, in lowest terms.
pub fn moment(ell: u32, n: usize) -> BigRational {
    let s = norm_power_sum(ell, n);
    let p = partition_numbers(n).coeff(n).clone();
    BigRational::new(s, p)
}
