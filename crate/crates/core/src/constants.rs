//! High-precision evaluation of the residue-class growth constants.
//!
//! The norm power sums grow as `S_ℓ(n) ~ c_ℓ^{(n0)} · 3^{ℓn/3}` where the
//! constant depends only on the residue class n0 of n mod 3.  Each constant
//! is a root-of-unity filtered sum of three infinite products:
//!
//! ```text
//! c_ℓ^{(n0)} = Σ_{j=1..3}  e^{-2πi·j·n0/3} · (1/3) · ∏_{k≥1, k≠3} (1 - a_k ω^{jk})^{-1}
//! ```
//!
//! with `a_k = (k·3^{-k/3})^ℓ` and `ω = e^{2πi/3}`.  The k = 3 factor is the
//! removed pole factor and is excluded; every remaining `a_k` is strictly
//! below 1, so no factor vanishes and the products converge extremely fast.
//! The j = 1 and j = 2 summands are complex conjugates and j = 3 is real, so
//! the total is real up to rounding; the evaluator asserts that and returns
//! the real part.
//!
//! Truncation at index K is controlled by an explicit tail bound (see
//! [`tail_within`]) combined with a K-vs-2K stability check, starting from
//! `K = max(50, ceil(40·digits/ℓ))` and doubling until both pass.

use crate::error::Error;
use crate::hp::{digit_capacity, precision_for_digits, HpComplex, HpReal};

/// One evaluation request: which constant, to what accuracy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantRequest {
    /// Weight exponent; must be ≥ 1.
    pub ell: u32,
    /// Residue-class label in {0, 1, 2, 3}; 0 is accepted as an alias of 3
    /// (the filter phases are invariant under n0 → n0 + 3).
    pub n0: u32,
    /// Target decimal accuracy; must be ≥ 1.
    pub precision_digits: u32,
    /// Fixed truncation index, or `None` for adaptive selection.
    pub truncation: Option<usize>,
}

/// A computed constant together with how it was obtained.
#[derive(Clone, Debug)]
pub struct ConstantValue {
    /// The constant, at the evaluator's working precision.
    pub value: HpReal,
    /// Truncation index the products were evaluated at.
    pub truncation: usize,
    /// Binary working precision used.
    pub working_bits: usize,
}

/// Evaluator with an optional explicit working precision.  The default
/// derives the working precision from each request's digits plus a ten-digit
/// guard; an explicit precision instead caps the achievable digits and makes
/// over-tight requests fail with a precision-infeasible error.
#[derive(Clone, Debug, Default)]
pub struct ConstantEvaluator {
    working_bits: Option<usize>,
}

impl ConstantEvaluator {
    /// Evaluator with automatic working precision.
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluator pinned to `bits` of binary working precision.
    pub fn with_working_bits(bits: usize) -> Self {
        Self {
            working_bits: Some(bits),
        }
    }

    /// Evaluates one constant.
    pub fn evaluate(&self, req: &ConstantRequest) -> Result<ConstantValue, Error> {
        if req.n0 > 3 {
            return Err(Error::InvalidRequest {
                reason: format!("residue-class label must be in 0..=3, got {}", req.n0),
            });
        }
        let (values, truncation, working_bits) =
            self.evaluate_row(req.ell, req.precision_digits, req.truncation)?;
        let index = if req.n0 == 0 { 2 } else { req.n0 as usize - 1 };
        Ok(ConstantValue {
            value: values[index].clone(),
            truncation,
            working_bits,
        })
    }

    /// Evaluates the constants of all three residue classes of one `ell` in
    /// a single pass.  The three infinite products depend on `ell` only, so
    /// sharing them across the classes is three times cheaper than three
    /// independent evaluations.
    ///
    /// Returns the class values in label order `[c^(1), c^(2), c^(3)]`, the
    /// truncation index used, and the working precision.
    pub fn evaluate_row(
        &self,
        ell: u32,
        digits: u32,
        truncation: Option<usize>,
    ) -> Result<([HpReal; 3], usize, usize), Error> {
        if ell == 0 {
            return Err(Error::InvalidRequest {
                reason: "weight exponent ell must be >= 1".to_string(),
            });
        }
        if digits == 0 {
            return Err(Error::InvalidRequest {
                reason: "precision_digits must be >= 1".to_string(),
            });
        }
        let bits = self.working_bits.unwrap_or_else(|| precision_for_digits(digits));
        let capacity = digit_capacity(bits);
        if digits > capacity {
            return Err(Error::PrecisionInfeasible {
                digits,
                bits,
                capacity,
            });
        }

        let (sums, k) = match truncation {
            Some(k) => (filtered_sums(ell, k, bits), k),
            None => adaptive_sums(ell, digits, bits)?,
        };

        let tol_im = HpReal::pow10(-(digits.saturating_sub(2).max(1) as i64), bits);
        let mut values = Vec::with_capacity(3);
        for (class, sum) in sums.iter().enumerate() {
            if sum.im.abs().sub(&tol_im).is_negative() {
                let value = sum.re.clone();
                assert!(
                    !value.is_negative() && !value.is_zero(),
                    "constant for ell={ell} class {} must be positive",
                    class + 1,
                );
                values.push(value);
            } else {
                return Err(Error::NonRealConstant {
                    ell,
                    n0: class as u32 + 1,
                    imag: sum.im.abs().to_sig(3),
                    tolerance: tol_im.to_sig(3),
                });
            }
        }
        let values: [HpReal; 3] = values.try_into().expect("three classes");
        Ok((values, k, bits))
    }
}

/// Convenience wrapper: evaluates `req` with automatic working precision and
/// returns just the constant.
pub fn asymptotic_constant(req: &ConstantRequest) -> Result<HpReal, Error> {
    ConstantEvaluator::new().evaluate(req).map(|v| v.value)
}

/// One row of a constant table: the three class constants of one `ell`.
#[derive(Clone, Debug)]
pub struct ConstantRow {
    /// Weight exponent of this row.
    pub ell: u32,
    /// Constants for residue classes 1, 2, 3 in order.
    pub values: [HpReal; 3],
}

/// Evaluates the full table for `ell = 1..=ell_max`.
///
/// `places` is the number of decimal places the caller intends to render;
/// values up to ~10⁵ with `places` fractional digits need `places + 12`
/// significant digits of accuracy (five for the integer part, the rest as
/// guard against rendering on a rounding boundary), which is what each row
/// is evaluated to.
pub fn constant_table(ell_max: u32, places: u32) -> Result<Vec<ConstantRow>, Error> {
    if ell_max == 0 {
        return Err(Error::InvalidRequest {
            reason: "ell_max must be >= 1".to_string(),
        });
    }
    let digits = places + 12;
    let evaluator = ConstantEvaluator::new();
    let mut rows = Vec::with_capacity(ell_max as usize);
    for ell in 1..=ell_max {
        let (values, _, _) = evaluator.evaluate_row(ell, digits, None)?;
        rows.push(ConstantRow { ell, values });
    }
    Ok(rows)
}

/// The residue-class label {1, 2, 3} of `n`, with multiples of 3 labelled 3.
pub fn residue_class(n: u64) -> u32 {
    match n % 3 {
        0 => 3,
        r => r as u32,
    }
}

/// `[1, ω, ω²]` with `ω = e^{2πi/3} = (-1/2, √3/2)`.  The imaginary parts of
/// ω and ω² are exact negations of each other, which keeps conjugate
/// symmetry exact throughout the product evaluation.
fn roots_of_unity(prec: usize) -> [HpComplex; 3] {
    let half = HpReal::from_f64(-0.5, prec);
    let half_sqrt3 = HpReal::from_u64(3, prec)
        .sqrt()
        .div(&HpReal::from_u64(2, prec));
    let omega = HpComplex::new(half.clone(), half_sqrt3.clone());
    let omega2 = omega.conj();
    [HpComplex::one(prec), omega, omega2]
}

/// The three filtered sums — class labels 1, 2, 3 — truncating each product
/// at `k_max`.
fn filtered_sums(ell: u32, k_max: usize, prec: usize) -> [HpComplex; 3] {
    let units = roots_of_unity(prec);
    let one = HpComplex::one(prec);
    // 3^{-1/3}; its k-th power below inherits a relative error of order
    // k·2^{-prec}, absorbed by the guard bits behind `precision_for_digits`.
    let u = HpReal::from_u64(3, prec).cbrt().recip();

    // d[j-1] accumulates ∏ (1 - a_k ω^{jk}) for j = 1, 2, 3.
    let mut d = [one.clone(), one.clone(), one.clone()];
    for k in 1..=k_max {
        if k == 3 {
            continue;
        }
        let b = u.powi(k as u64).mul(&HpReal::from_u64(k as u64, prec));
        let a = b.powi(ell as u64);
        for j in 1..=3usize {
            let factor = one.sub(&units[(j * k) % 3].mul_real(&a));
            d[j - 1] = d[j - 1].mul(&factor);
        }
    }
    let products = [d[0].recip(), d[1].recip(), d[2].recip()];

    let third = HpReal::from_u64(3, prec).recip();
    std::array::from_fn(|class| {
        let n0 = class + 1;
        let mut sum = HpComplex::zero(prec);
        for j in 1..=3usize {
            // e^{-2πi·j·n0/3} = ω^{(-j·n0) mod 3}
            let phase = &units[(3 - (j * n0) % 3) % 3];
            sum = sum.add(&phase.mul(&products[j - 1]));
        }
        sum.mul_real(&third)
    })
}

/// Whether truncating the products at index `k` provably contributes
/// relative error below `10^{-(digits+2)}`.
///
/// Derivation.  For `k' > k` the factor magnitudes satisfy
/// `|1/(1 - a_k' z)| ≤ 1/(1 - a_k')` for `|z| = 1`, so the neglected tail T
/// of each product obeys `|ln T| ≤ Σ_{k'>k} -ln(1 - a_k')`.  With every
/// `a_k' ≤ 1/10` (checked below), `-ln(1-x) ≤ 2x`, so
/// `|ln T| ≤ 2·Σ_{k'>k} a_k'`.  The ratio `a_{k'+1}/a_k' =
/// ((k'+1)/k')^ℓ · 3^{-ℓ/3}` decreases in `k'`, so the sum is bounded by the
/// geometric series `a_{k+1}/(1-r)` with `r` the first ratio; hence
/// `|T - 1| ≤ 2|ln T| ≤ 4·a_{k+1}/(1-r)` once that is below 1.  The filtered
/// sum inherits the products' relative error up to a small constant because
/// `|P_1| = |P_2| ≤ P_3` and the class values are within a factor ~3 of P_3.
/// Everything is evaluated in f64 log-space: only order of magnitude
/// matters, and the +2-digit margin on the target swallows the slack.
fn tail_within(ell: u32, k: usize, digits: u32) -> bool {
    let l = f64::from(ell);
    let log10_3 = 3f64.log10();
    let kp1 = (k + 1) as f64;
    let r = (kp1 / k as f64).powf(l) * (-l * 3f64.ln() / 3.0).exp();
    if r >= 0.99 {
        return false;
    }
    let log10_a = l * (kp1.log10() - kp1 * log10_3 / 3.0);
    if log10_a > -1.0 {
        return false;
    }
    log10_a + (4.0 / (1.0 - r)).log10() < -(f64::from(digits) + 2.0)
}

/// Doubles the truncation index from `max(50, ceil(40·digits/ℓ))` until the
/// tail bound holds and consecutive evaluations agree to `10^{-digits}`
/// relative on every class.
fn adaptive_sums(ell: u32, digits: u32, bits: usize) -> Result<([HpComplex; 3], usize), Error> {
    const K_LIMIT: usize = 4_000_000;
    let tol = HpReal::pow10(-i64::from(digits), bits);
    let k0 = 50usize.max((40 * digits as usize).div_ceil(ell as usize));

    let mut k = k0;
    let mut current = filtered_sums(ell, k, bits);
    while k <= K_LIMIT {
        let doubled_k = 2 * k;
        let doubled = filtered_sums(ell, doubled_k, bits);
        let stable = current
            .iter()
            .zip(doubled.iter())
            .all(|(a, b)| a.re.rel_diff(&b.re).sub(&tol).is_negative());
        if tail_within(ell, k, digits) && stable {
            return Ok((doubled, doubled_k));
        }
        k = doubled_k;
        current = doubled;
    }
    Err(Error::TruncationStalled {
        ell,
        n0: 0,
        reached: k,
    })
}
