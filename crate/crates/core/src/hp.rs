//! Arbitrary-precision real and complex arithmetic plus deterministic
//! decimal rendering.
//!
//! * [`HpReal`] wraps a binary float of configurable precision; every
//!   operation rounds to nearest-even at the larger precision of its
//!   operands, so precision is set once at construction and flows through.
//! * [`HpComplex`] is a rectangular pair of [`HpReal`].  Its products use the
//!   plain four-multiplication form so that conjugating both inputs
//!   conjugates the output bit-for-bit, which downstream code asserts.
//! * [`HpReal::to_fixed`] and [`HpReal::to_sig`] render decimal strings with
//!   round-half-even at a requested number of decimal places or significant
//!   digits.  Rendering is deterministic: equal values at equal precision
//!   produce identical bytes.
//!
//! Values here are always finite; an operation that would produce an
//! infinity or NaN (division by zero, log of a negative) panics rather than
//! propagating poison, since the callers in this crate guarantee their
//! arguments.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

/// Default binary precision in bits.
pub const DEFAULT_PRECISION: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary precision needed to carry `digits` decimal digits, plus a guard of
/// ten more digits, rounded up to a whole 64-bit word and never below
/// [`DEFAULT_PRECISION`].
pub fn precision_for_digits(digits: u32) -> usize {
    // 10/3 over-approximates log2(10).
    let bits = (digits as usize + 10) * 10 / 3 + 1;
    bits.max(DEFAULT_PRECISION).div_ceil(64) * 64
}

/// Decimal digits that `bits` of working precision can guarantee after the
/// ten-digit guard is set aside: floor(bits·log10 2) − 10.
pub fn digit_capacity(bits: usize) -> u32 {
    let digits = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64 - 10;
    digits.max(0) as u32
}

/// Real value at a fixed binary precision.
#[derive(Clone, Debug)]
pub struct HpReal {
    value: BigFloat,
    prec: usize,
}

impl HpReal {
    fn wrap(value: BigFloat, prec: usize) -> Self {
        debug_assert!(!value.is_nan() && !value.is_inf(), "non-finite value");
        Self { value, prec }
    }

    /// Zero at precision `prec`.
    pub fn zero(prec: usize) -> Self {
        Self::wrap(BigFloat::from_u64(0, prec), prec)
    }

    /// One at precision `prec`.
    pub fn one(prec: usize) -> Self {
        Self::from_u64(1, prec)
    }

    /// Exact embedding of a machine integer.
    pub fn from_u64(v: u64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_u64(v, prec), prec)
    }

    /// Exact embedding of a signed machine integer.
    pub fn from_i64(v: i64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_i64(v, prec), prec)
    }

    /// Exact embedding of a float (used for exactly-representable constants
    /// like 0.5).
    pub fn from_f64(v: f64, prec: usize) -> Self {
        Self::wrap(BigFloat::from_f64(v, prec), prec)
    }

    /// Rounds an arbitrary-precision integer to `prec` bits.
    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        let s = v.to_string();
        let value = with_consts(|cc| BigFloat::parse(&s, Radix::Dec, prec, RM, cc));
        Self::wrap(value, prec)
    }

    /// The ratio `numer/denom` rounded to `prec` bits.
    pub fn from_ratio(numer: &BigInt, denom: &BigInt, prec: usize) -> Self {
        Self::from_bigint(numer, prec).div(&Self::from_bigint(denom, prec))
    }

    /// π at precision `prec`.
    pub fn pi(prec: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec, RM)), prec)
    }

    /// 10^`exp` at precision `prec` (exact for `exp ≥ 0` when it fits).
    pub fn pow10(exp: i64, prec: usize) -> Self {
        let base = Self::from_u64(10, prec).powi(exp.unsigned_abs());
        if exp < 0 {
            base.recip()
        } else {
            base
        }
    }

    /// The binary precision this value carries.
    pub fn prec(&self) -> usize {
        self.prec
    }

    /// This value re-rounded to precision `prec`.
    pub fn with_prec(&self, prec: usize) -> Self {
        let mut value = self.value.clone();
        value
            .set_precision(prec, RM)
            .expect("precision change on finite value");
        Self::wrap(value, prec)
    }

    fn join(&self, rhs: &Self) -> usize {
        self.prec.max(rhs.prec)
    }

    /// Sum at the larger operand precision.
    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        Self::wrap(self.value.add(&rhs.value, p, RM), p)
    }

    /// Difference at the larger operand precision.
    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        Self::wrap(self.value.sub(&rhs.value, p, RM), p)
    }

    /// Product at the larger operand precision.
    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        Self::wrap(self.value.mul(&rhs.value, p, RM), p)
    }

    /// Quotient at the larger operand precision; `rhs` must be nonzero.
    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.join(rhs);
        Self::wrap(self.value.div(&rhs.value, p, RM), p)
    }

    /// Negation (exact).
    pub fn neg(&self) -> Self {
        Self::wrap(self.value.neg(), self.prec)
    }

    /// Absolute value (exact).
    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.prec)
    }

    /// Reciprocal; `self` must be nonzero.
    pub fn recip(&self) -> Self {
        Self::wrap(self.value.reciprocal(self.prec, RM), self.prec)
    }

    /// Square root; `self` must be nonnegative.
    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.prec, RM), self.prec)
    }

    /// Cube root.
    pub fn cbrt(&self) -> Self {
        Self::wrap(self.value.cbrt(self.prec, RM), self.prec)
    }

    /// Natural logarithm; `self` must be positive.
    pub fn ln(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.ln(self.prec, RM, cc)), self.prec)
    }

    /// Exponential.
    pub fn exp(&self) -> Self {
        Self::wrap(with_consts(|cc| self.value.exp(self.prec, RM, cc)), self.prec)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, exp: u64) -> Self {
        Self::wrap(self.value.powi(exp as usize, self.prec, RM), self.prec)
    }

    /// Whether this value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Whether this value is negative.
    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// `|self − rhs| / |rhs|`; `rhs` must be nonzero.
    pub fn rel_diff(&self, rhs: &Self) -> Self {
        self.sub(rhs).div(rhs).abs()
    }

    /// Whether `self` and `rhs` carry identical precision, sign, exponent,
    /// and mantissa — equality of representations, not just of rounded
    /// values.
    pub fn bits_eq(&self, rhs: &Self) -> bool {
        self.prec == rhs.prec
            && self.value.sign() == rhs.value.sign()
            && self.value.exponent() == rhs.value.exponent()
            && self.value.mantissa_digits() == rhs.value.mantissa_digits()
    }

    /// Approximate conversion for diagnostics and coarse comparisons.
    pub fn to_f64(&self) -> f64 {
        self.to_sig(17).parse().expect("rendered decimal parses")
    }

    /// The value as `(negative, digits, exponent)` with the full stored
    /// precision: `value = ±0.d₁d₂… × 10^exponent`, `d₁ ≠ 0`.  Zero returns
    /// an empty digit list.
    fn decimal_parts(&self) -> (bool, Vec<u8>, i64) {
        if self.value.is_zero() {
            return (false, Vec::new(), 0);
        }
        let (sign, digits, exp) = with_consts(|cc| self.value.convert_to_radix(Radix::Dec, RM, cc))
            .expect("decimal conversion of finite value");
        let mut digits = digits;
        let mut exp = exp as i64;
        while digits.first() == Some(&0) {
            digits.remove(0);
            exp -= 1;
        }
        (sign == Sign::Neg, digits, exp)
    }

    /// Fixed-point rendering with exactly `places` digits after the decimal
    /// point, rounded half-even at the last place.
    pub fn to_fixed(&self, places: u32) -> String {
        let places = places as i64;
        let (neg, digits, exp) = self.decimal_parts();
        let (digits, exp) = round_at(digits, exp, exp + places);

        let mut out = String::new();
        if digits.is_empty() {
            out.push('0');
            if places > 0 {
                out.push('.');
                out.extend(std::iter::repeat('0').take(places as usize));
            }
            return out;
        }
        if neg {
            out.push('-');
        }
        if exp <= 0 {
            out.push('0');
        } else {
            for &d in &digits[..exp as usize] {
                out.push(char::from(b'0' + d));
            }
        }
        if places > 0 {
            out.push('.');
            if exp < 0 {
                out.extend(std::iter::repeat('0').take((-exp) as usize));
            }
            for &d in &digits[exp.max(0) as usize..] {
                out.push(char::from(b'0' + d));
            }
        }
        out
    }

    /// Rendering with `sig` significant digits, rounded half-even.
    /// Positional when the leading digit sits within three places of the
    /// decimal point and the value is below 10^sig; scientific `d.dd…e±x`
    /// otherwise.  Trailing zeros are kept, so the digit count is constant.
    pub fn to_sig(&self, sig: u32) -> String {
        assert!(sig >= 1, "need at least one significant digit");
        let (neg, digits, exp) = self.decimal_parts();
        if digits.is_empty() {
            return "0".to_string();
        }
        let (mut digits, exp) = round_at(digits, exp, sig as i64);
        digits.truncate(sig as usize);
        while digits.len() < sig as usize {
            digits.push(0);
        }

        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if exp >= -3 && exp <= sig as i64 {
            // Positional: reuse the fixed-point assembly on the rounded digits.
            if exp <= 0 {
                out.push_str("0.");
                out.extend(std::iter::repeat('0').take((-exp) as usize));
                for &d in &digits {
                    out.push(char::from(b'0' + d));
                }
            } else {
                for (i, &d) in digits.iter().enumerate() {
                    if i == exp as usize {
                        out.push('.');
                    }
                    out.push(char::from(b'0' + d));
                }
            }
        } else {
            out.push(char::from(b'0' + digits[0]));
            if digits.len() > 1 {
                out.push('.');
                for &d in &digits[1..] {
                    out.push(char::from(b'0' + d));
                }
            }
            out.push('e');
            out.push_str(&(exp - 1).to_string());
        }
        out
    }
}

/// Rounds the digit string `0.d₁d₂… × 10^exp` half-even so that only `keep`
/// digits remain, returning the new digits and exponent.  `keep ≤ 0` rounds
/// everything away (the result is the empty digit string: zero).  A carry
/// out of the leading digit lengthens the result by one and bumps the
/// exponent.
///
/// Ties are judged on the digit string itself, which the conversion above
/// produced by correct rounding at the full working precision — dozens of
/// digits beyond any rendering this crate asks for.
fn round_at(mut digits: Vec<u8>, exp: i64, keep: i64) -> (Vec<u8>, i64) {
    if digits.is_empty() {
        return (digits, exp);
    }
    if keep >= digits.len() as i64 {
        digits.resize(keep as usize, 0);
        return (digits, exp);
    }
    if keep < 0 {
        return (Vec::new(), exp);
    }
    let keep = keep as usize;
    let round_up = match digits[keep].cmp(&5) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            let rest_nonzero = digits[keep + 1..].iter().any(|&d| d != 0);
            let last_kept_odd = keep > 0 && digits[keep - 1] % 2 == 1;
            rest_nonzero || last_kept_odd
        }
    };
    digits.truncate(keep);
    let mut exp = exp;
    if round_up {
        let mut i = keep;
        loop {
            if i == 0 {
                digits.insert(0, 1);
                exp += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    if digits.iter().all(|&d| d == 0) {
        return (Vec::new(), exp);
    }
    (digits, exp)
}

/// Complex value in rectangular form at a fixed binary precision.
#[derive(Clone, Debug)]
pub struct HpComplex {
    /// Real part.
    pub re: HpReal,
    /// Imaginary part.
    pub im: HpReal,
}

impl HpComplex {
    /// Builds from parts.
    pub fn new(re: HpReal, im: HpReal) -> Self {
        Self { re, im }
    }

    /// The real number `re` as a complex value.
    pub fn from_real(re: HpReal) -> Self {
        let prec = re.prec();
        Self::new(re, HpReal::zero(prec))
    }

    /// One at precision `prec`.
    pub fn one(prec: usize) -> Self {
        Self::from_real(HpReal::one(prec))
    }

    /// Zero at precision `prec`.
    pub fn zero(prec: usize) -> Self {
        Self::from_real(HpReal::zero(prec))
    }

    /// Complex conjugate (exact).
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    /// Sum, componentwise.
    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    /// Difference, componentwise.
    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    /// Product, in the four-multiplication rectangular form.  Conjugating
    /// both operands conjugates the result bit-for-bit: the real part's two
    /// products are unchanged and the imaginary part's two products are
    /// exactly negated, and rounding commutes with negation under
    /// round-to-nearest-even.
    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Self::new(re, im)
    }

    /// Product with a real scalar.
    pub fn mul_real(&self, rhs: &HpReal) -> Self {
        Self::new(self.re.mul(rhs), self.im.mul(rhs))
    }

    /// Quotient by a real scalar.
    pub fn div_real(&self, rhs: &HpReal) -> Self {
        Self::new(self.re.div(rhs), self.im.div(rhs))
    }

    /// Reciprocal `conj(z)/|z|²`; `self` must be nonzero.
    pub fn recip(&self) -> Self {
        let norm2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Self::new(self.re.div(&norm2), self.im.neg().div(&norm2))
    }

    /// Whether both parts have identical representations (see
    /// [`HpReal::bits_eq`]).
    pub fn bits_eq(&self, rhs: &Self) -> bool {
        self.re.bits_eq(&rhs.re) && self.im.bits_eq(&rhs.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 192;

    fn real(v: f64) -> HpReal {
        HpReal::from_f64(v, P)
    }

    #[test]
    fn precision_policy() {
        assert_eq!(precision_for_digits(1), DEFAULT_PRECISION);
        assert!(precision_for_digits(50) >= 200);
        assert_eq!(precision_for_digits(50) % 64, 0);
        // Round trip: the precision chosen for d digits must have capacity d.
        for d in [1, 6, 10, 30, 100] {
            assert!(digit_capacity(precision_for_digits(d)) >= d);
        }
        assert_eq!(digit_capacity(64), 9);
    }

    #[test]
    fn fixed_rendering_rounds_half_even() {
        assert_eq!(real(2.5).to_fixed(0), "2");
        assert_eq!(real(3.5).to_fixed(0), "4");
        assert_eq!(real(0.5).to_fixed(0), "0");
        assert_eq!(real(0.125).to_fixed(2), "0.12");
        assert_eq!(real(0.375).to_fixed(2), "0.38");
        assert_eq!(real(-0.375).to_fixed(2), "-0.38");
    }

    #[test]
    fn fixed_rendering_handles_carries_and_zeros() {
        assert_eq!(real(9.99951).to_fixed(3), "10.000"); // carry through all digits
        assert_eq!(real(0.0004).to_fixed(3), "0.000");
        assert_eq!(real(-0.0004).to_fixed(3), "0.000"); // no negative zero
        assert_eq!(HpReal::zero(P).to_fixed(3), "0.000");
        assert_eq!(HpReal::zero(P).to_fixed(0), "0");
        assert_eq!(real(0.7).to_fixed(0), "1");
        assert_eq!(real(0.07).to_fixed(0), "0");
    }

    #[test]
    fn fixed_rendering_of_a_third() {
        let third = HpReal::one(P).div(&HpReal::from_u64(3, P));
        assert_eq!(third.to_fixed(10), "0.3333333333");
        let two_thirds = HpReal::from_u64(2, P).div(&HpReal::from_u64(3, P));
        assert_eq!(two_thirds.to_fixed(4), "0.6667");
    }

    #[test]
    fn sig_rendering_switches_presentation() {
        let x = HpReal::from_u64(25, P).div(&HpReal::from_u64(7, P));
        assert_eq!(x.to_sig(8), "3.5714286");
        assert_eq!(HpReal::one(P).to_sig(6), "1.00000");
        assert_eq!(HpReal::from_u64(190569292, P).to_sig(9), "190569292");
        assert_eq!(HpReal::from_u64(190569292, P).to_sig(4), "1.906e8");
        assert_eq!(real(0.00001).to_sig(3), "1.00e-5");
        assert_eq!(real(0.001).to_sig(3), "0.00100");
        assert_eq!(HpReal::pow10(-14, P).to_sig(2), "1.0e-14");
        assert_eq!(HpReal::zero(P).to_sig(5), "0");
        assert_eq!(real(-2.0).to_sig(1), "-2");
    }

    #[test]
    fn pi_matches_reference_digits() {
        assert_eq!(HpReal::pi(P).to_fixed(10), "3.1415926536");
        assert_eq!(HpReal::pi(256).to_sig(20), "3.1415926535897932385");
    }

    #[test]
    fn exp_ln_round_trip() {
        let three = HpReal::from_u64(3, P);
        let back = three.ln().exp();
        let tol = HpReal::pow10(-50, P);
        assert!(back.rel_diff(&three).sub(&tol).is_negative());
    }

    #[test]
    fn powi_and_roots() {
        assert_eq!(HpReal::from_u64(2, P).powi(10).to_fixed(0), "1024");
        let tol = HpReal::pow10(-50, P);
        let three = HpReal::from_u64(3, P);
        assert!(three.cbrt().powi(3).rel_diff(&three).sub(&tol).is_negative());
        assert!(three.sqrt().powi(2).rel_diff(&three).sub(&tol).is_negative());
    }

    #[test]
    fn bigint_embedding() {
        let huge: BigInt = BigInt::from(10).pow(40u32) + 7;
        let x = HpReal::from_bigint(&huge, 256);
        assert_eq!(x.to_sig(5), "1.0000e40");
        let small = HpReal::from_bigint(&BigInt::from(-42), P);
        assert_eq!(small.to_fixed(1), "-42.0");
    }

    #[test]
    fn rel_diff_is_symmetric_in_magnitude() {
        let a = real(101.0);
        let b = real(100.0);
        assert_eq!(a.rel_diff(&b).to_fixed(4), "0.0100");
        assert_eq!(b.rel_diff(&a).to_sig(3), "0.00990");
    }

    #[test]
    fn to_f64_round_trips_through_rendering() {
        assert_eq!(real(1.5).to_f64(), 1.5);
        assert_eq!(HpReal::pow10(-14, P).to_f64(), 1e-14);
    }

    #[test]
    fn bits_eq_distinguishes_value_and_representation() {
        let a = HpReal::one(P);
        let b = HpReal::one(P);
        assert!(a.bits_eq(&b));
        assert!(!a.bits_eq(&HpReal::one(256)));
        assert!(!a.bits_eq(&real(1.0 + 1e-10)));
    }

    #[test]
    fn complex_multiplication() {
        let z = HpComplex::new(real(1.0), real(2.0));
        let w = HpComplex::new(real(3.0), real(4.0));
        let p = z.mul(&w);
        assert_eq!(p.re.to_fixed(1), "-5.0");
        assert_eq!(p.im.to_fixed(1), "10.0");
    }

    #[test]
    fn complex_reciprocal() {
        let z = HpComplex::new(real(3.0), real(4.0));
        let r = z.recip();
        assert_eq!(r.re.to_fixed(6), "0.120000");
        assert_eq!(r.im.to_fixed(6), "-0.160000");
    }

    #[test]
    fn conjugation_commutes_with_multiplication_bitwise() {
        let third = HpReal::one(P).div(&HpReal::from_u64(3, P));
        let seventh = HpReal::one(P).div(&HpReal::from_u64(7, P));
        let z = HpComplex::new(third.clone(), seventh.clone());
        let w = HpComplex::new(seventh.sub(&HpReal::one(P)), third.neg());
        let direct = z.mul(&w).conj();
        let conjugated = z.conj().mul(&w.conj());
        assert!(direct.bits_eq(&conjugated));
    }
}
