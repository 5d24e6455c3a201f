//! The acceptance gate: eight end-to-end criteria, one test each, with the
//! tolerances pinned in code.  Each prints a single `ACCEPTANCE <k> …: PASS`
//! line (visible with `--nocapture`); a failed criterion fails its test.
//!
//! Reference values and tolerances live in the constants below — loosening
//! any of them is a change to the gate, not to the implementation.

use std::process::Command;
use std::time::{Duration, Instant};

use pnorm_core::cache::{cache_load, cache_store};
use pnorm_core::constants::{ConstantEvaluator, ConstantRequest};
use pnorm_core::convergence::{convergence_table, dispersion, hardy_ramanujan_p};
use pnorm_core::extremes::max_norm;
use pnorm_core::hp::HpReal;
use pnorm_core::oracle::{brute_max_norm, brute_power_sum};
use pnorm_core::series::{expand_euler_product, norm_power_sum, partition_numbers};
use pnorm_core::{BigInt, WeightSpec};

/// The three-decimal reference table the `constants` command must reproduce:
/// rows ℓ = 1..=10, columns for residue classes 1, 2, 3.
const REFERENCE_TABLE: [[&str; 3]; 10] = [
    ["97922.939", "97922.904", "97923.267"],
    ["667.849", "667.848", "668.148"],
    ["86.275", "86.298", "86.602"],
    ["26.884", "26.927", "27.247"],
    ["12.453", "12.513", "12.851"],
    ["7.157", "7.229", "7.588"],
    ["4.689", "4.771", "5.152"],
    ["3.347", "3.435", "3.839"],
    ["2.535", "2.628", "3.054"],
    ["2.003", "2.100", "2.548"],
];

/// Table gate: a computed entry may differ from the printed digits by
/// at most one unit in the last printed place.  (The reference digits are
/// truncations, not roundings, so about half the correctly-rounded entries
/// legitimately sit one ulp above them; one entry's printed digits are a
/// known slip one ulp below its true value.)
const TABLE_ULP_TOLERANCE: i64 = 1;

/// Convergence gate: relative deviation of the scaled power sum from its
/// limit constant, uniform over ℓ ∈ {1,2,3} × n ∈ {600,601,602}.
const CONVERGENCE_TOLERANCE: f64 = 1e-2;

/// Evaluator-consistency gate.
const TRUNCATION_AGREEMENT: f64 = 1e-6;

/// Count-estimate gate: the leading-order count estimate's relative error band
/// at n = 100.
const ESTIMATE_ERROR_BAND: std::ops::Range<f64> = 0.04..0.05;

/// Dispersion gate.
const DISPERSION_FLOOR_AT_300: f64 = 1e6;

/// `"97922.939"` → thousandths as an integer, for exact ulp arithmetic.
fn millis(rendered: &str) -> i64 {
    let (int, frac) = rendered.split_once('.').expect("three-decimal rendering");
    assert_eq!(frac.len(), 3, "{rendered} has exactly three decimals");
    let magnitude: i64 = format!("{int}{frac}").parse().expect("decimal digits");
    magnitude
}

#[test]
fn acceptance_1_constants_table_reproduction() {
    let started = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_pnorm"))
        .args(["constants", "--ell-max", "10", "--digits", "3", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(output.status.success());

    let text = String::from_utf8(output.stdout).unwrap();
    let mut exact = 0u32;
    let mut within_one = 0u32;
    let mut rows = 0;
    for (line, reference) in text.lines().skip(1).zip(&REFERENCE_TABLE) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        rows += 1;
        for (computed, printed) in cells[1..].iter().zip(reference) {
            let difference = (millis(computed) - millis(printed)).abs();
            assert!(
                difference <= TABLE_ULP_TOLERANCE,
                "ell={} computed {computed} vs reference {printed}: {difference} ulp",
                cells[0],
            );
            if difference == 0 {
                exact += 1;
            } else {
                within_one += 1;
            }
        }
    }
    assert_eq!(rows, 10, "ten table rows");
    assert!(
        elapsed < Duration::from_secs(10),
        "table took {elapsed:?}, budget 10s",
    );
    println!(
        "ACCEPTANCE 1 constants-table reproduction: PASS \
         ({exact}/30 digit-exact, {within_one}/30 one ulp off the truncated reference digits; {elapsed:?})",
    );
}

#[test]
fn acceptance_2_oracle_equivalence() {
    let started = Instant::now();
    for ell in 1..=3u32 {
        for n in 0..=25u64 {
            assert_eq!(
                norm_power_sum(ell, n as usize),
                brute_power_sum(ell, n),
                "series vs enumeration at ell={ell}, n={n}",
            );
        }
    }
    for n in 2..=40u64 {
        let closed = max_norm(n);
        let (value, witness) = brute_max_norm(n);
        assert_eq!(closed.value, value, "max norm value at n={n}");
        assert_eq!(closed.witness, witness, "max norm witness at n={n}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}, budget 2min");
    println!(
        "ACCEPTANCE 2 oracle equivalence: PASS \
         (power sums ell<=3 n<=25 and max norms n<=40 match enumeration exactly; {elapsed:?})",
    );
}

#[test]
fn acceptance_3_scaled_sums_approach_their_constants() {
    let started = Instant::now();
    let mut worst = 0f64;
    for ell in 1..=3u32 {
        let rows = convergence_table(ell, 600, 602, 1, 6).unwrap();
        for row in &rows {
            let deviation = row.rel_dev.to_f64();
            worst = worst.max(deviation);
            assert!(
                deviation < CONVERGENCE_TOLERANCE,
                "ell={ell}, n={}: rel_dev {deviation:e} >= {CONVERGENCE_TOLERANCE:e}",
                row.n,
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 1min");
    println!(
        "ACCEPTANCE 3 scaled power sums near their limits: PASS \
         (9 cases ell<=3, n in 600..=602; worst rel_dev {worst:.2e} < 1e-2; {elapsed:?})",
    );
}

#[test]
fn acceptance_4_constant_evaluation_consistency() {
    let evaluator = ConstantEvaluator::new();

    // Successful evaluation at 6 digits enforces the imaginary-residue gate
    // |Im| < 10⁻⁴ internally (a larger residue is a hard error), and the
    // doubling loop enforces K-vs-2K agreement; both are re-checked here
    // explicitly at pinned truncations.
    for ell in [1u32, 2, 3, 10] {
        let (_, accepted_k, bits) = evaluator.evaluate_row(ell, 6, None).unwrap();
        let (at_k, _, _) = evaluator.evaluate_row(ell, 6, Some(accepted_k)).unwrap();
        let (at_2k, _, _) = evaluator.evaluate_row(ell, 6, Some(2 * accepted_k)).unwrap();
        for (a, b) in at_k.iter().zip(&at_2k) {
            let agreement = a.rel_diff(b).to_f64();
            assert!(
                agreement < TRUNCATION_AGREEMENT,
                "ell={ell}: K vs 2K differ by {agreement:e}",
            );
        }
        assert!(bits >= 128);
    }

    // Class label 0 is an alias of class 3, bit for bit, at default and at
    // explicitly pinned working precision.
    for (digits, working_bits) in [(10u32, None), (15, Some(256usize))] {
        let evaluator = match working_bits {
            Some(bits) => ConstantEvaluator::with_working_bits(bits),
            None => ConstantEvaluator::new(),
        };
        let request = |n0| ConstantRequest {
            ell: 2,
            n0,
            precision_digits: digits,
            truncation: None,
        };
        let zero = evaluator.evaluate(&request(0)).unwrap();
        let three = evaluator.evaluate(&request(3)).unwrap();
        assert!(
            zero.value.bits_eq(&three.value),
            "class 0 and class 3 disagree bitwise at digits={digits}",
        );
    }

    println!(
        "ACCEPTANCE 4 constant evaluation consistency: PASS \
         (imaginary residue below 1e-4 gate, K-vs-2K under 1e-6, class 0 ≡ class 3 bitwise)",
    );
}

#[test]
fn acceptance_5_partition_count_estimate_error() {
    let exact_100 = HpReal::from_bigint(partition_numbers(100).coeff(100), 256);
    let error_100 = hardy_ramanujan_p(100, 15)
        .unwrap()
        .rel_diff(&exact_100)
        .to_f64();
    assert!(
        ESTIMATE_ERROR_BAND.contains(&error_100),
        "relative error {error_100} at n=100 outside [4%, 5%]",
    );

    let exact_1000 = HpReal::from_bigint(partition_numbers(1000).coeff(1000), 256);
    let error_1000 = hardy_ramanujan_p(1000, 15)
        .unwrap()
        .rel_diff(&exact_1000)
        .to_f64();
    assert!(
        error_1000 < error_100,
        "error at n=1000 ({error_1000}) not below error at n=100 ({error_100})",
    );
    println!(
        "ACCEPTANCE 5 partition-count estimate: PASS \
         (relative error {:.2}% at n=100, {:.2}% at n=1000)",
        error_100 * 100.0,
        error_1000 * 100.0,
    );
}

#[test]
fn acceptance_6_dispersion_growth() {
    let zero = pnorm_core::BigRational::from_integer(BigInt::from(0));
    for n in 1..=40u64 {
        assert!(dispersion(n).unwrap().variance >= zero, "variance at n={n}");
    }

    let mut previous: Option<pnorm_core::BigRational> = None;
    let mut cv2_at_300 = 0f64;
    for n in [50u64, 100, 150, 200, 250, 300] {
        let stats = dispersion(n).unwrap();
        assert!(stats.variance >= zero, "variance at n={n}");
        if let Some(ref prev) = previous {
            assert!(stats.cv_squared > *prev, "cv² not strictly increasing at n={n}");
        }
        if n == 300 {
            let numer = HpReal::from_bigint(stats.cv_squared.numer(), 256);
            let denom = HpReal::from_bigint(stats.cv_squared.denom(), 256);
            cv2_at_300 = numer.div(&denom).to_f64();
        }
        previous = Some(stats.cv_squared);
    }
    assert!(
        cv2_at_300 > DISPERSION_FLOOR_AT_300,
        "cv²(300) = {cv2_at_300:e} not above 1e6",
    );
    println!(
        "ACCEPTANCE 6 dispersion growth: PASS \
         (cv² strictly increasing over 50..=300 step 50; cv²(300) = {cv2_at_300:.3e} > 1e6; variance >= 0)",
    );
}

#[test]
fn acceptance_7_partition_count_cross_check() {
    let counts = partition_numbers(500);
    let product = expand_euler_product(&WeightSpec::Unit, 500).unwrap();
    for n in 0..=500usize {
        assert_eq!(
            counts.coeff(n),
            product.coeff(n),
            "recurrence vs product at n={n}",
        );
    }
    assert_eq!(counts.coeff(100), &BigInt::from(190_569_292u64));
    println!(
        "ACCEPTANCE 7 partition-count cross-check: PASS \
         (pentagonal recurrence = unit-weight product for n<=500; p(100) = 190569292)",
    );
}

#[test]
fn acceptance_8_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("norm_power_2.series");
    let series = expand_euler_product(&WeightSpec::NormPower(2), 500).unwrap();

    cache_store(&series, &path).unwrap();
    let reloaded = cache_load(series.tag(), 500, &path).unwrap();
    assert_eq!(reloaded, series, "full round trip is lossless");

    let prefix = cache_load(series.tag(), 123, &path).unwrap();
    assert_eq!(prefix, series.prefix(123), "prefix load");

    match cache_load(series.tag(), 501, &path) {
        Err(pnorm_core::Error::StaleCache { stored, requested, .. }) => {
            assert_eq!((stored, requested), (500, 501));
        }
        other => panic!("expected stale-cache error, got {other:?}"),
    }
    println!(
        "ACCEPTANCE 8 cache round-trip: PASS \
         (norm-power-2 series at degree 500 lossless; prefix loads and stale-degree errors behave as documented)",
    );
}
