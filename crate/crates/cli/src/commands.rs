//! The five subcommand implementations.  Each returns the process exit code
//! on success; errors bubble to `main` for uniform reporting and mapping.

use serde_json::{json, Map, Value};

use pnorm_core::cache::SeriesCache;
use pnorm_core::constants::constant_table;
use pnorm_core::convergence::{
    convergence_table_with_cache, dispersion_from, hardy_ramanujan_p, predicted_moment_from,
};
use pnorm_core::extremes::max_norm as closed_form_max;
use pnorm_core::hp::{precision_for_digits, HpReal};
use pnorm_core::oracle::{brute_max_norm, brute_power_sum};
use pnorm_core::series::{partition_numbers, WeightSpec};
use pnorm_core::{BigInt, BigRational, Error};

use crate::render::{
    abbreviate_integer, abbreviate_rational, print_csv, print_json, print_plain, Format,
};
use crate::{ConstantsArgs, DispersionArgs, MaxNormArgs, MomentsArgs, VerifyArgs};

/// `numerator/denominator` at `digits` significant digits.
fn rational_sig(r: &BigRational, digits: u32) -> String {
    HpReal::from_ratio(r.numer(), r.denom(), precision_for_digits(digits)).to_sig(digits)
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidRequest {
        reason: reason.into(),
    }
}

pub fn moments(args: &MomentsArgs, cache: &SeriesCache) -> Result<u8, Error> {
    let (from, to) = match args.n {
        Some(n) => (n, n),
        None => (args.from.expect("clap requires"), args.to.expect("clap requires")),
    };
    let records = convergence_table_with_cache(cache, args.ell, from, to, args.step, args.digits)?;

    // The predicted column reuses each row's already-evaluated constant; only
    // the partition-count divisor varies with --estimated-count.
    let mut predicted: Vec<Option<String>> = Vec::with_capacity(records.len());
    if args.predicted {
        let prec = precision_for_digits(args.digits) + 64;
        for r in &records {
            if r.n < 2 {
                predicted.push(None);
                continue;
            }
            let count = if args.estimated_count {
                hardy_ramanujan_p(r.n, args.digits)?
            } else {
                HpReal::from_bigint(&r.partition_count, prec)
            };
            let value = predicted_moment_from(&r.constant, &count, r.ell, r.n, args.digits);
            predicted.push(Some(value.to_sig(args.digits)));
        }
    }

    let mut headers = vec![
        "n", "ell", "S", "p", "moment_exact", "moment_decimal", "scaled", "constant", "rel_dev",
    ];
    if args.predicted {
        headers.push("predicted");
    }

    let mut rows = Vec::with_capacity(records.len());
    let mut json_rows = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let s = r.power_sum.to_string();
        let p = r.partition_count.to_string();
        let moment_exact = r.moment.to_string();
        let moment_decimal = rational_sig(&r.moment, args.digits);
        let scaled = r.scaled.to_sig(args.digits);
        let constant = r.constant.to_sig(args.digits);
        let rel_dev = r.rel_dev.to_sig(args.digits);
        let predicted_cell = args.predicted.then(|| predicted[i].clone());

        match args.format {
            Format::Plain => {
                let mut row = vec![
                    r.n.to_string(),
                    r.ell.to_string(),
                    abbreviate_integer(&s),
                    abbreviate_integer(&p),
                    abbreviate_rational(&moment_exact),
                    moment_decimal,
                    scaled,
                    constant,
                    rel_dev,
                ];
                if let Some(cell) = predicted_cell {
                    row.push(cell.unwrap_or_else(|| "-".to_string()));
                }
                rows.push(row);
            }
            Format::Csv => {
                let mut row = vec![
                    r.n.to_string(),
                    r.ell.to_string(),
                    s,
                    p,
                    moment_exact,
                    moment_decimal,
                    scaled,
                    constant,
                    rel_dev,
                ];
                if let Some(cell) = predicted_cell {
                    row.push(cell.unwrap_or_default());
                }
                rows.push(row);
            }
            Format::Json => {
                let mut object = Map::new();
                object.insert("n".into(), json!(r.n));
                object.insert("ell".into(), json!(r.ell));
                object.insert("S".into(), json!(s));
                object.insert("p".into(), json!(p));
                object.insert("moment_exact".into(), json!(moment_exact));
                object.insert("moment_decimal".into(), json!(moment_decimal));
                object.insert("scaled".into(), json!(scaled));
                object.insert("constant".into(), json!(constant));
                object.insert("rel_dev".into(), json!(rel_dev));
                if let Some(cell) = predicted_cell {
                    object.insert("predicted".into(), cell.map_or(Value::Null, Value::String));
                }
                json_rows.push(Value::Object(object));
            }
        }
    }

    emit(args.format, &headers, rows, json_rows);
    Ok(0)
}

pub fn max_norm(args: &MaxNormArgs) -> Result<u8, Error> {
    let (from, to) = match args.n {
        Some(n) => (n, n),
        None => (args.from.expect("clap requires"), args.to.expect("clap requires")),
    };
    if from > to {
        return Err(invalid(format!("empty range: --from {from} > --to {to}")));
    }

    let headers = ["n", "max_norm", "witness"];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in from..=to {
        let result = closed_form_max(n);
        let value = result.value.to_string();
        let witness = result.witness.to_string();
        match args.format {
            Format::Plain => rows.push(vec![
                n.to_string(),
                abbreviate_integer(&value),
                witness,
            ]),
            Format::Csv => rows.push(vec![n.to_string(), value, witness]),
            Format::Json => {
                let mut object = Map::new();
                object.insert("n".into(), json!(n));
                object.insert("max_norm".into(), json!(value));
                object.insert("witness".into(), json!(result.witness.parts()));
                json_rows.push(Value::Object(object));
            }
        }
    }

    emit(args.format, &headers, rows, json_rows);
    Ok(0)
}

pub fn constants(args: &ConstantsArgs) -> Result<u8, Error> {
    let table = constant_table(args.ell_max, args.digits)?;

    let headers = ["ell", "c1", "c2", "c3"];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for row in &table {
        let rendered: Vec<String> = row.values.iter().map(|v| v.to_fixed(args.digits)).collect();
        match args.format {
            Format::Json => {
                let mut object = Map::new();
                object.insert("ell".into(), json!(row.ell));
                object.insert("c1".into(), json!(rendered[0]));
                object.insert("c2".into(), json!(rendered[1]));
                object.insert("c3".into(), json!(rendered[2]));
                json_rows.push(Value::Object(object));
            }
            _ => {
                let mut cells = vec![row.ell.to_string()];
                cells.extend(rendered);
                rows.push(cells);
            }
        }
    }

    emit(args.format, &headers, rows, json_rows);
    Ok(0)
}

pub fn dispersion(args: &DispersionArgs, cache: &SeriesCache) -> Result<u8, Error> {
    if args.from > args.to {
        return Err(invalid(format!(
            "empty range: --from {} > --to {}",
            args.from, args.to
        )));
    }
    let to = args.to as usize;
    let first = cache.series(&WeightSpec::NormPower(1), to)?;
    let second = cache.series(&WeightSpec::NormPower(2), to)?;
    let counts = partition_numbers(to);

    let headers = [
        "n",
        "variance_exact",
        "variance_decimal",
        "cv2_exact",
        "cv2_decimal",
    ];
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut n = args.from;
    while n <= args.to {
        let i = n as usize;
        let stats = dispersion_from(first.coeff(i), second.coeff(i), counts.coeff(i));
        let variance_exact = stats.variance.to_string();
        let variance_decimal = rational_sig(&stats.variance, args.digits);
        let cv2_exact = stats.cv_squared.to_string();
        let cv2_decimal = rational_sig(&stats.cv_squared, args.digits);
        match args.format {
            Format::Plain => rows.push(vec![
                n.to_string(),
                abbreviate_rational(&variance_exact),
                variance_decimal,
                abbreviate_rational(&cv2_exact),
                cv2_decimal,
            ]),
            Format::Csv => rows.push(vec![
                n.to_string(),
                variance_exact,
                variance_decimal,
                cv2_exact,
                cv2_decimal,
            ]),
            Format::Json => {
                let mut object = Map::new();
                object.insert("n".into(), json!(n));
                object.insert("variance_exact".into(), json!(variance_exact));
                object.insert("variance_decimal".into(), json!(variance_decimal));
                object.insert("cv2_exact".into(), json!(cv2_exact));
                object.insert("cv2_decimal".into(), json!(cv2_decimal));
                json_rows.push(Value::Object(object));
            }
        }
        n += args.step;
    }

    emit(args.format, &headers, rows, json_rows);
    Ok(0)
}

pub fn verify(args: &VerifyArgs, cache: &SeriesCache) -> Result<u8, Error> {
    let nmax = args.nmax;
    let mut all_ok = true;

    // Series engine against partition-by-partition enumeration.
    let mut mismatch: Option<(u32, u64)> = None;
    'series: for ell in 1..=args.ell_max {
        let series = cache.series(&WeightSpec::NormPower(ell), nmax as usize)?;
        for n in 0..=nmax {
            if *series.coeff(n as usize) != brute_power_sum(ell, n) {
                mismatch = Some((ell, n));
                break 'series;
            }
        }
    }
    match mismatch {
        None => println!("series-vs-enumeration (ell 1..={}, n 0..={nmax}): ok", args.ell_max),
        Some((ell, n)) => {
            all_ok = false;
            println!("series-vs-enumeration: MISMATCH at ell={ell}, n={n}");
        }
    }

    // Closed-form maximum (value and witness) against enumeration.
    let mut max_mismatch: Option<u64> = None;
    for n in 0..=nmax {
        let closed = closed_form_max(n);
        let (value, witness) = brute_max_norm(n);
        if closed.value != value || closed.witness != witness {
            max_mismatch = Some(n);
            break;
        }
    }
    match max_mismatch {
        None => println!("max-norm-closed-form-vs-enumeration (n 0..={nmax}): ok"),
        Some(n) => {
            all_ok = false;
            println!("max-norm-closed-form-vs-enumeration: MISMATCH at n={n}");
        }
    }

    // Pentagonal-number recurrence against the unit-weight product, plus the
    // frozen reference count p(100) = 190569292.
    const RECURRENCE_LIMIT: usize = 500;
    let counts = partition_numbers(RECURRENCE_LIMIT);
    let product = cache.series(&WeightSpec::Unit, RECURRENCE_LIMIT)?;
    let mut count_mismatch = (0..=RECURRENCE_LIMIT).find(|&n| counts.coeff(n) != product.coeff(n));
    if counts.coeff(100) != &BigInt::from(190_569_292u64) {
        count_mismatch = count_mismatch.or(Some(100));
    }
    match count_mismatch {
        None => println!("partition-recurrence-vs-product (n 0..={RECURRENCE_LIMIT}): ok"),
        Some(n) => {
            all_ok = false;
            println!("partition-recurrence-vs-product: MISMATCH at n={n}");
        }
    }

    Ok(if all_ok { 0 } else { 3 })
}

fn emit(format: Format, headers: &[&str], rows: Vec<Vec<String>>, json_rows: Vec<Value>) {
    match format {
        Format::Plain => print_plain(headers, &rows),
        Format::Csv => print_csv(headers, &rows),
        Format::Json => print_json(json_rows),
    }
}
