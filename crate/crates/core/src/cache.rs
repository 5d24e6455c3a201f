//! On-disk cache for expanded coefficient series.
//!
//! File format (text, UTF-8, LF line endings), chosen over binary for
//! auditability of the huge integers involved:
//!
//! ```text
//! PNORMSERIES 1
//! weight=<unit | norm_power:<ell> | custom:<hex digest>>
//! nmax=<integer>
//! <n> <decimal coefficient>      (one line per n = 0..=n_max, in order)
//! ```
//!
//! Writers produce a sibling temporary file and atomically rename it into
//! place, so concurrent readers never observe a partial file.  A file storing
//! a larger degree serves any smaller request by prefix; a request beyond the
//! stored degree is a stale-cache error at the file level, which the
//! directory-level [`SeriesCache`] resolves by recomputing and overwriting.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::series::{expand_euler_product, CoefficientSeries, WeightSpec, WeightTag};

/// Magic-plus-version first line of every cache file.
pub const FORMAT_LINE: &str = "PNORMSERIES 1";

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::MalformedCache {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// Whether `s` is an optionally signed run of ASCII digits — the shape the
/// big-integer parser accepts.
fn is_decimal_integer(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Serializes `series` to `path` via write-then-atomic-rename.  The parent
/// directory must exist.
pub fn cache_store(series: &CoefficientSeries, path: &Path) -> Result<(), Error> {
    let mut text = String::new();
    text.push_str(FORMAT_LINE);
    text.push('\n');
    text.push_str(&format!("weight={}\n", series.tag().header_token()));
    text.push_str(&format!("nmax={}\n", series.n_max()));
    for (n, c) in series.coeffs().iter().enumerate() {
        text.push_str(&format!("{n} {c}\n"));
    }

    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.subsec_nanos())
        .unwrap_or(0);
    let tmp = dir.join(format!(
        ".{}.tmp.{}.{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("series"),
        std::process::id(),
        nanos,
    ));
    let result = (|| {
        let mut file = fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
        file.write_all(text.as_bytes()).map_err(|e| io_err(&tmp, e))?;
        file.sync_all().map_err(|e| io_err(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| io_err(path, e))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Reads the series stored at `path`, checks it is for `expected`, and
/// returns its prefix up to `n_max`.
///
/// Errors: [`Error::MalformedCache`] on header/version mismatch, a weight tag
/// other than `expected`, or any non-integer token; [`Error::StaleCache`]
/// when the file stores fewer than `n_max` coefficients.
pub fn cache_load(expected: &WeightTag, n_max: usize, path: &Path) -> Result<CoefficientSeries, Error> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines();

    let magic = lines.next().unwrap_or_default();
    if magic != FORMAT_LINE {
        return Err(malformed(path, format!("expected header `{FORMAT_LINE}`, found `{magic}`")));
    }

    let weight_line = lines.next().unwrap_or_default();
    let token = weight_line
        .strip_prefix("weight=")
        .ok_or_else(|| malformed(path, "missing `weight=` line"))?;
    let tag = WeightTag::from_header_token(token)
        .ok_or_else(|| malformed(path, format!("unrecognized weight tag `{token}`")))?;
    if &tag != expected {
        return Err(malformed(
            path,
            format!(
                "weight tag mismatch: file holds `{}`, expected `{}`",
                tag.header_token(),
                expected.header_token(),
            ),
        ));
    }

    let nmax_line = lines.next().unwrap_or_default();
    let stored: usize = nmax_line
        .strip_prefix("nmax=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| malformed(path, "missing or non-integer `nmax=` line"))?;
    if stored < n_max {
        return Err(Error::StaleCache {
            path: path.to_path_buf(),
            stored,
            requested: n_max,
        });
    }

    let mut coeffs = Vec::with_capacity(n_max + 1);
    for expected_n in 0..=stored {
        let line = lines
            .next()
            .ok_or_else(|| malformed(path, format!("missing coefficient line for n={expected_n}")))?;
        let (n_str, c_str) = line
            .split_once(' ')
            .ok_or_else(|| malformed(path, format!("coefficient line `{line}` is not `<n> <value>`")))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| malformed(path, format!("non-integer index `{n_str}`")))?;
        if n != expected_n {
            return Err(malformed(path, format!("expected index {expected_n}, found {n}")));
        }
        if expected_n <= n_max {
            let c: BigInt = c_str
                .parse()
                .map_err(|_| malformed(path, format!("non-integer coefficient `{c_str}` at n={n}")))?;
            coeffs.push(c);
        } else if !is_decimal_integer(c_str) {
            // Rows beyond the requested prefix are still validated (cheaply,
            // without materializing the integer) so a corrupt file never
            // loads successfully at any degree.
            return Err(malformed(path, format!("non-integer coefficient `{c_str}` at n={n}")));
        }
    }
    if lines.next().is_some() {
        return Err(malformed(path, "trailing data after the last coefficient line"));
    }
    if !coeffs[0].is_one() {
        return Err(malformed(path, "coefficient at n=0 must be 1"));
    }
    Ok(CoefficientSeries::from_parts(tag, coeffs))
}

/// Directory-level cache: one file per weight tag, recomputed and overwritten
/// when a request outgrows the stored degree.
#[derive(Clone, Debug)]
pub struct SeriesCache {
    dir: Option<PathBuf>,
}

impl SeriesCache {
    /// A cache rooted at `dir` (created on first store).
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    /// A disabled cache: every request recomputes, nothing touches disk.
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    /// The file a tag is stored under, or `None` for a disabled cache.
    pub fn file_for(&self, tag: &WeightTag) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}.series", tag.file_stem())))
    }

    /// Returns the series for `weight` up to `n_max`, from cache when
    /// possible.
    ///
    /// A missing file is computed and stored; a file with a smaller degree is
    /// recomputed at the requested degree and overwritten; a malformed file
    /// or any I/O failure is reported as an error rather than silently
    /// recomputed, so corruption stays visible.
    pub fn series(&self, weight: &WeightSpec, n_max: usize) -> Result<CoefficientSeries, Error> {
        let Some(path) = self.file_for(&weight.tag()) else {
            return expand_euler_product(weight, n_max);
        };
        match cache_load(&weight.tag(), n_max, &path) {
            Ok(series) => Ok(series),
            Err(Error::StaleCache { .. }) => self.compute_and_store(weight, n_max, &path),
            Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::NotFound => {
                self.compute_and_store(weight, n_max, &path)
            }
            Err(e) => Err(e),
        }
    }

    fn compute_and_store(
        &self,
        weight: &WeightSpec,
        n_max: usize,
        path: &Path,
    ) -> Result<CoefficientSeries, Error> {
        let series = expand_euler_product(weight, n_max)?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        }
        cache_store(&series, path)?;
        Ok(series)
    }
}
