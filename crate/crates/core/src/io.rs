//! CSV files for signals, spectra, masks and verification reports.
//!
//! A signal file has the header `t,q0,q1,q2,q3` (spectra use `w` for the first
//! column) and one row per sample on a uniform, strictly increasing axis. A
//! mask file has the header `w,m0,m1,m2,m3`. Numbers are written in the
//! shortest form that parses back to the same `f64`.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{Grid, Sampled};
use crate::quaternion::Quaternion;
use crate::report::VerificationReport;

/// Relative tolerance on the spacing of the first column.
pub const SPACING_TOL: f64 = 1e-9;

pub const SIGNAL_HEADER: [&str; 5] = ["t", "q0", "q1", "q2", "q3"];
pub const SPECTRUM_HEADER: [&str; 5] = ["w", "q0", "q1", "q2", "q3"];
pub const MASK_HEADER: [&str; 5] = ["w", "m0", "m1", "m2", "m3"];

/// Shortest round-trip decimal; exponent form only for very large or small magnitudes.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn parse_f64(field: &str, row: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("row {row}: '{field}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Format(format!("row {row}: non-finite value '{field}'")))
    }
}

/// Reads quaternion rows under one of the accepted headers.
pub fn read_quaternion_csv(reader: impl Read, headers: &[[&str; 5]]) -> Result<Sampled<Quaternion>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let found = rdr.headers().map_err(|e| Error::Format(e.to_string()))?.clone();
    let found: Vec<&str> = found.iter().collect();
    if !headers.iter().any(|h| found == h) {
        let want: Vec<String> = headers.iter().map(|h| h.join(",")).collect();
        return Err(Error::Format(format!("header '{}' (expected {})", found.join(","), want.join(" or "))));
    }
    let mut axis = Vec::new();
    let mut samples = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        if rec.len() != 5 {
            return Err(Error::Format(format!("row {row}: expected 5 columns, found {}", rec.len())));
        }
        let v: Vec<f64> = rec.iter().map(|f| parse_f64(f, row)).collect::<Result<_>>()?;
        axis.push(v[0]);
        samples.push(Quaternion::new(v[1], v[2], v[3], v[4]));
    }
    if samples.is_empty() {
        return Err(Error::Format("file has no data rows".into()));
    }
    Sampled::new(recover_grid(&axis)?, samples)
}

/// The uniform grid through `axis`; the step is chosen so that
/// `start + n·step` reproduces the values exactly whenever they were written
/// from a grid.
pub fn recover_grid(axis: &[f64]) -> Result<Grid> {
    let n = axis.len();
    let start = axis[0];
    if n == 1 {
        return Grid::new(start, 1.0, 1);
    }
    let estimate = (axis[n - 1] - start) / (n - 1) as f64;
    if !(estimate > 0.0) {
        return Err(Error::Grid("first column must be strictly increasing".into()));
    }
    for (i, &x) in axis.iter().enumerate() {
        let expected = start + i as f64 * estimate;
        if (x - expected).abs() > SPACING_TOL * estimate {
            return Err(Error::Grid(format!(
                "non-uniform spacing at row {}: {x} deviates from {expected}",
                i + 2
            )));
        }
    }
    // Every `start + i·step` is monotone in `step`, and positive floats order
    // like their bit patterns, so bisect for the smallest step that is not too
    // small for any row. If any step reproduces the column, that one does.
    let too_small = |step: f64| axis.iter().enumerate().any(|(i, &x)| start + i as f64 * step < x);
    let (mut lo, mut hi) = ((estimate * 0.5).to_bits(), (estimate * 2.0).to_bits());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if too_small(f64::from_bits(mid)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let candidate = f64::from_bits(lo);
    let reproduces = axis.iter().enumerate().all(|(i, &x)| start + i as f64 * candidate == x);
    Grid::new(start, if reproduces { candidate } else { estimate }, n)
}

pub fn write_quaternion_csv(writer: impl Write, header: &[&str; 5], data: &Sampled<Quaternion>) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for (i, q) in data.samples().iter().enumerate() {
        let row = [data.grid().at(i), q.w, q.x, q.y, q.z].map(format_f64);
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Signal (`t` header) or spectrum (`w` header) file.
pub fn read_signal(path: &Path) -> Result<Sampled<Quaternion>> {
    read_quaternion_csv(open(path)?, &[SIGNAL_HEADER, SPECTRUM_HEADER])
}

pub fn read_mask(path: &Path) -> Result<Sampled<Quaternion>> {
    read_quaternion_csv(open(path)?, &[MASK_HEADER])
}

pub fn write_signal(path: &Path, data: &Sampled<Quaternion>) -> Result<()> {
    write_quaternion_csv(create(path)?, &SIGNAL_HEADER, data)
}

pub fn write_spectrum(path: &Path, data: &Sampled<Quaternion>) -> Result<()> {
    write_quaternion_csv(create(path)?, &SPECTRUM_HEADER, data)
}

pub fn write_mask(path: &Path, data: &Sampled<Quaternion>) -> Result<()> {
    write_quaternion_csv(create(path)?, &MASK_HEADER, data)
}

pub fn write_report(path: &Path, report: &VerificationReport) -> Result<()> {
    create(path)?.write_all(report.to_key_values().as_bytes())?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<VerificationReport> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text)?;
    VerificationReport::from_key_values(&text)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
