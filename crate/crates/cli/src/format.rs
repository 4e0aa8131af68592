//! Locale-independent number formatting and small CSV helpers.

use std::fs::File;
use std::path::Path;

use crate::CliError;

/// Significant digits used for every number written to CSV.
pub const SIG_DIGITS: usize = 12;

/// Formats `x` with [`SIG_DIGITS`] significant digits, fixed notation for
/// moderate magnitudes and scientific notation otherwise. Trailing zeros are
/// trimmed; the decimal separator is always a dot.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
    w.write_record(header).map_err(|e| CliError::io(path, e))?;
    for row in rows {
        w.write_record(row).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Reads the named numeric columns of a CSV file, one vector per column.
/// A missing file is a usage error; a missing column or unreadable value is
/// a data error.
pub fn read_columns(path: &Path, columns: &[&str]) -> Result<Vec<Vec<f64>>, CliError> {
    let file = File::open(path)
        .map_err(|_| CliError::Usage(format!("missing input file {}", path.display())))?;
    let mut r = csv::Reader::from_reader(file);
    let headers = r.headers().map_err(|e| CliError::io(path, e))?.clone();
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| {
            headers
                .iter()
                .position(|h| h.trim() == *c)
                .ok_or_else(|| CliError::Data(format!("{}: no column named {c}", path.display())))
        })
        .collect::<Result<_, _>>()?;
    let mut out = vec![Vec::new(); columns.len()];
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| CliError::io(path, e))?;
        for (col, &i) in out.iter_mut().zip(&idx) {
            let field = rec.get(i).unwrap_or("").trim();
            let v = field.parse::<f64>().map_err(|_| {
                CliError::Data(format!(
                    "{}: line {}: cannot read {field:?} as a number",
                    path.display(),
                    line + 2
                ))
            })?;
            col.push(v);
        }
    }
    Ok(out)
}
