//! Potential CSV, scattering-data JSON and recovered-potential CSV.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::forward::ScatteringData;
use crate::riemann::RecoveredPotential;
use crate::volterra::{SampledPotential, Support};

/// Parses `x,q` rows (optional header, ascending `x`) into raw columns.
pub fn parse_potential_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(text.as_bytes());
    let (mut xs, mut qs) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| Error::Parse { line: e.position().map_or(line, |p| p.line() as usize), detail: e.to_string() })?;
        if rec.len() != 2 {
            return Err(Error::Parse { line: rec.position().map_or(line, |p| p.line() as usize), detail: format!("expected 2 fields, found {}", rec.len()) });
        }
        let line = rec.position().map_or(line, |p| p.line() as usize);
        let parse = |s: &str| s.parse::<f64>();
        match (parse(&rec[0]), parse(&rec[1])) {
            (Ok(x), Ok(q)) if x.is_finite() && q.is_finite() => {
                xs.push(x);
                qs.push(q);
            }
            _ if line == 1 && xs.is_empty() => continue,
            _ => return Err(Error::Parse { line, detail: format!("cannot read `{},{}` as numbers", &rec[0], &rec[1]) }),
        }
    }
    if xs.len() < 2 {
        return Err(Error::Parse { line: xs.len() + 1, detail: "need at least two rows".into() });
    }
    for (i, w) in xs.windows(2).enumerate() {
        if !(w[1] > w[0]) {
            return Err(Error::Parse { line: i + 2, detail: "x values must be strictly increasing".into() });
        }
    }
    Ok((xs, qs))
}

/// Reads a potential CSV and resamples it onto `n + 1` uniform nodes.
pub fn read_potential(path: &Path, n: usize, a: f64, support: Support) -> Result<SampledPotential> {
    let (x, q) = parse_potential_csv(&fs::read_to_string(path)?)?;
    SampledPotential::from_scattered(&x, &q, n, a, support)
}

pub fn write_potential(path: &Path, q: &SampledPotential) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
    w.write_record(["x", "q"]).map_err(csv_io)?;
    for (x, v) in q.grid.iter().zip(&q.values) {
        w.write_record([x.to_string(), v.to_string()]).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_data(path: &Path) -> Result<ScatteringData> {
    ScatteringData::from_json(&fs::read_to_string(path)?)
}

pub fn write_data(path: &Path, data: &ScatteringData) -> Result<()> {
    fs::write(path, data.to_json()?)?;
    Ok(())
}

/// Writes `x, q, P, q_imag` and the per-point solver diagnostics.
pub fn write_recovered(path: &Path, rec: &RecoveredPotential) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
    w.write_record(["x", "q", "p_re", "p_im", "q_imag", "residual", "pivot_ratio", "spread", "winding"]).map_err(csv_io)?;
    for (i, d) in rec.diagnostics.iter().enumerate() {
        w.write_record([
            rec.x[i].to_string(),
            rec.q[i].to_string(),
            rec.p[i].re.to_string(),
            rec.p[i].im.to_string(),
            rec.q_imag[i].to_string(),
            d.residual.to_string(),
            d.pivot_ratio.to_string(),
            d.spread.to_string(),
            d.winding.to_string(),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}
