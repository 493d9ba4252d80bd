use std::path::Path;

use diagnostics::DecaySeries;

use crate::error::HarnessError;

/// Write a series as CSV: header `t,value,label`, rows in time order,
/// 17 significant digits so a read-back reproduces every bit.
pub fn emit_series(series: &DecaySeries, path: &Path) -> Result<(), HarnessError> {
    let mut out = String::from("t,value,label\n");
    for &(t, value) in series.samples() {
        out.push_str(&format!("{:.16e},{:.16e},{}\n", t, value, series.label()));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Read a file written by `emit_series` back into a series.
pub fn read_series(path: &Path) -> Result<DecaySeries, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| {
        HarnessError::Read { path: path.display().to_string(), source }
    })?;
    let malformed = |line: usize| HarnessError::SeriesFormat {
        path: path.display().to_string(),
        line,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "t,value,label")) => {}
        _ => return Err(malformed(1)),
    }
    let mut label = String::new();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let mut parts = line.splitn(3, ',');
        let (t, value, tag) = match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(v), Some(tag)) => (t, v, tag),
            _ => return Err(malformed(idx + 1)),
        };
        let t: f64 = t.parse().map_err(|_| malformed(idx + 1))?;
        let value: f64 = value.parse().map_err(|_| malformed(idx + 1))?;
        if label.is_empty() {
            label = tag.to_string();
        }
        rows.push((t, value));
    }
    Ok(DecaySeries::new(label, rows)?)
}
