//! Matrix and mask CSV files: one line per row, comma separated, an empty cell
//! marks a missing reading.

use std::io::{Read, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::mask::{DataMatrix, ObservationMask};

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixCsv {
    /// Missing cells hold `NaN`.
    pub values: DataMatrix,
    pub present: ObservationMask,
}

fn read_rows(reader: impl Read) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            line: line + 1,
            message: e.to_string(),
        })?;
        rows.push(rec.iter().map(str::to_owned).collect());
    }
    let width = rows.first().map_or(0, |r: &Vec<String>| r.len());
    if rows.is_empty() || width == 0 {
        return Err(Error::NoData("empty CSV".into()));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::Parse {
            line: bad + 1,
            message: format!("expected {width} fields, found {}", rows[bad].len()),
        });
    }
    Ok(rows)
}

pub fn read_matrix_csv(reader: impl Read) -> Result<MatrixCsv> {
    let rows = read_rows(reader)?;
    let (n, t) = (rows.len(), rows[0].len());
    let mut values = DMatrix::from_element(n, t, f64::NAN);
    let mut present = ObservationMask::empty(n, t);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("`{cell}` is not a number"),
            })?;
            if v.is_nan() {
                continue;
            }
            values[(i, j)] = v;
            present.set(i, j, true);
        }
    }
    Ok(MatrixCsv { values, present })
}

/// Writes `x`; cells that are unobserved in `present` (or `NaN`) are left empty.
pub fn write_matrix_csv(mut writer: impl Write, x: &DataMatrix, present: Option<&ObservationMask>) -> Result<()> {
    let mut line = String::new();
    for i in 0..x.nrows() {
        line.clear();
        for j in 0..x.ncols() {
            if j > 0 {
                line.push(',');
            }
            let v = x[(i, j)];
            if present.is_none_or(|m| m.is_observed(i, j)) && !v.is_nan() {
                line.push_str(&v.to_string());
            }
        }
        if line.is_empty() {
            // A blank line would be skipped on reading; quote the lone empty cell.
            line.push_str("\"\"");
        }
        line.push('\n');
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn read_mask_csv(reader: impl Read) -> Result<ObservationMask> {
    let rows = read_rows(reader)?;
    let (n, t) = (rows.len(), rows[0].len());
    let mut mask = ObservationMask::empty(n, t);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            match cell.as_str() {
                "1" => mask.set(i, j, true),
                "0" => {}
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("mask cell `{other}` is not 0 or 1"),
                    })
                }
            }
        }
    }
    Ok(mask)
}

pub fn write_mask_csv(mut writer: impl Write, mask: &ObservationMask) -> Result<()> {
    for i in 0..mask.rows() {
        let line: Vec<&str> = (0..mask.cols())
            .map(|j| if mask.is_observed(i, j) { "1" } else { "0" })
            .collect();
        writeln!(writer, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_cells_round_trip() {
        let text = "1.5,,3\n-2,0.125,\n";
        let parsed = read_matrix_csv(text.as_bytes()).unwrap();
        assert_eq!(parsed.present.count_observed(), 4);
        assert!(parsed.values[(0, 1)].is_nan());
        let mut out = Vec::new();
        write_matrix_csv(&mut out, &parsed.values, Some(&parsed.present)).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "1.5,,3\n-2,0.125,\n");
    }

    #[test]
    fn mask_round_trip() {
        let mask = ObservationMask::from_fn(2, 3, |i, j| (i + j) % 2 == 0);
        let mut out = Vec::new();
        write_mask_csv(&mut out, &mask).unwrap();
        assert_eq!(std::str::from_utf8(&out).unwrap(), "1,0,1\n0,1,0\n");
        assert_eq!(read_mask_csv(out.as_slice()).unwrap(), mask);
    }

    #[test]
    fn malformed_input() {
        assert!(read_matrix_csv("".as_bytes()).is_err());
        assert!(read_matrix_csv("1,2\n3\n".as_bytes()).is_err());
        assert!(read_matrix_csv("1,x\n".as_bytes()).is_err());
        assert!(read_mask_csv("1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn floats_round_trip_exactly() {
        let x = DMatrix::from_row_slice(1, 3, &[0.1 + 0.2, -1e-300, 12345.678901234567]);
        let mut out = Vec::new();
        write_matrix_csv(&mut out, &x, None).unwrap();
        assert_eq!(read_matrix_csv(out.as_slice()).unwrap().values, x);
    }
}
