//! CSV formats: numeric matrices with an `x1..xd` header and single-column
//! response files. Comma delimiter, `.` decimal point, scientific notation
//! accepted, LF line endings on output.

use std::fmt::Write as _;
use std::path::Path;

use tessel_core::PointSet;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("{path}, line {line}: expected {expected} columns, found {found}")]
    ColumnCount { path: String, line: u64, expected: usize, found: usize },
    #[error("{path}, line {line}, column {column}: not a number: {value:?}")]
    NotANumber { path: String, line: u64, column: usize, value: String },
    #[error("{path}: empty file (a header row is required)")]
    Empty { path: String },
    #[error("{path}: no data rows")]
    NoRows { path: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Reads a numeric matrix with a mandatory header row; the column count is
/// taken from the header.
pub fn read_matrix_csv(path: &Path) -> Result<PointSet, IoError> {
    let p = display(path);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => IoError::Read {
                path: p.clone(),
                source: std::io::Error::other(e.to_string()),
            },
            _ => IoError::Csv { path: p.clone(), source: e },
        })?;
    let headers = reader
        .headers()
        .map_err(|e| IoError::Csv { path: p.clone(), source: e })?
        .clone();
    let dim = headers.len();
    if dim == 0 {
        return Err(IoError::Empty { path: p });
    }
    let mut data = Vec::new();
    let mut rows = 0usize;
    for result in reader.records() {
        let record = result.map_err(|e| IoError::Csv { path: p.clone(), source: e })?;
        let line = record.position().map_or(0, |pos| pos.line());
        if record.len() == 1 && record[0].is_empty() {
            continue; // trailing blank line
        }
        if record.len() != dim {
            return Err(IoError::ColumnCount {
                path: p,
                line,
                expected: dim,
                found: record.len(),
            });
        }
        for (column, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| IoError::NotANumber {
                path: p.clone(),
                line,
                column: column + 1,
                value: field.to_string(),
            })?;
            data.push(v);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(IoError::NoRows { path: p });
    }
    PointSet::new(data, dim).map_err(|e| IoError::Invalid { path: p, message: e.to_string() })
}

/// Reads a single-column response file.
pub fn read_column_csv(path: &Path) -> Result<Vec<f64>, IoError> {
    let m = read_matrix_csv(path)?;
    if m.dim() != 1 {
        return Err(IoError::Invalid {
            path: display(path),
            message: format!("expected a single column, found {}", m.dim()),
        });
    }
    Ok(m.rows().map(|r| r[0]).collect())
}

/// Formats a matrix as CSV with an `x1..xd` header. Values use the shortest
/// representation that round-trips exactly.
pub fn matrix_to_csv(points: &PointSet) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=points.dim()).map(|j| format!("x{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in points.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{v}");
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(path: &Path, points: &PointSet) -> Result<(), IoError> {
    std::fs::write(path, matrix_to_csv(points))
        .map_err(|e| IoError::Write { path: display(path), source: e })
}

/// Writes a single-column CSV with the given header name.
pub fn write_column_csv(path: &Path, name: &str, values: &[f64]) -> Result<(), IoError> {
    let mut out = String::new();
    out.push_str(name);
    out.push('\n');
    for v in values {
        let _ = writeln!(out, "{v}");
    }
    std::fs::write(path, out).map_err(|e| IoError::Write { path: display(path), source: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tessel_core::rng::Rng;

    fn tmp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("tessel-io-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn round_trip_is_exact() {
        let mut rng = Rng::new(5);
        let data: Vec<f64> = (0..60).map(|_| (rng.next_f64() - 0.5) * 1e3).collect();
        let pts = PointSet::new(data, 3).unwrap();
        let path = tmp("round_trip.csv");
        write_matrix_csv(&path, &pts).unwrap();
        let back = read_matrix_csv(&path).unwrap();
        assert_eq!(back.dim(), 3);
        for (a, b) in pts.rows().zip(back.rows()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn scientific_notation_accepted() {
        let path = tmp("sci.csv");
        std::fs::write(&path, "x1,x2\n1e-3,2.5E+2\n-1.25e0,0\n").unwrap();
        let m = read_matrix_csv(&path).unwrap();
        assert_eq!(m.row(0), &[1e-3, 250.0]);
        assert_eq!(m.row(1), &[-1.25, 0.0]);
    }

    #[test]
    fn column_count_error_reports_line() {
        let path = tmp("badcols.csv");
        std::fs::write(&path, "x1,x2\n0.1,0.2\n0.3\n").unwrap();
        match read_matrix_csv(&path) {
            Err(IoError::ColumnCount { line, expected, found, .. }) => {
                assert_eq!((line, expected, found), (3, 2, 1));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn non_numeric_error_reports_line_and_column() {
        let path = tmp("badnum.csv");
        std::fs::write(&path, "x1,x2\n0.1,oops\n").unwrap();
        match read_matrix_csv(&path) {
            Err(IoError::NotANumber { line, column, value, .. }) => {
                assert_eq!((line, column), (2, 2));
                assert_eq!(value, "oops");
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_and_headerless_files_error() {
        let path = tmp("nodata.csv");
        std::fs::write(&path, "x1,x2\n").unwrap();
        assert!(matches!(read_matrix_csv(&path), Err(IoError::NoRows { .. })));
    }

    #[test]
    fn column_reader_rejects_matrices() {
        let path = tmp("notcol.csv");
        std::fs::write(&path, "x1,x2\n0.0,1.0\n").unwrap();
        assert!(matches!(read_column_csv(&path), Err(IoError::Invalid { .. })));
    }
}
