//! Matrix Market (array and coordinate) and headerless CSV matrices.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gsv::GmpPair;
use crate::matrix::{ComplexMatrix, DenseMatrix, Field, RealMatrix, Scalar};

/// A matrix whose field is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Real(RealMatrix),
    Complex(ComplexMatrix),
}

impl AnyMatrix {
    pub fn field(&self) -> Field {
        match self {
            AnyMatrix::Real(_) => Field::Real,
            AnyMatrix::Complex(_) => Field::Complex,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Real(m) => m.shape(),
            AnyMatrix::Complex(m) => m.shape(),
        }
    }

    pub fn into_complex(self) -> ComplexMatrix {
        match self {
            AnyMatrix::Real(m) => m.to_complex(),
            AnyMatrix::Complex(m) => m,
        }
    }
}

/// A matrix pair whose field is only known at run time.
#[derive(Debug, Clone)]
pub enum AnyPair {
    Real(GmpPair<f64>),
    Complex(GmpPair<Complex64>),
}

impl AnyPair {
    /// Validates the pair, promoting a real matrix to complex when the
    /// other one is complex.
    pub fn from_matrices(g1: AnyMatrix, g2: AnyMatrix) -> Result<Self> {
        match (g1, g2) {
            (AnyMatrix::Real(a), AnyMatrix::Real(b)) => Ok(AnyPair::Real(GmpPair::new(a, b)?)),
            (a, b) => Ok(AnyPair::Complex(GmpPair::new(a.into_complex(), b.into_complex())?)),
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        match self {
            AnyPair::Real(p) => p.dims(),
            AnyPair::Complex(p) => p.dims(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            AnyPair::Real(_) => Field::Real,
            AnyPair::Complex(_) => Field::Complex,
        }
    }
}

/// Reads a Matrix Market file (detected by its `%%MatrixMarket` banner) or
/// a headerless CSV of real numbers. Coordinate files are densified.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<AnyMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_matrix(&text, path)
}

/// Parses file contents; `path` is only used in error messages.
pub fn parse_matrix(text: &str, path: &Path) -> Result<AnyMatrix> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.trim_start().starts_with("%%MatrixMarket") {
        parse_matrix_market(text, path)
    } else {
        parse_csv(text, path).map(AnyMatrix::Real)
    }
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: &str, path: &Path, line: usize) -> Result<f64> {
    let x: f64 = tok
        .trim()
        .parse()
        .map_err(|_| parse_error(path, line, format!("not a number: '{}'", tok.trim())))?;
    if !x.is_finite() {
        return Err(parse_error(path, line, format!("non-finite value '{}'", tok.trim())));
    }
    Ok(x)
}

fn parse_csv(text: &str, path: &Path) -> Result<RealMatrix> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|t| parse_number(t, path, idx + 1))
            .collect::<Result<_>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(parse_error(
                    path,
                    idx + 1,
                    format!("expected {c} values, found {}", row.len()),
                ))
            }
            _ => {}
        }
        data.extend(row);
        rows += 1;
    }
    let cols = cols.ok_or_else(|| parse_error(path, 1, "no data"))?;
    RealMatrix::from_row_slice(rows, cols, &data)
}

#[derive(Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Skew,
    Hermitian,
}

fn parse_matrix_market(text: &str, path: &Path) -> Result<AnyMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (banner_line, banner) = lines
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_error(path, 1, "empty file"))?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[1] != "matrix" {
        return Err(parse_error(path, banner_line, "malformed Matrix Market banner"));
    }
    let coordinate = match words[2].as_str() {
        "array" => false,
        "coordinate" => true,
        other => return Err(parse_error(path, banner_line, format!("unsupported format '{other}'"))),
    };
    let (complex, pattern) = match words[3].as_str() {
        "real" | "integer" | "double" => (false, false),
        "complex" => (true, false),
        "pattern" if coordinate => (false, true),
        other => return Err(parse_error(path, banner_line, format!("unsupported field '{other}'"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::Skew,
        "hermitian" if complex => Symmetry::Hermitian,
        other => return Err(parse_error(path, banner_line, format!("unsupported symmetry '{other}'"))),
    };

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_error(path, banner_line, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_error(path, size_line, format!("bad size '{t}'")))
        })
        .collect::<Result<_>>()?;
    let expected = if coordinate { 3 } else { 2 };
    if dims.len() != expected {
        return Err(parse_error(path, size_line, format!("size line needs {expected} integers")));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if symmetry != Symmetry::General && rows != cols {
        return Err(parse_error(path, size_line, "symmetric storage needs a square matrix"));
    }
    let width = if complex { 2 } else { 1 };

    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    let mut put = |i: usize, j: usize, v: Complex64| {
        a[(i, j)] += v;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => a[(j, i)] += v,
                Symmetry::Skew => a[(j, i)] -= v,
                Symmetry::Hermitian => a[(j, i)] += v.conj(),
            }
        }
    };
    let value = |toks: &[&str], line: usize| -> Result<Complex64> {
        let re = parse_number(toks[0], path, line)?;
        let im = if complex { parse_number(toks[1], path, line)? } else { 0.0 };
        Ok(Complex64::new(re, im))
    };

    if coordinate {
        let nnz = dims[2];
        let mut count = 0;
        for (line, l) in body {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let need = 2 + if pattern { 0 } else { width };
            if toks.len() != need {
                return Err(parse_error(path, line, format!("expected {need} fields, found {}", toks.len())));
            }
            let index = |t: &str, bound: usize| -> Result<usize> {
                let k: usize = t
                    .parse()
                    .map_err(|_| parse_error(path, line, format!("bad index '{t}'")))?;
                if k == 0 || k > bound {
                    return Err(parse_error(path, line, format!("index {k} outside 1..={bound}")));
                }
                Ok(k - 1)
            };
            let (i, j) = (index(toks[0], rows)?, index(toks[1], cols)?);
            let v = if pattern {
                Complex64::new(1.0, 0.0)
            } else {
                value(&toks[2..], line)?
            };
            put(i, j, v);
            count += 1;
        }
        if count != nnz {
            return Err(parse_error(path, size_line, format!("declared {nnz} entries, found {count}")));
        }
    } else {
        let mut slots = Vec::new();
        for j in 0..cols {
            let start = match symmetry {
                Symmetry::General => 0,
                Symmetry::Skew => j + 1,
                _ => j,
            };
            slots.extend((start..rows).map(|i| (i, j)));
        }
        let mut found = 0;
        for (line, l) in body {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != width {
                return Err(parse_error(path, line, format!("expected {width} values, found {}", toks.len())));
            }
            let &(i, j) = slots
                .get(found)
                .ok_or_else(|| parse_error(path, line, "more values than the declared size"))?;
            put(i, j, value(&toks, line)?);
            found += 1;
        }
        if found != slots.len() {
            return Err(parse_error(
                path,
                size_line,
                format!("expected {} values, found {found}", slots.len()),
            ));
        }
    }

    if complex {
        Ok(AnyMatrix::Complex(DenseMatrix::new(a)?))
    } else {
        Ok(AnyMatrix::Real(DenseMatrix::new(a.map(|z| z.re))?))
    }
}

/// Writes a dense `array general` Matrix Market file with 17 significant
/// digits, which reads back bitwise identical.
pub fn write_matrix<T: Scalar>(m: &DenseMatrix<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let field = match T::FIELD {
        Field::Real => "real",
        Field::Complex => "complex",
    };
    let mut out = format!("%%MatrixMarket matrix array {field} general\n{} {}\n", m.rows(), m.cols());
    for x in m.iter() {
        match T::FIELD {
            Field::Real => out.push_str(&format!("{:.16e}\n", x.real())),
            Field::Complex => out.push_str(&format!("{:.16e} {:.16e}\n", x.real(), x.imaginary())),
        }
    }
    write_text(path, &out)
}

/// Writes a real matrix as headerless CSV.
pub fn write_matrix_csv(m: &RealMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{:.16e}", m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_text(path.as_ref(), &out)
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gaussian_matrix;

    fn parse(text: &str) -> Result<AnyMatrix> {
        parse_matrix(text, Path::new("test"))
    }

    #[test]
    fn dense_identity() {
        let m = parse("%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n").unwrap();
        assert_eq!(m, AnyMatrix::Real(RealMatrix::identity(2)));
    }

    #[test]
    fn csv_single_row() {
        let m = parse("3,4\n").unwrap();
        assert_eq!(m, AnyMatrix::Real(RealMatrix::from_row_slice(1, 2, &[3.0, 4.0]).unwrap()));
    }

    #[test]
    fn coordinate_symmetric_is_densified() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 3\n1 1 2.0\n3 1 -1\n2 2 5\n";
        let AnyMatrix::Real(m) = parse(text).unwrap() else { panic!() };
        assert_eq!(m[(0, 2)], -1.0);
        assert_eq!(m[(2, 0)], -1.0);
        assert_eq!(m[(1, 1)], 5.0);
        assert_eq!(m[(2, 2)], 0.0);
    }

    #[test]
    fn coordinate_complex_hermitian() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 0 2\n";
        let AnyMatrix::Complex(m) = parse(text).unwrap() else { panic!() };
        assert_eq!(m[(1, 0)], Complex64::new(0.0, 2.0));
        assert_eq!(m[(0, 1)], Complex64::new(0.0, -2.0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("1,2\n3,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("1,2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse("").is_err());
        assert!(parse("1,inf\n").is_err());
    }

    #[test]
    fn dense_round_trip_is_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let real = gaussian_matrix::<f64>(7, 5, 1).unwrap();
        let p = dir.path().join("r.mtx");
        write_matrix(&real, &p).unwrap();
        assert_eq!(read_matrix(&p).unwrap(), AnyMatrix::Real(real.clone()));

        let z = gaussian_matrix::<Complex64>(4, 6, 2).unwrap();
        let p = dir.path().join("z.mtx");
        write_matrix(&z, &p).unwrap();
        assert_eq!(read_matrix(&p).unwrap(), AnyMatrix::Complex(z));

        let p = dir.path().join("r.csv");
        write_matrix_csv(&real, &p).unwrap();
        assert_eq!(read_matrix(&p).unwrap(), AnyMatrix::Real(real));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = read_matrix("/nonexistent/dir/m.mtx").unwrap_err();
        assert_eq!(err.category(), "io");
    }

    #[test]
    fn mixed_fields_promote() {
        let a = AnyMatrix::Real(RealMatrix::identity(2));
        let b = AnyMatrix::Complex(ComplexMatrix::identity(2));
        let pair = AnyPair::from_matrices(a, b).unwrap();
        assert_eq!(pair.field(), Field::Complex);
        assert_eq!(pair.dims(), (2, 2, 2));
    }
}
