//! CSV and JSON serialization of reports.
//!
//! CSV documents are a table with one row per index followed, after a blank
//! line, by a `key,value` block of scalars. Numbers carry 17 significant
//! digits so every value reads back bitwise identical.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::bench::BenchRecord;
use super::matrix_file::write_text;
use crate::analysis::{extended_reals, ComparativeReport, ReportMeta};
use crate::bounds::BoundCertificate;
use crate::error::{Error, Result};
use crate::gsv::{GsvSpectrum, Method};
use crate::range_finder::{BasisResult, Tolerance};
use crate::matrix::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format '{other}', expected csv or json")),
        }
    }
}

/// A document that can be written as CSV or JSON.
pub trait Report: Serialize + DeserializeOwned + Sized {
    fn to_csv(&self) -> String;
    fn from_csv(text: &str, path: &Path) -> Result<Self>;
}

pub fn render_report<R: Report>(report: &R, format: ReportFormat) -> Result<String> {
    Ok(match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => serde_json::to_string_pretty(report)? + "\n",
    })
}

pub fn write_report<R: Report>(report: &R, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    write_text(path.as_ref(), &render_report(report, format)?)
}

pub fn read_report<R: Report>(path: impl AsRef<Path>, format: ReportFormat) -> Result<R> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match format {
        ReportFormat::Csv => R::from_csv(&text, path),
        ReportFormat::Json => Ok(serde_json::from_str(&text)?),
    }
}

/// Basis-extraction summary emitted by the `extract` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub residual_history: Vec<f64>,
    pub width: usize,
    pub iterations: usize,
    pub converged: bool,
    pub tol: Tolerance,
    pub seed: u64,
}

impl ExtractionReport {
    pub fn from_basis<T: Scalar>(basis: &BasisResult<T>, tol: Tolerance, seed: u64) -> Self {
        Self {
            residual_history: basis.residual_history.clone(),
            width: basis.width(),
            iterations: basis.iterations,
            converged: basis.converged,
            tol,
            seed,
        }
    }
}

fn num(x: f64) -> String {
    match extended_reals::to_text(x) {
        Some(t) => t.to_string(),
        None => format!("{x:.16e}"),
    }
}

fn table(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn scalars(out: &mut String, pairs: &[(&str, String)]) {
    out.push_str("\nkey,value\n");
    for (k, v) in pairs {
        out.push_str(&format!("{k},{v}\n"));
    }
}

fn tol_fields(tol: &Tolerance) -> [(&'static str, String); 2] {
    let kind = match tol {
        Tolerance::Absolute(_) => "absolute",
        Tolerance::Relative(_) => "relative",
    };
    [("tol", num(tol.value())), ("tol_kind", kind.to_string())]
}

/// Parsed CSV document: the table rows and the scalar block.
struct CsvDoc<'a> {
    path: &'a Path,
    rows: Vec<(usize, Vec<&'a str>)>,
    scalars: Vec<(usize, &'a str, &'a str)>,
    end_line: usize,
}

impl<'a> CsvDoc<'a> {
    fn parse(text: &'a str, path: &'a Path, header: &[&str]) -> Result<Self> {
        let err = |line, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (hl, head) = lines.next().ok_or_else(|| err(1, "empty document".into()))?;
        let got: Vec<&str> = head.split(',').collect();
        if got != header {
            return Err(err(hl, format!("expected header '{}'", header.join(","))));
        }
        let mut doc = CsvDoc {
            path,
            rows: Vec::new(),
            scalars: Vec::new(),
            end_line: hl,
        };
        let mut in_scalars = false;
        for (line, l) in lines {
            doc.end_line = line;
            if l.trim().is_empty() {
                in_scalars = true;
                continue;
            }
            let fields: Vec<&str> = l.split(',').collect();
            if in_scalars {
                if l == "key,value" {
                    continue;
                }
                if fields.len() != 2 {
                    return Err(err(line, "scalar rows need exactly two fields".into()));
                }
                doc.scalars.push((line, fields[0], fields[1]));
            } else {
                if fields.len() != header.len() {
                    return Err(err(line, format!("expected {} fields, found {}", header.len(), fields.len())));
                }
                doc.rows.push((line, fields));
            }
        }
        Ok(doc)
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_path_buf(),
            line,
            msg: msg.into(),
        }
    }

    fn number(&self, line: usize, tok: &str) -> Result<f64> {
        extended_reals::parse(tok).ok_or_else(|| self.err(line, format!("not a number: '{tok}'")))
    }

    fn parsed<F: FromStr>(&self, line: usize, tok: &str) -> Result<F> {
        tok.trim().parse().map_err(|_| self.err(line, format!("cannot parse '{tok}'")))
    }

    fn column(&self, idx: usize) -> Result<Vec<f64>> {
        self.rows.iter().map(|(l, r)| self.number(*l, r[idx])).collect()
    }

    fn scalar(&self, key: &str) -> Result<(usize, &'a str)> {
        self.scalars
            .iter()
            .find(|s| s.1 == key)
            .map(|s| (s.0, s.2))
            .ok_or_else(|| self.err(self.end_line, format!("missing scalar '{key}'")))
    }

    fn scalar_num(&self, key: &str) -> Result<f64> {
        let (l, v) = self.scalar(key)?;
        self.number(l, v)
    }

    fn scalar_parsed<F: FromStr>(&self, key: &str) -> Result<F> {
        let (l, v) = self.scalar(key)?;
        self.parsed(l, v)
    }

    fn tolerance(&self) -> Result<Tolerance> {
        let v = self.scalar_num("tol")?;
        let (l, kind) = self.scalar("tol_kind")?;
        match kind {
            "absolute" => Ok(Tolerance::Absolute(v)),
            "relative" => Ok(Tolerance::Relative(v)),
            other => Err(self.err(l, format!("unknown tolerance kind '{other}'"))),
        }
    }

    fn check_index(&self) -> Result<()> {
        for (k, (l, r)) in self.rows.iter().enumerate() {
            if self.parsed::<usize>(*l, r[0])? != k + 1 {
                return Err(self.err(*l, format!("expected index {}", k + 1)));
            }
        }
        Ok(())
    }
}

const REPORT_HEADER: [&str; 7] = ["l", "alpha", "beta", "rho", "theta", "p1", "p2"];

impl Report for ComparativeReport {
    fn to_csv(&self) -> String {
        let s = &self.spectrum;
        let rows = (0..self.n()).map(|i| {
            vec![
                (i + 1).to_string(),
                num(s.alphas()[i]),
                num(s.betas()[i]),
                num(self.rho[i]),
                num(self.theta[i]),
                num(self.p1[i]),
                num(self.p2[i]),
            ]
        });
        let mut out = table(&REPORT_HEADER, rows);
        let [tol, kind] = tol_fields(&self.meta.tol);
        scalars(
            &mut out,
            &[
                ("d1", num(self.d1)),
                ("d2", num(self.d2)),
                ("r", s.r().to_string()),
                ("s", s.s().to_string()),
                ("seed", self.meta.seed.to_string()),
                tol,
                kind,
                ("method", self.meta.method.to_string()),
                ("classify_tol", num(self.meta.classify_tol)),
            ],
        );
        out
    }

    fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let doc = CsvDoc::parse(text, path, &REPORT_HEADER)?;
        doc.check_index()?;
        let spectrum = GsvSpectrum::from_parts(
            doc.column(1)?,
            doc.column(2)?,
            doc.scalar_parsed("r")?,
            doc.scalar_parsed("s")?,
        )?;
        Ok(ComparativeReport {
            spectrum,
            rho: doc.column(3)?,
            theta: doc.column(4)?,
            p1: doc.column(5)?,
            p2: doc.column(6)?,
            d1: doc.scalar_num("d1")?,
            d2: doc.scalar_num("d2")?,
            meta: ReportMeta {
                method: doc.scalar_parsed::<Method>("method")?,
                seed: doc.scalar_parsed("seed")?,
                tol: doc.tolerance()?,
                classify_tol: doc.scalar_num("classify_tol")?,
            },
        })
    }
}

const SPECTRUM_HEADER: [&str; 3] = ["l", "alpha", "beta"];

impl Report for GsvSpectrum {
    fn to_csv(&self) -> String {
        let rows = (0..self.n()).map(|i| vec![(i + 1).to_string(), num(self.alphas()[i]), num(self.betas()[i])]);
        let mut out = table(&SPECTRUM_HEADER, rows);
        scalars(&mut out, &[("r", self.r().to_string()), ("s", self.s().to_string())]);
        out
    }

    fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let doc = CsvDoc::parse(text, path, &SPECTRUM_HEADER)?;
        doc.check_index()?;
        GsvSpectrum::from_parts(doc.column(1)?, doc.column(2)?, doc.scalar_parsed("r")?, doc.scalar_parsed("s")?)
    }
}

const CERT_HEADER: [&str; 3] = ["l", "p1_bound", "p2_bound"];

impl Report for BoundCertificate {
    fn to_csv(&self) -> String {
        let rows = (0..self.p1_bounds.len())
            .map(|i| vec![(i + 1).to_string(), num(self.p1_bounds[i]), num(self.p2_bounds[i])]);
        let mut out = table(&CERT_HEADER, rows);
        scalars(
            &mut out,
            &[
                ("eta", self.eta.map_or("none".to_string(), num)),
                ("e_script", num(self.e_script)),
                ("theta_bound", num(self.theta_bound)),
                ("d1_bound", num(self.d1_bound)),
                ("d2_bound", num(self.d2_bound)),
                ("vacuous", self.vacuous.to_string()),
            ],
        );
        out
    }

    fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let doc = CsvDoc::parse(text, path, &CERT_HEADER)?;
        doc.check_index()?;
        let eta = match doc.scalar("eta")? {
            (_, "none") => None,
            (l, v) => Some(doc.number(l, v)?),
        };
        Ok(BoundCertificate {
            eta,
            e_script: doc.scalar_num("e_script")?,
            theta_bound: doc.scalar_num("theta_bound")?,
            p1_bounds: doc.column(1)?,
            p2_bounds: doc.column(2)?,
            d1_bound: doc.scalar_num("d1_bound")?,
            d2_bound: doc.scalar_num("d2_bound")?,
            vacuous: doc.scalar_parsed("vacuous")?,
        })
    }
}

const BENCH_HEADER: [&str; 12] = [
    "method",
    "rep",
    "seed",
    "seconds",
    "spectrum_error",
    "residual1",
    "residual2",
    "m",
    "p",
    "n",
    "l1",
    "l2",
];

impl Report for Vec<BenchRecord> {
    fn to_csv(&self) -> String {
        let rows = self.iter().map(|r| {
            vec![
                r.method.to_string(),
                r.rep.to_string(),
                r.seed.to_string(),
                num(r.seconds),
                r.spectrum_error.map_or(String::new(), num),
                num(r.residuals.0),
                num(r.residuals.1),
                r.m.to_string(),
                r.p.to_string(),
                r.n.to_string(),
                r.l1.to_string(),
                r.l2.to_string(),
            ]
        });
        table(&BENCH_HEADER, rows)
    }

    fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let doc = CsvDoc::parse(text, path, &BENCH_HEADER)?;
        doc.rows
            .iter()
            .map(|(l, r)| {
                let l = *l;
                Ok(BenchRecord {
                    method: doc.parsed(l, r[0])?,
                    rep: doc.parsed(l, r[1])?,
                    seed: doc.parsed(l, r[2])?,
                    seconds: doc.number(l, r[3])?,
                    spectrum_error: if r[4].is_empty() { None } else { Some(doc.number(l, r[4])?) },
                    residuals: (doc.number(l, r[5])?, doc.number(l, r[6])?),
                    m: doc.parsed(l, r[7])?,
                    p: doc.parsed(l, r[8])?,
                    n: doc.parsed(l, r[9])?,
                    l1: doc.parsed(l, r[10])?,
                    l2: doc.parsed(l, r[11])?,
                })
            })
            .collect()
    }
}

const EXTRACT_HEADER: [&str; 2] = ["iteration", "residual"];

impl Report for ExtractionReport {
    fn to_csv(&self) -> String {
        let rows = self
            .residual_history
            .iter()
            .enumerate()
            .map(|(i, r)| vec![i.to_string(), num(*r)]);
        let mut out = table(&EXTRACT_HEADER, rows);
        let [tol, kind] = tol_fields(&self.tol);
        scalars(
            &mut out,
            &[
                ("width", self.width.to_string()),
                ("iterations", self.iterations.to_string()),
                ("converged", self.converged.to_string()),
                tol,
                kind,
                ("seed", self.seed.to_string()),
            ],
        );
        out
    }

    fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let doc = CsvDoc::parse(text, path, &EXTRACT_HEADER)?;
        Ok(ExtractionReport {
            residual_history: doc.column(1)?,
            width: doc.scalar_parsed("width")?,
            iterations: doc.scalar_parsed("iterations")?,
            converged: doc.scalar_parsed("converged")?,
            tol: doc.tolerance()?,
            seed: doc.scalar_parsed("seed")?,
        })
    }
}
