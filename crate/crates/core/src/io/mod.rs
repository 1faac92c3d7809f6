//! File formats, run configuration and the benchmark harness.

mod bench;
mod matrix_file;
mod report;

pub use bench::{bench_pair, median_seconds, run_bench, BenchRecord, InputSource, RunConfig};
pub use matrix_file::{parse_matrix, read_matrix, write_matrix, write_matrix_csv, AnyMatrix, AnyPair};
pub use report::{read_report, render_report, write_report, ExtractionReport, Report, ReportFormat};
