use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use rgsv::bounds::certify_run;
use rgsv::io::{
    render_report, run_bench, write_matrix, AnyPair, ExtractionReport, Report, ReportFormat, RunConfig,
};
use rgsv::synth::{synth_gmp, SynthSpec};
use rgsv::{compare, compute_gsv, extract_basis, Error, ExtractionConfig, Field, GsvOptions, Method, Result, Tolerance};

#[derive(Parser)]
#[command(name = "rgsv", version, about = "Randomized generalized singular values of matrix pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized singular values of a pair
    Gsv(Common),
    /// Full comparative report (rho, theta, P, D)
    Compare(Common),
    /// Randomized basis of one matrix with its residual history
    Extract {
        #[command(flatten)]
        common: Common,
        /// Which matrix of the pair to extract (1 or 2)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Also write the basis as a Matrix Market file
        #[arg(long)]
        basis_out: Option<PathBuf>,
    },
    /// Generate a synthetic pair and its ground-truth spectrum into a directory
    Synth {
        #[command(flatten)]
        common: Common,
    },
    /// Time the randomized and direct methods
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Error certificate for a randomized run
    Bounds(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// First matrix (Matrix Market or CSV)
    #[arg(long, requires = "g2", conflicts_with = "synth")]
    g1: Option<PathBuf>,
    /// Second matrix (Matrix Market or CSV)
    #[arg(long, requires = "g1")]
    g2: Option<PathBuf>,
    /// Generate the pair instead: sizes as M,P,N
    #[arg(long, value_parser = parse_sizes)]
    synth: Option<(usize, usize, usize)>,
    /// Rank fraction for --synth
    #[arg(long, default_value_t = 0.6)]
    rank_frac: f64,
    /// Field for --synth
    #[arg(long, default_value_t = Field::Real)]
    field: Field,
    /// Absolute residual tolerance for basis extraction
    #[arg(long, conflicts_with = "rel_tol")]
    tol: Option<f64>,
    /// Residual tolerance relative to the Frobenius norm
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 100)]
    blocksize: usize,
    #[arg(long, env = "RGSV_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_cols: Option<usize>,
    #[arg(long, default_value_t = Method::Randomized)]
    method: Method,
    #[arg(long, default_value_t = 1e-10)]
    classify_tol: f64,
    #[arg(long, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    /// Output file (a directory for `synth`); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sizes(s: &str) -> std::result::Result<(usize, usize, usize), String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad size '{t}'")))
        .collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [m, p, n] => Ok((m, p, n)),
        _ => Err("expected M,P,N".into()),
    }
}

impl Common {
    fn options(&self) -> GsvOptions {
        let tol = match self.tol {
            Some(t) => Tolerance::Absolute(t),
            None => Tolerance::Relative(self.rel_tol),
        };
        let extraction = ExtractionConfig::default()
            .with_tol(tol)
            .with_blocksize(self.blocksize)
            .with_seed(self.seed)
            .with_max_cols(self.max_cols);
        GsvOptions::default()
            .with_extraction(extraction)
            .with_method(self.method)
            .with_classify_tol(self.classify_tol)
    }

    fn synth_spec(&self) -> Option<SynthSpec> {
        self.synth.map(|(m, p, n)| {
            SynthSpec::new(m, p, n)
                .with_rank_frac(self.rank_frac)
                .with_seed(self.seed)
                .with_field(self.field)
        })
    }

    fn run_config(&self, reps: usize) -> Result<RunConfig> {
        let files = self.g1.clone().zip(self.g2.clone());
        RunConfig::new(files, self.synth_spec(), self.options(), self.format, reps)
            .map(|c| c.with_output(self.out.clone()))
    }

    fn emit<R: Report>(&self, report: &R) -> Result<()> {
        let text = render_report(report, self.format)?;
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

macro_rules! with_pair {
    ($pair:expr, $p:ident => $body:expr) => {
        match $pair {
            AnyPair::Real($p) => $body,
            AnyPair::Complex($p) => $body,
        }
    };
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gsv(c) => {
            let pair = c.run_config(1)?.load_pair()?;
            let spectrum = with_pair!(&pair, p => compute_gsv(p, &c.options()))?;
            c.emit(&spectrum)
        }
        Command::Compare(c) => {
            let pair = c.run_config(1)?.load_pair()?;
            let report = with_pair!(&pair, p => compare(p, &c.options()))?;
            c.emit(&report)
        }
        Command::Bounds(c) => {
            let pair = c.run_config(1)?.load_pair()?;
            let run = with_pair!(&pair, p => certify_run(p, &c.options()))?;
            c.emit(&run.certificate)
        }
        Command::Extract { common: c, which, basis_out } => {
            let pair = c.run_config(1)?.load_pair()?;
            let cfg = c.options().extraction;
            let report = with_pair!(&pair, p => {
                let g = if which == 1 { p.g1() } else { p.g2() };
                let basis = extract_basis(g, &cfg)?;
                if let Some(path) = &basis_out {
                    write_matrix(&basis.q, path)?;
                }
                ExtractionReport::from_basis(&basis, cfg.tol, cfg.seed)
            });
            c.emit(&report)
        }
        Command::Synth { common: c } => {
            let spec = c
                .synth_spec()
                .ok_or_else(|| Error::InvalidConfig("synth needs --synth M,P,N".into()))?;
            let dir = c
                .out
                .clone()
                .ok_or_else(|| Error::InvalidConfig("synth needs --out DIRECTORY".into()))?;
            std::fs::create_dir_all(&dir).map_err(|e| Error::Io {
                path: dir.clone(),
                source: e,
            })?;
            let truth = match spec.field {
                Field::Real => {
                    let r = synth_gmp::<f64>(&spec)?;
                    write_pair(&dir, r.pair.g1(), r.pair.g2())?;
                    r.true_spectrum
                }
                Field::Complex => {
                    let r = synth_gmp::<Complex64>(&spec)?;
                    write_pair(&dir, r.pair.g1(), r.pair.g2())?;
                    r.true_spectrum
                }
            };
            let path = dir.join(format!("truth.{}", c.format));
            rgsv::io::write_report(&truth, path, c.format)
        }
        Command::Bench { common: c, reps } => {
            let records = run_bench(&c.run_config(reps)?)?;
            c.emit(&records)
        }
    }
}

fn write_pair<T: rgsv::matrix::Scalar>(
    dir: &Path,
    g1: &rgsv::DenseMatrix<T>,
    g2: &rgsv::DenseMatrix<T>,
) -> Result<()> {
    write_matrix(g1, dir.join("g1.mtx"))?;
    write_matrix(g2, dir.join("g2.mtx"))
}

fn exit_code(category: &str) -> u8 {
    match category {
        "input" => 2,
        "numerical" => 3,
        "parse" => 4,
        _ => 5,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(exit_code(e.category()))
        }
    }
}
