//! Run configuration and the timing harness comparing the randomized and
//! direct methods.

use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix_file::{read_matrix, AnyPair};
use super::report::ReportFormat;
use crate::error::{Error, Result};
use crate::gsv::{compute_gsv_detailed, GmpPair, GsvOptions, Method};
use crate::matrix::{derive_seed, Field, Scalar};
use crate::synth::{synth_gmp, SynthSpec};

/// Where the matrix pair comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputSource {
    Files { g1: PathBuf, g2: PathBuf },
    Synth(SynthSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: InputSource,
    pub options: GsvOptions,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
    pub reps: usize,
}

impl RunConfig {
    /// Builds a configuration from optional file and synthetic inputs;
    /// exactly one of them must be given.
    pub fn new(
        files: Option<(PathBuf, PathBuf)>,
        synth: Option<SynthSpec>,
        options: GsvOptions,
        format: ReportFormat,
        reps: usize,
    ) -> Result<Self> {
        let input = match (files, synth) {
            (Some((g1, g2)), None) => InputSource::Files { g1, g2 },
            (None, Some(spec)) => InputSource::Synth(spec),
            (Some(_), Some(_)) => {
                return Err(Error::InvalidConfig("give either input files or a synthetic spec, not both".into()))
            }
            (None, None) => return Err(Error::InvalidConfig("no input: give two matrix files or a synthetic spec".into())),
        };
        let cfg = Self {
            input,
            options,
            output: None,
            format,
            reps,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_output(mut self, output: Option<PathBuf>) -> Self {
        self.output = output;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
        }
        Ok(())
    }

    /// Reads or generates the pair.
    pub fn load_pair(&self) -> Result<AnyPair> {
        match &self.input {
            InputSource::Files { g1, g2 } => AnyPair::from_matrices(read_matrix(g1)?, read_matrix(g2)?),
            InputSource::Synth(spec) => Ok(match spec.field {
                Field::Real => AnyPair::Real(synth_gmp::<f64>(spec)?.pair),
                Field::Complex => AnyPair::Complex(synth_gmp::<Complex64>(spec)?.pair),
            }),
        }
    }
}

/// One timed run of one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: Method,
    pub rep: usize,
    pub seed: u64,
    pub seconds: f64,
    /// Largest elementwise deviation from the direct spectrum of the same
    /// repetition.
    pub spectrum_error: Option<f64>,
    /// Final basis residuals; zero for the direct method.
    pub residuals: (f64, f64),
    pub m: usize,
    pub p: usize,
    pub n: usize,
    pub l1: usize,
    pub l2: usize,
}

/// Times every method in `methods` `reps` times on the configured pair.
pub fn run_bench(cfg: &RunConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let methods = [Method::Randomized, Method::Direct];
    match cfg.load_pair()? {
        AnyPair::Real(p) => bench_pair(&p, &cfg.options, cfg.reps, &methods),
        AnyPair::Complex(p) => bench_pair(&p, &cfg.options, cfg.reps, &methods),
    }
}

/// Runs each method on identical input once per repetition, with the
/// extraction seed of repetition `i` derived from the base seed.
pub fn bench_pair<T: Scalar>(
    pair: &GmpPair<T>,
    opts: &GsvOptions,
    reps: usize,
    methods: &[Method],
) -> Result<Vec<BenchRecord>> {
    if reps == 0 {
        return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
    }
    let (m, p, n) = pair.dims();
    let mut records = Vec::with_capacity(reps * methods.len());
    for rep in 0..reps {
        let seed = derive_seed(opts.extraction.seed, rep as u64);
        let mut spectra = Vec::with_capacity(methods.len());
        for &method in methods {
            let mut o = opts.clone().with_method(method);
            o.extraction.seed = seed;
            let start = Instant::now();
            let run = compute_gsv_detailed(pair, &o)?;
            let seconds = start.elapsed().as_secs_f64();
            records.push(BenchRecord {
                method,
                rep,
                seed,
                seconds,
                spectrum_error: None,
                residuals: run.basis_residuals(),
                m,
                p,
                n,
                l1: run.l1,
                l2: run.l2,
            });
            spectra.push(run.spectrum);
        }
        if let Some(d) = methods.iter().position(|&x| x == Method::Direct) {
            let first = records.len() - methods.len();
            for (k, s) in spectra.iter().enumerate() {
                records[first + k].spectrum_error = Some(s.max_deviation(&spectra[d]));
            }
        }
    }
    Ok(records)
}

/// Median wall time of the records for `method`, if any.
pub fn median_seconds(records: &[BenchRecord], method: Method) -> Option<f64> {
    let mut t: Vec<f64> = records
        .iter()
        .filter(|r| r.method == method)
        .map(|r| r.seconds)
        .collect();
    if t.is_empty() {
        return None;
    }
    t.sort_by(f64::total_cmp);
    let k = t.len();
    Some(if k % 2 == 1 { t[k / 2] } else { 0.5 * (t[k / 2 - 1] + t[k / 2]) })
}
