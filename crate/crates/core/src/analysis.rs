//! Comparative quantities derived from a generalized singular spectrum:
//! relative significance, antisymmetric angular distance, generalized
//! fractions of eigenexpression and their normalized Shannon entropy.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gsv::{compute_gsv_detailed, GmpPair, GsvOptions, GsvSpectrum, Method};
use crate::matrix::Scalar;
use crate::range_finder::Tolerance;

/// How a report was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub method: Method,
    pub seed: u64,
    pub tol: Tolerance,
    pub classify_tol: f64,
}

impl ReportMeta {
    pub fn from_options(opts: &GsvOptions) -> Self {
        Self {
            method: opts.method,
            seed: opts.extraction.seed,
            tol: opts.extraction.tol,
            classify_tol: opts.classify_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparativeReport {
    pub spectrum: GsvSpectrum,
    /// `αₗ/βₗ`, `+∞` where `βₗ = 0`.
    #[serde(with = "extended_reals")]
    pub rho: Vec<f64>,
    pub theta: Vec<f64>,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub d1: f64,
    pub d2: f64,
    pub meta: ReportMeta,
}

impl ComparativeReport {
    pub fn from_spectrum(spectrum: GsvSpectrum, meta: ReportMeta) -> Result<Self> {
        let rho = relative_significance(&spectrum);
        let theta = angular_distances(&spectrum);
        let (p1, p2) = eigenexpression_fractions(&spectrum)?;
        let d1 = shannon_entropy(&p1)?;
        let d2 = shannon_entropy(&p2)?;
        Ok(Self {
            spectrum,
            rho,
            theta,
            p1,
            p2,
            d1,
            d2,
            meta,
        })
    }

    pub fn n(&self) -> usize {
        self.spectrum.n()
    }
}

/// Runs the GSV computation and derives every comparative quantity.
pub fn compare<T: Scalar>(pair: &GmpPair<T>, opts: &GsvOptions) -> Result<ComparativeReport> {
    let run = compute_gsv_detailed(pair, opts)?;
    ComparativeReport::from_spectrum(run.spectrum, ReportMeta::from_options(opts))
}

/// `ρₗ = αₗ/βₗ`, with `+∞` for the `β = 0` block.
pub fn relative_significance(spectrum: &GsvSpectrum) -> Vec<f64> {
    spectrum
        .alphas()
        .iter()
        .zip(spectrum.betas())
        .map(|(&a, &b)| if b == 0.0 { f64::INFINITY } else { a / b })
        .collect()
}

/// `ϑₗ = arctan(αₗ/βₗ) - π/4` through `atan2`, so `β = 0` gives exactly
/// `π/4` and `α = 0` exactly `-π/4`.
pub fn angular_distances(spectrum: &GsvSpectrum) -> Vec<f64> {
    spectrum
        .alphas()
        .iter()
        .zip(spectrum.betas())
        .map(|(&a, &b)| {
            if b == 0.0 {
                FRAC_PI_4
            } else if a == 0.0 {
                -FRAC_PI_4
            } else {
                a.atan2(b) - FRAC_PI_4
            }
        })
        .collect()
}

/// `P₁ = α²/Σα²`, `P₂ = β²/Σβ²`.
pub fn eigenexpression_fractions(spectrum: &GsvSpectrum) -> Result<(Vec<f64>, Vec<f64>)> {
    let frac = |x: &[f64], name: &str| {
        let total: f64 = x.iter().map(|v| v * v).sum();
        if total <= 0.0 {
            return Err(Error::DegenerateSpectrum(format!("all {name} are zero")));
        }
        Ok(x.iter().map(|v| v * v / total).collect::<Vec<_>>())
    };
    Ok((frac(spectrum.alphas(), "alphas")?, frac(spectrum.betas(), "betas")?))
}

/// `-Σ pₖ log pₖ / log n` with `0 log 0 = 0`, clamped to `[0, 1]`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let n = p.len();
    if n < 2 {
        return Err(Error::DegenerateSpectrum(format!(
            "entropy normalization needs at least two entries, got {n}"
        )));
    }
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::DegenerateSpectrum("probabilities must be finite and nonnegative".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::DegenerateSpectrum(format!("probabilities sum to {total}, not 1")));
    }
    let h: f64 = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum();
    Ok((h / (n as f64).ln()).clamp(0.0, 1.0))
}

/// Serializes `±∞` as the strings `"inf"` / `"-inf"` since JSON has no
/// infinities.
pub(crate) mod extended_reals {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn to_text(x: f64) -> Option<&'static str> {
        if x == f64::INFINITY {
            Some("inf")
        } else if x == f64::NEG_INFINITY {
            Some("-inf")
        } else if x.is_nan() {
            Some("nan")
        } else {
            None
        }
    }

    pub fn parse(s: &str) -> Option<f64> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" => Some(f64::INFINITY),
            "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            other => other.parse().ok(),
        }
    }

    pub fn serialize<S: Serializer>(v: &[f64], ser: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = v
            .iter()
            .map(|&x| match to_text(x) {
                Some(t) => Repr::Text(t.to_string()),
                None => Repr::Num(x),
            })
            .collect();
        reprs.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<f64>, D::Error> {
        Vec::<Repr>::deserialize(de)?
            .into_iter()
            .map(|r| match r {
                Repr::Num(x) => Ok(x),
                Repr::Text(t) => parse(&t).ok_or_else(|| D::Error::custom(format!("not a number: {t}"))),
            })
            .collect()
    }
}
