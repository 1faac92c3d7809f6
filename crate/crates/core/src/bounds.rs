//! Error certificates: the expected projection error of a fixed-size
//! sketch, the perturbation measure `𝓔`, and first-order bounds on the
//! comparative quantities.
//!
//! With `G` the stacked pair and `G̃` a perturbation of it,
//! `𝓔 = √2 ‖G̃ - G‖_F min(‖G†‖, ‖G̃†‖)` bounds the root-sum-square change of
//! the GSVs. The bounds on `P` and `D` drop the `o(𝓔)` remainder.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::shannon_entropy;
use crate::error::{Error, Result};
use crate::gsv::{compute_gsv_detailed, GmpPair, GsvOptions, GsvSpectrum, Method};
use crate::matrix::{derive_seed, pseudoinverse_norm, singular_values, DenseMatrix, Scalar};
use crate::range_finder::{extract_basis, residual_norm, ExtractionConfig, Tolerance};

/// Which matrix of the pair a projector bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    First,
    Second,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::First => "first",
            Which::Second => "second",
        })
    }
}

impl FromStr for Which {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "first" | "1" => Ok(Which::First),
            "second" | "2" => Ok(Which::Second),
            other => Err(format!("expected first or second, got '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    /// `σ_max(G₁ᴴG₁ + G₂ᴴG₂)`, when the pair was available.
    pub eta: Option<f64>,
    pub e_script: f64,
    /// `arcsin(min(2𝓔, 1))`.
    pub theta_bound: f64,
    pub p1_bounds: Vec<f64>,
    pub p2_bounds: Vec<f64>,
    pub d1_bound: f64,
    pub d2_bound: f64,
    /// Set when `2𝓔 > 1`, where the angle bound carries no information.
    pub vacuous: bool,
}

/// `σ_max(G₁ᴴG₁ + G₂ᴴG₂)`, the squared largest singular value of the
/// stacked matrix.
pub fn eta<T: Scalar>(pair: &GmpPair<T>) -> Result<f64> {
    let s = singular_values(&pair.stacked())?;
    Ok(s[0] * s[0])
}

/// Upper bound on `E‖(I - QQᴴ)Gᵢ‖_F²` for a Gaussian sketch with exactly
/// `k + oversample` columns:
/// `η (k/(oversample - 1) + 1) Σ_{j>k} φⱼ²` for the first matrix and the
/// same prefactor times the `n - k` smallest `χ²` for the second.
pub fn projector_bound<T: Scalar>(
    pair: &GmpPair<T>,
    spectrum: &GsvSpectrum,
    k: usize,
    oversample: usize,
    which: Which,
) -> Result<f64> {
    let (m, p, n) = pair.dims();
    if spectrum.n() != n {
        return Err(Error::Dimension(format!(
            "spectrum has {} values for a pair with n = {n}",
            spectrum.n()
        )));
    }
    let limit = match which {
        Which::First => m.min(n),
        Which::Second => p.min(n),
    };
    if k < 2 || oversample < 2 || k + oversample > limit {
        return Err(Error::InvalidConfig(format!(
            "need k >= 2, oversample >= 2 and k + oversample <= {limit}, got k = {k}, oversample = {oversample}"
        )));
    }
    let tail: f64 = match which {
        Which::First => spectrum.alphas()[k..].iter().map(|a| a * a).sum(),
        Which::Second => spectrum.betas()[..n - k].iter().map(|b| b * b).sum(),
    };
    let factor = k as f64 / (oversample as f64 - 1.0) + 1.0;
    Ok(eta(pair)? * factor * tail)
}

/// `𝓔 = √2 ‖G̃ - G‖_F min(‖G†‖, ‖G̃†‖)` over the stacked matrices.
pub fn perturbation_bound<T: Scalar>(pair: &GmpPair<T>, pair_tilde: &GmpPair<T>) -> Result<f64> {
    if pair.dims() != pair_tilde.dims() {
        return Err(Error::Dimension(format!(
            "pairs have shapes {:?} and {:?}",
            pair.dims(),
            pair_tilde.dims()
        )));
    }
    let g = pair.stacked();
    let gt = pair_tilde.stacked();
    let delta = g.sub(&gt)?.inner().norm();
    let pinv = pseudoinverse_norm(&g)?.min(pseudoinverse_norm(&gt)?);
    Ok(std::f64::consts::SQRT_2 * delta * pinv)
}

/// First-order bounds on `ϑ`, `P₁`, `P₂`, `D₁`, `D₂` for a perturbation of
/// size `e_script` around `spectrum`.
pub fn quantity_error_bounds(spectrum: &GsvSpectrum, e_script: f64) -> BoundCertificate {
    let e = e_script.max(0.0);
    let vacuous = 2.0 * e > 1.0;
    let theta_bound = if vacuous { FRAC_PI_2 } else { (2.0 * e).asin() };
    let (p1_bounds, d1_bound) = fraction_bounds(spectrum.alphas(), e);
    let (p2_bounds, d2_bound) = fraction_bounds(spectrum.betas(), e);
    BoundCertificate {
        eta: None,
        e_script: e,
        theta_bound,
        p1_bounds,
        p2_bounds,
        d1_bound,
        d2_bound,
        vacuous,
    }
}

/// Per-entry `2 xᵥ 𝓔 / Σx²` and
/// `2𝓔 Σ |xᵢ/Σx² · (log(xᵢ²/Σx²)/log n + D)|`.
fn fraction_bounds(x: &[f64], e: f64) -> (Vec<f64>, f64) {
    let n = x.len();
    let total: f64 = x.iter().map(|v| v * v).sum();
    if total <= 0.0 {
        return (vec![0.0; n], 0.0);
    }
    let per = x.iter().map(|&v| 2.0 * v * e / total).collect();
    if n < 2 {
        return (per, 0.0);
    }
    let p: Vec<f64> = x.iter().map(|v| v * v / total).collect();
    let d = shannon_entropy(&p).unwrap_or(0.0);
    let log_n = (n as f64).ln();
    let sum: f64 = x
        .iter()
        .zip(&p)
        .filter(|(&v, _)| v > 0.0)
        .map(|(&v, &pi)| (v / total * (pi.ln() / log_n + d)).abs())
        .sum();
    (per, 2.0 * e * sum)
}

/// Outcome of [`certify_run`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifiedRun {
    pub spectrum: GsvSpectrum,
    /// `‖G - G̃‖_F` with `G̃ = (Q₁Q₁ᴴG₁; Q₂Q₂ᴴG₂)`; zero for the direct method.
    pub delta_norm: f64,
    pub certificate: BoundCertificate,
}

/// Runs the GSV computation and certifies it: `G̃` is the pair projected
/// onto the extracted bases, `𝓔` is evaluated between `G` and `G̃`, and the
/// first-order bounds use the computed spectrum in place of the exact one.
pub fn certify_run<T: Scalar>(pair: &GmpPair<T>, opts: &GsvOptions) -> Result<CertifiedRun> {
    let run = compute_gsv_detailed(pair, opts)?;
    let sigma = singular_values(&pair.stacked())?;
    let eta = sigma[0] * sigma[0];
    let pinv_g = pseudoinverse_from(&sigma, pair.dims().2)?;

    let (delta_norm, e_script) = match (&run.basis1, &run.basis2) {
        (Some(b1), Some(b2)) if opts.method == Method::Randomized => {
            let r1 = residual_norm(pair.g1(), &b1.q)?;
            let r2 = residual_norm(pair.g2(), &b2.q)?;
            let delta = r1.hypot(r2);
            // G̃ has the singular values of the compressed stack.
            let compressed = DenseMatrix::vstack(&b1.projected, &b2.projected)?;
            let pinv_tilde = pseudoinverse_from(&singular_values(&compressed)?, pair.dims().2)
                .unwrap_or(f64::INFINITY);
            (delta, std::f64::consts::SQRT_2 * delta * pinv_g.min(pinv_tilde))
        }
        _ => (0.0, 0.0),
    };
    let mut certificate = quantity_error_bounds(&run.spectrum, e_script);
    certificate.eta = Some(eta);
    Ok(CertifiedRun {
        spectrum: run.spectrum,
        delta_norm,
        certificate,
    })
}

fn pseudoinverse_from(sigma: &[f64], n: usize) -> Result<f64> {
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let sigma_min = if sigma.len() < n { 0.0 } else { sigma[n - 1] };
    if !(sigma_min > 1e-13 * sigma_max) {
        return Err(Error::RankDeficient {
            sigma_min,
            sigma_max,
        });
    }
    Ok(1.0 / sigma_min)
}

/// Squared residuals `‖(I - QQᴴ)G‖_F²` of `trials` independent sketches of
/// `g` with exactly `k + oversample` Gaussian columns each.
pub fn projector_trials<T: Scalar>(
    g: &DenseMatrix<T>,
    k: usize,
    oversample: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let width = k + oversample;
    if width == 0 || width > g.rows().min(g.cols()) {
        return Err(Error::InvalidConfig(format!(
            "sketch width {width} does not fit a {}x{} matrix",
            g.rows(),
            g.cols()
        )));
    }
    (0..trials as u64)
        .map(|t| {
            let cfg = ExtractionConfig::default()
                .with_blocksize(width)
                .with_max_cols(Some(width))
                .with_tol(Tolerance::Absolute(f64::MIN_POSITIVE))
                .with_trim_tol(0.0)
                .with_seed(derive_seed(seed, t));
            let basis = extract_basis(g, &cfg)?;
            let r = residual_norm(g, &basis.q)?;
            Ok(r * r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{angular_distances, eigenexpression_fractions};
    use crate::gsv::compute_gsv;
    use crate::matrix::{gaussian_matrix, RealMatrix};
    use crate::synth::{gmp_from_spectrum, synth_gmp, SynthSpec};

    fn direct() -> GsvOptions {
        GsvOptions::default().with_method(Method::Direct)
    }

    #[test]
    fn zero_tail_gives_zero_bound() {
        let spec = GsvSpectrum::from_alphas(vec![0.9, 0.8, 0.0, 0.0], 1e-10).unwrap();
        let res = gmp_from_spectrum::<f64>(&spec, 8, 8, 1).unwrap();
        let b = projector_bound(&res.pair, &spec, 2, 2, Which::First).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn prefactor_arithmetic() {
        let spec = GsvSpectrum::from_alphas(vec![0.9, 0.8, 0.5, 0.3, 0.1], 1e-10).unwrap();
        let res = gmp_from_spectrum::<f64>(&spec, 10, 10, 2).unwrap();
        let b = projector_bound(&res.pair, &spec, 2, 2, Which::First).unwrap();
        let eta = eta(&res.pair).unwrap();
        let tail = 0.25 + 0.09 + 0.01;
        assert!((b - 3.0 * eta * tail).abs() <= 1e-12 * b);
        let b2 = projector_bound(&res.pair, &spec, 2, 2, Which::Second).unwrap();
        let betas = spec.betas();
        let tail2: f64 = betas[..3].iter().map(|x| x * x).sum();
        assert!((b2 - 3.0 * eta * tail2).abs() <= 1e-12 * b2);
    }

    #[test]
    fn projector_bound_rejects_bad_parameters() {
        let res = synth_gmp::<f64>(&SynthSpec::new(10, 10, 10).with_rank_frac(1.0)).unwrap();
        let s = &res.true_spectrum;
        assert!(projector_bound(&res.pair, s, 1, 2, Which::First).is_err());
        assert!(projector_bound(&res.pair, s, 2, 1, Which::First).is_err());
        assert!(projector_bound(&res.pair, s, 6, 5, Which::Second).is_err());
    }

    #[test]
    fn eta_of_stacked_identity() {
        let pair = GmpPair::new(RealMatrix::identity(3), RealMatrix::identity(3)).unwrap();
        assert!((eta(&pair).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn identical_pairs_have_zero_e() {
        let res = synth_gmp::<f64>(&SynthSpec::new(20, 20, 10)).unwrap();
        assert_eq!(perturbation_bound(&res.pair, &res.pair).unwrap(), 0.0);
    }

    #[test]
    fn perturbed_stacked_identity() {
        // G = (I; 0) has ‖G†‖ = 1.
        let n = 4;
        let base = GmpPair::new(RealMatrix::identity(n), RealMatrix::zeros(n, n)).unwrap();
        let e = gaussian_matrix::<f64>(n, n, 5).unwrap();
        let delta = 1e-8;
        let e = e.scale(delta / e.inner().norm());
        let tilde = GmpPair::new(base.g1().sub(&e).unwrap(), base.g2().clone()).unwrap();
        let got = perturbation_bound(&base, &tilde).unwrap();
        assert!((got - std::f64::consts::SQRT_2 * delta).abs() <= 1e-7 * got, "{got}");
    }

    #[test]
    fn zero_e_gives_zero_bounds() {
        let s = GsvSpectrum::from_alphas(vec![0.9, 0.5, 0.2], 1e-10).unwrap();
        let c = quantity_error_bounds(&s, 0.0);
        assert_eq!(c.theta_bound, 0.0);
        assert!(c.p1_bounds.iter().chain(&c.p2_bounds).all(|&x| x == 0.0));
        assert_eq!((c.d1_bound, c.d2_bound), (0.0, 0.0));
        assert!(!c.vacuous);
    }

    #[test]
    fn uniform_spectrum_has_zero_entropy_bound() {
        let s = GsvSpectrum::from_alphas(vec![0.6; 5], 1e-10).unwrap();
        let c = quantity_error_bounds(&s, 1e-3);
        assert!(c.d1_bound.abs() < 1e-15 && c.d2_bound.abs() < 1e-15);
    }

    #[test]
    fn large_e_is_vacuous() {
        let s = GsvSpectrum::from_alphas(vec![0.9, 0.5], 1e-10).unwrap();
        let c = quantity_error_bounds(&s, 0.7);
        assert!(c.vacuous);
        assert_eq!(c.theta_bound, FRAC_PI_2);
    }

    #[test]
    fn bounds_are_monotone_in_e() {
        let s = GsvSpectrum::from_alphas(vec![0.9, 0.7, 0.4, 0.1], 1e-10).unwrap();
        let a = quantity_error_bounds(&s, 1e-4);
        let b = quantity_error_bounds(&s, 2e-4);
        assert!(b.theta_bound >= a.theta_bound);
        assert!((b.d1_bound - 2.0 * a.d1_bound).abs() <= 1e-15);
        for (x, y) in a.p1_bounds.iter().zip(&b.p1_bounds) {
            assert!(*y <= 2.0 * x + 1e-18);
        }
    }

    #[test]
    fn perturbation_certifies_gsv_and_quantity_changes() {
        let res = synth_gmp::<f64>(&SynthSpec::new(40, 35, 30).with_rank_frac(1.0).with_seed(3)).unwrap();
        let (g1, g2) = res.pair.clone().into_parts();
        let stacked_norm = res.pair.stacked().inner().norm();
        let e1 = gaussian_matrix::<f64>(40, 30, 8).unwrap();
        let e2 = gaussian_matrix::<f64>(35, 30, 9).unwrap();
        let scale = 1e-6 * stacked_norm / e1.inner().norm().hypot(e2.inner().norm());
        let tilde = GmpPair::new(g1.sub(&e1.scale(scale)).unwrap(), g2.sub(&e2.scale(scale)).unwrap()).unwrap();
        let e = perturbation_bound(&res.pair, &tilde).unwrap();
        let a = compute_gsv(&res.pair, &direct()).unwrap();
        let b = compute_gsv(&tilde, &direct()).unwrap();
        let (da, db) = a.distance(&b);
        assert!(da.hypot(db) <= e);
        let cert = quantity_error_bounds(&a, e);
        let (ta, tb) = (angular_distances(&a), angular_distances(&b));
        assert!(ta.iter().zip(&tb).all(|(x, y)| (x - y).abs() <= cert.theta_bound));
        let (pa, _) = eigenexpression_fractions(&a).unwrap();
        let (pb, _) = eigenexpression_fractions(&b).unwrap();
        for i in 0..pa.len() {
            assert!((pa[i] - pb[i]).abs() <= 1.1 * cert.p1_bounds[i]);
        }
    }

    #[test]
    fn run_certificate() {
        let res = synth_gmp::<f64>(&SynthSpec::new(60, 50, 40).with_seed(4)).unwrap();
        let run = certify_run(&res.pair, &GsvOptions::default()).unwrap();
        let (da, db) = run.spectrum.distance(&res.true_spectrum);
        assert!(da.hypot(db) <= run.certificate.e_script.max(1e-12));
        assert!(run.certificate.eta.unwrap() > 0.0);
        let d = certify_run(&res.pair, &direct()).unwrap();
        assert_eq!(d.certificate.e_script, 0.0);
    }

    #[test]
    fn trials_use_the_requested_width() {
        let g = gaussian_matrix::<f64>(30, 20, 1).unwrap();
        let r = projector_trials(&g, 4, 3, 5, 7).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|&x| x > 0.0));
        assert!(projector_trials(&g, 18, 3, 1, 7).is_err());
    }
}
