//! Generalized singular values of a matrix pair from compressed bases, and
//! recovery of the full reduced GSVD.
//!
//! Both columns bases are extracted with the randomized range finder, the
//! compressed pair `(Q₁ᴴG₁; Q₂ᴴG₂)` is factored by a reduced QR into
//! `(L₁; L₂) R̃`, and the GSVs are read off the singular values of `L₁` or
//! `L₂`. The direct method runs the same stacked QR and SVD on the
//! uncompressed pair.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::blas::{self, Op};
use crate::matrix::{
    derive_seed, gaussian_matrix, householder_qr, singular_values, singular_values_of, DenseMatrix,
    Scalar,
};
use crate::matrix::svd as dense_svd;
use crate::range_finder::{extract_basis, BasisResult, ExtractionConfig};

/// Largest permitted `|αᵢ² + βᵢ² - 1|` in a spectrum.
pub const PYTHAGOREAN_TOL: f64 = 1e-12;

/// A validated `(m, p, n)` matrix pair whose stacked matrix has full
/// column rank.
#[derive(Debug, Clone)]
pub struct GmpPair<T: Scalar> {
    g1: DenseMatrix<T>,
    g2: DenseMatrix<T>,
}

impl<T: Scalar> GmpPair<T> {
    /// Checks equal column counts and `σ_min > 1e-12 · σ_max` for the
    /// stacked matrix.
    pub fn new(g1: DenseMatrix<T>, g2: DenseMatrix<T>) -> Result<Self> {
        if g1.cols() != g2.cols() {
            return Err(Error::Dimension(format!(
                "pair needs equal column counts, got {} and {}",
                g1.cols(),
                g2.cols()
            )));
        }
        if g1.cols() == 0 || g1.rows() == 0 || g2.rows() == 0 {
            return Err(Error::Dimension("pair matrices must be nonempty".into()));
        }
        let stacked = DenseMatrix::vstack(&g1, &g2)?;
        let s = singular_values(&stacked)?;
        let sigma_max = s[0];
        let sigma_min = if stacked.rows() < stacked.cols() {
            0.0
        } else {
            *s.last().unwrap()
        };
        if !(sigma_min > 1e-12 * sigma_max) {
            return Err(Error::RankDeficient {
                sigma_min,
                sigma_max,
            });
        }
        Ok(Self { g1, g2 })
    }

    pub fn g1(&self) -> &DenseMatrix<T> {
        &self.g1
    }

    pub fn g2(&self) -> &DenseMatrix<T> {
        &self.g2
    }

    /// `(m, p, n)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.g1.rows(), self.g2.rows(), self.g1.cols())
    }

    /// `(G₁ᴴ, G₂ᴴ)ᴴ`.
    pub fn stacked(&self) -> DenseMatrix<T> {
        DenseMatrix::vstack(&self.g1, &self.g2).expect("column counts checked on construction")
    }

    /// The pair with the roles of the two data sets exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            g1: self.g2.clone(),
            g2: self.g1.clone(),
        }
    }

    /// Both matrices multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.g1.scale(c), self.g2.scale(c))
    }

    pub fn into_parts(self) -> (DenseMatrix<T>, DenseMatrix<T>) {
        (self.g1, self.g2)
    }
}

/// Generalized singular value pairs ordered as `α` nonincreasing and `β`
/// nondecreasing, with the exact-one/exact-zero blocks snapped.
///
/// Indices `0..r` have `β = 0`, indices `r + s..n` have `α = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsvSpectrum {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    r: usize,
    s: usize,
}

impl GsvSpectrum {
    /// Snaps entries below `classify_tol` to exact zero (and their partner
    /// to exactly one), counts `r` and `s`, and validates the invariants.
    pub fn new(mut alphas: Vec<f64>, mut betas: Vec<f64>, classify_tol: f64) -> Result<Self> {
        if alphas.len() != betas.len() || alphas.is_empty() {
            return Err(Error::Dimension(format!(
                "spectrum needs equal nonzero lengths, got {} and {}",
                alphas.len(),
                betas.len()
            )));
        }
        let (r, s) = classify_spectrum(&alphas, &betas, classify_tol);
        for (a, b) in alphas.iter_mut().zip(betas.iter_mut()) {
            if *b < classify_tol {
                *a = 1.0;
                *b = 0.0;
            } else if *a < classify_tol {
                *a = 0.0;
                *b = 1.0;
            }
        }
        let spec = Self {
            alphas,
            betas,
            r,
            s,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Spectrum with `βᵢ = √(1 - αᵢ²)`.
    pub fn from_alphas(alphas: Vec<f64>, classify_tol: f64) -> Result<Self> {
        let betas = alphas.iter().map(|a| complement(*a)).collect();
        Self::new(alphas, betas, classify_tol)
    }

    /// Reassembles a spectrum from stored values without snapping, e.g.
    /// after deserialization.
    pub fn from_parts(alphas: Vec<f64>, betas: Vec<f64>, r: usize, s: usize) -> Result<Self> {
        let spec = Self {
            alphas,
            betas,
            r,
            s,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Verifies range, ordering, the Pythagorean identity and the block
    /// structure implied by `r` and `s`.
    pub fn check(&self) -> Result<()> {
        let n = self.alphas.len();
        let bad = |msg: String| Err(Error::DegenerateSpectrum(msg));
        if self.betas.len() != n || self.r + self.s > n {
            return bad(format!("inconsistent sizes: n = {n}, r = {}, s = {}", self.r, self.s));
        }
        for (i, (&a, &b)) in self.alphas.iter().zip(&self.betas).enumerate() {
            if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
                return bad(format!("entry {i} outside [0, 1]: ({a}, {b})"));
            }
            if (a * a + b * b - 1.0).abs() > PYTHAGOREAN_TOL {
                return bad(format!("entry {i} violates a² + b² = 1: ({a}, {b})"));
            }
            if i > 0 && (a > self.alphas[i - 1] || b < self.betas[i - 1]) {
                return bad(format!("entry {i} breaks the ordering"));
            }
            let zero_beta = i < self.r;
            let zero_alpha = i >= self.r + self.s;
            if zero_beta != (b == 0.0) || zero_alpha != (a == 0.0) {
                return bad(format!("entry {i} does not match the (r, s) block structure"));
            }
        }
        Ok(())
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Number of `β = 0` entries.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of interior pairs (the GSVD rank).
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn max_pythagorean_defect(&self) -> f64 {
        self.alphas
            .iter()
            .zip(&self.betas)
            .map(|(a, b)| (a * a + b * b - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `(‖α - α'‖₂, ‖β - β'‖₂)`.
    pub fn distance(&self, other: &GsvSpectrum) -> (f64, f64) {
        let d = |x: &[f64], y: &[f64]| {
            x.iter()
                .zip(y)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        };
        (d(&self.alphas, &other.alphas), d(&self.betas, &other.betas))
    }

    /// Largest elementwise deviation over both sequences.
    pub fn max_deviation(&self, other: &GsvSpectrum) -> f64 {
        self.alphas
            .iter()
            .zip(&other.alphas)
            .chain(self.betas.iter().zip(&other.betas))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Counts `(r, s)`: `r = #{βᵢ < tol}`, `n - r - s = #{αᵢ < tol}`.
pub fn classify_spectrum(alphas: &[f64], betas: &[f64], classify_tol: f64) -> (usize, usize) {
    let r = betas.iter().filter(|&&b| b < classify_tol).count();
    let zero_alphas = alphas
        .iter()
        .zip(betas)
        .filter(|&(&a, &b)| a < classify_tol && b >= classify_tol)
        .count();
    (r, alphas.len() - r - zero_alphas)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Compress both matrices with the randomized range finder first.
    Randomized,
    /// Factor the uncompressed pair.
    Direct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Randomized => f.write_str("randomized"),
            Method::Direct => f.write_str("direct"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "randomized" => Ok(Method::Randomized),
            "direct" => Ok(Method::Direct),
            other => Err(format!("unknown method '{other}', expected randomized or direct")),
        }
    }
}

/// Which `L` block the spectrum is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `L₁` when `l₁ ≤ l₂`, else `L₂`.
    Auto,
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsvOptions {
    /// Settings for both basis extractions; `G₂` uses `seed + 1`.
    pub extraction: ExtractionConfig,
    pub classify_tol: f64,
    pub method: Method,
    pub branch: Branch,
    /// Take the partner of every value above `1/√2` from the other `L`
    /// block instead of from `√(1 - x²)`.
    pub refine_complement: bool,
}

impl Default for GsvOptions {
    fn default() -> Self {
        Self {
            extraction: ExtractionConfig::default(),
            classify_tol: 1e-10,
            method: Method::Randomized,
            branch: Branch::Auto,
            refine_complement: true,
        }
    }
}

impl GsvOptions {
    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_extraction(mut self, extraction: ExtractionConfig) -> Self {
        self.extraction = extraction;
        self
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_classify_tol(mut self, classify_tol: f64) -> Self {
        self.classify_tol = classify_tol;
        self
    }

    pub fn with_refine_complement(mut self, refine: bool) -> Self {
        self.refine_complement = refine;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.classify_tol > 0.0 && self.classify_tol < 1e-2) {
            return Err(Error::InvalidConfig(format!(
                "classify_tol must lie in (0, 1e-2), got {}",
                self.classify_tol
            )));
        }
        Ok(())
    }
}

/// Everything [`compute_gsv_detailed`] produced along the way.
#[derive(Debug, Clone)]
pub struct GsvRun<T: Scalar> {
    pub spectrum: GsvSpectrum,
    /// Rows of `L₁` and `L₂`.
    pub l1: usize,
    pub l2: usize,
    /// The branch actually used.
    pub branch: Branch,
    /// Range-finder output, present for the randomized method.
    pub basis1: Option<BasisResult<T>>,
    pub basis2: Option<BasisResult<T>>,
    lower1: DMatrix<T>,
    lower2: DMatrix<T>,
    r_tilde: DMatrix<T>,
}

impl<T: Scalar> GsvRun<T> {
    /// Final basis residuals `(‖(I - Q₁Q₁ᴴ)G₁‖_F, ‖(I - Q₂Q₂ᴴ)G₂‖_F)`;
    /// zero for the direct method.
    pub fn basis_residuals(&self) -> (f64, f64) {
        let r = |b: &Option<BasisResult<T>>| b.as_ref().map_or(0.0, |b| b.final_residual());
        (r(&self.basis1), r(&self.basis2))
    }
}

/// Generalized singular values of `pair`.
pub fn compute_gsv<T: Scalar>(pair: &GmpPair<T>, opts: &GsvOptions) -> Result<GsvSpectrum> {
    Ok(compute_gsv_detailed(pair, opts)?.spectrum)
}

pub fn compute_gsv_detailed<T: Scalar>(pair: &GmpPair<T>, opts: &GsvOptions) -> Result<GsvRun<T>> {
    opts.validate()?;
    let n = pair.dims().2;

    let (basis1, basis2) = match opts.method {
        Method::Randomized => {
            let seed = opts.extraction.seed;
            let cfg1 = opts.extraction.clone().with_seed(seed);
            let cfg2 = opts.extraction.clone().with_seed(seed.wrapping_add(1));
            (
                Some(extract_basis(pair.g1(), &cfg1)?),
                Some(extract_basis(pair.g2(), &cfg2)?),
            )
        }
        Method::Direct => (None, None),
    };
    let c1 = basis1.as_ref().map_or(pair.g1().inner(), |b| b.projected.inner());
    let c2 = basis2.as_ref().map_or(pair.g2().inner(), |b| b.projected.inner());
    let (l1, l2) = (c1.nrows(), c2.nrows());
    if l1 + l2 < n {
        return Err(Error::CompressedRankDeficient { l1, l2, n });
    }

    let mut stacked = DMatrix::<T>::zeros(l1 + l2, n);
    stacked.rows_mut(0, l1).copy_from(c1);
    stacked.rows_mut(l1, l2).copy_from(c2);
    let (lq, r_tilde) = householder_qr(stacked);
    let lower1 = lq.rows(0, l1).into_owned();
    let lower2 = lq.rows(l1, l2).into_owned();

    let branch = match opts.branch {
        Branch::Auto if l1 <= l2 => Branch::First,
        Branch::Auto => Branch::Second,
        b => b,
    };
    let (alphas, betas) = spectrum_from_blocks(&lower1, &lower2, n, branch, opts.refine_complement)?;
    let spectrum = GsvSpectrum::new(alphas, betas, opts.classify_tol)?;

    Ok(GsvRun {
        spectrum,
        l1,
        l2,
        branch,
        basis1,
        basis2,
        lower1,
        lower2,
        r_tilde,
    })
}

fn complement(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    (1.0 - x * x).max(0.0).sqrt()
}

/// Singular values of `L₁`, clamped to `[0, 1]`, nonincreasing, padded
/// with trailing zeros to length `n`.
fn alphas_from_first<T: Scalar>(lower1: &DMatrix<T>, n: usize) -> Result<Vec<f64>> {
    let mut a: Vec<f64> = singular_values_of(lower1)?
        .into_iter()
        .map(|x| x.clamp(0.0, 1.0))
        .collect();
    a.resize(n, 0.0);
    Ok(a)
}

/// Singular values of `L₂`, clamped, ascending, with the padding zeros
/// placed first.
fn betas_from_second<T: Scalar>(lower2: &DMatrix<T>, n: usize) -> Result<Vec<f64>> {
    let sv = singular_values_of(lower2)?;
    let mut b = vec![0.0; n - sv.len()];
    b.extend(sv.into_iter().rev().map(|x| x.clamp(0.0, 1.0)));
    Ok(b)
}

fn spectrum_from_blocks<T: Scalar>(
    lower1: &DMatrix<T>,
    lower2: &DMatrix<T>,
    n: usize,
    branch: Branch,
    refine: bool,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut alphas, mut betas);
    if branch == Branch::First {
        alphas = alphas_from_first(lower1, n)?;
        betas = alphas.iter().map(|&a| complement(a)).collect::<Vec<_>>();
        if refine && alphas.iter().any(|&a| a > FRAC_1_SQRT_2) {
            let other = betas_from_second(lower2, n)?;
            for i in 0..n {
                if alphas[i] > FRAC_1_SQRT_2 {
                    betas[i] = other[i];
                    alphas[i] = complement(other[i]);
                }
            }
        }
    } else {
        betas = betas_from_second(lower2, n)?;
        alphas = betas.iter().map(|&b| complement(b)).collect::<Vec<_>>();
        if refine && betas.iter().any(|&b| b > FRAC_1_SQRT_2) {
            let other = alphas_from_first(lower1, n)?;
            for i in 0..n {
                if betas[i] > FRAC_1_SQRT_2 {
                    alphas[i] = other[i];
                    betas[i] = complement(other[i]);
                }
            }
        }
    }

    // Mixing the two blocks can swap neighbours that agree to roundoff.
    let mut pairs: Vec<(f64, f64)> = alphas.into_iter().zip(betas).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.total_cmp(&y.1)));
    let alphas: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut betas: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    for i in 1..n {
        betas[i] = betas[i].max(betas[i - 1]);
    }
    Ok((alphas, betas))
}

/// Reduced GSVD factors `G₁ = U diag(α) R`, `G₂ = V diag(β) R`.
#[derive(Debug, Clone)]
pub struct GsvdFactors<T: Scalar> {
    pub u: DenseMatrix<T>,
    pub v: DenseMatrix<T>,
    pub r_factor: DenseMatrix<T>,
    pub spectrum: GsvSpectrum,
}

impl<T: Scalar> GsvdFactors<T> {
    /// `(‖G₁ - U diag(α) R‖_F, ‖G₂ - V diag(β) R‖_F)`.
    pub fn reconstruction_residuals(&self, pair: &GmpPair<T>) -> (f64, f64) {
        let res = |g: &DenseMatrix<T>, w: &DenseMatrix<T>, d: &[f64]| {
            let mut wd = w.inner().clone();
            for (j, &x) in d.iter().enumerate() {
                wd.column_mut(j).scale_mut(x);
            }
            let mut e = g.inner().clone();
            blas::gemm(-T::one(), &wd, Op::N, self.r_factor.inner(), Op::N, T::one(), &mut e);
            e.norm()
        };
        (
            res(pair.g1(), &self.u, self.spectrum.alphas()),
            res(pair.g2(), &self.v, self.spectrum.betas()),
        )
    }
}

/// Recovers `U`, `V` and `R` on top of the GSV computation.
///
/// With the first branch `U = Q₁U₁`, `V = Q₂L₂W₁⁻¹Σ₂⁻¹`, `R = W₁R̃`
/// where `L₁ = U₁Σ₁W₁`; the second branch is the mirror image. Columns
/// whose diagonal entry was classified zero are filled with an orthonormal
/// completion. Requires `m ≥ n` and `p ≥ n`.
pub fn recover_gsvd<T: Scalar>(pair: &GmpPair<T>, opts: &GsvOptions) -> Result<GsvdFactors<T>> {
    let (m, p, n) = pair.dims();
    if m < n || p < n {
        return Err(Error::Dimension(format!(
            "reduced GSVD recovery needs m >= n and p >= n, got ({m}, {p}, {n})"
        )));
    }
    let run = compute_gsv_detailed(pair, opts)?;
    let q1 = run.basis1.as_ref().map(|b| b.q.inner());
    let q2 = run.basis2.as_ref().map(|b| b.q.inner());
    let alphas = run.spectrum.alphas();
    let betas = run.spectrum.betas();
    let seed = derive_seed(opts.extraction.seed, 0x5eed);

    let (u, v, w) = match run.branch {
        Branch::Second => {
            let (vs, w) = singular_frame(&run.lower2, n, true, seed)?;
            let v = assemble(lift(q2, &vs), betas, None, opts.classify_tol, seed ^ 2)?;
            let lw = blas::mul(&run.lower1, Op::N, &w, Op::N);
            let u = assemble(lift(q1, &lw), alphas, Some(alphas), opts.classify_tol, seed ^ 1)?;
            (u, v, w)
        }
        _ => {
            let (us, w) = singular_frame(&run.lower1, n, false, seed)?;
            let u = assemble(lift(q1, &us), alphas, None, opts.classify_tol, seed ^ 1)?;
            let lw = blas::mul(&run.lower2, Op::N, &w, Op::N);
            let v = assemble(lift(q2, &lw), betas, Some(betas), opts.classify_tol, seed ^ 2)?;
            (u, v, w)
        }
    };
    // R = Wᴴ R̃, W holding the right singular vectors as columns.
    let r_factor = blas::mul(&w, Op::C, &run.r_tilde, Op::N);

    Ok(GsvdFactors {
        u: DenseMatrix::from_inner(u),
        v: DenseMatrix::from_inner(v),
        r_factor: DenseMatrix::from_inner(r_factor),
        spectrum: run.spectrum,
    })
}

/// Left singular vectors (`rows x n`, zero-padded) and a full `n x n`
/// unitary frame of right singular vectors of an `L` block, indexed like the
/// spectrum: descending for `L₁`, ascending (padding first) for `L₂`.
fn singular_frame<T: Scalar>(
    lower: &DMatrix<T>,
    n: usize,
    ascending: bool,
    seed: u64,
) -> Result<(DMatrix<T>, DMatrix<T>)> {
    let f = dense_svd(&DenseMatrix::from_inner(lower.clone()))?;
    let k = f.s.len();
    let complement = orthonormal_complement(f.v.inner(), n - k, seed)?;
    let rows = lower.nrows();
    let mut left = DMatrix::<T>::zeros(rows, n);
    let mut frame = DMatrix::<T>::zeros(n, n);
    for j in 0..k {
        let idx = if ascending { n - 1 - j } else { j };
        left.column_mut(idx).copy_from(&f.u.column(j));
        frame.column_mut(idx).copy_from(&f.v.column(j));
    }
    for j in 0..n - k {
        let idx = if ascending { j } else { k + j };
        frame.column_mut(idx).copy_from(&complement.column(j));
    }
    Ok((left, frame))
}

fn lift<T: Scalar>(basis: Option<&DMatrix<T>>, x: &DMatrix<T>) -> DMatrix<T> {
    match basis {
        Some(q) => blas::mul(q, Op::N, x, Op::N),
        None => x.clone(),
    }
}

/// Divides column `i` by `divisors[i]` (when given) and replaces the
/// columns whose diagonal entry is exactly zero by an orthonormal
/// completion of the remaining ones.
fn assemble<T: Scalar>(
    mut cols: DMatrix<T>,
    diag: &[f64],
    divisors: Option<&[f64]>,
    classify_tol: f64,
    seed: u64,
) -> Result<DMatrix<T>> {
    let zero: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] == 0.0).collect();
    if let Some(d) = divisors {
        for (i, &x) in d.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            if x < classify_tol {
                return Err(Error::IllConditionedRecovery {
                    index: i,
                    value: x,
                    tol: classify_tol,
                });
            }
            cols.column_mut(i).scale_mut(1.0 / x);
        }
    }
    if zero.is_empty() {
        return Ok(cols);
    }
    let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] != 0.0).collect();
    let kept = cols.select_columns(&keep);
    let fill = orthonormal_complement(&kept, zero.len(), seed)?;
    for (j, &i) in zero.iter().enumerate() {
        cols.column_mut(i).copy_from(&fill.column(j));
    }
    Ok(cols)
}

/// `count` orthonormal columns orthogonal to the (orthonormal) columns of
/// `existing`.
fn orthonormal_complement<T: Scalar>(existing: &DMatrix<T>, count: usize, seed: u64) -> Result<DMatrix<T>> {
    let rows = existing.nrows();
    if count == 0 {
        return Ok(DMatrix::zeros(rows, 0));
    }
    if existing.ncols() + count > rows {
        return Err(Error::Dimension(format!(
            "cannot complete {} columns by {count} in dimension {rows}",
            existing.ncols()
        )));
    }
    let mut z = gaussian_matrix::<T>(rows, count, seed)?.into_inner();
    if existing.ncols() > 0 {
        for _ in 0..2 {
            let c = blas::mul(existing, Op::C, &z, Op::N);
            blas::gemm(-T::one(), existing, Op::N, &c, Op::N, T::one(), &mut z);
        }
    }
    Ok(householder_qr(z).0)
}
