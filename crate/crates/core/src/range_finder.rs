//! Blocked randomized range finder.
//!
//! Builds an orthonormal `Q` block by block from Gaussian sketches `G Ω`
//! until `‖(I - QQᴴ)G‖_F` drops below the tolerance or the sketch has
//! covered all `n` columns of `G`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::blas::{self, Op};
use crate::matrix::{
    derive_seed, gaussian_matrix, householder_qr, squared_norm, CompensatedSum, DenseMatrix,
    Scalar,
};

/// Below this fraction of `‖G‖_F²` the cumulative residual has lost too
/// many digits to cancellation and is re-evaluated explicitly.
const CANCELLATION_FLOOR: f64 = 1e-4;

/// Stopping tolerance `ε` on the Frobenius residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Tolerance {
    /// Absolute `ε`.
    Absolute(f64),
    /// `ε = value · ‖G‖_F`.
    Relative(f64),
}

impl Tolerance {
    pub fn resolve(&self, norm: f64) -> f64 {
        match *self {
            Tolerance::Absolute(eps) => eps,
            Tolerance::Relative(rel) => rel * norm,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Tolerance::Absolute(v) | Tolerance::Relative(v) => v,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::Relative(1e-10)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionConfig {
    pub tol: Tolerance,
    /// Sketch columns drawn per iteration; clamped to the column count of `G`.
    pub blocksize: usize,
    pub seed: u64,
    /// Hard cap on the columns of `Q`.
    pub max_cols: Option<usize>,
    /// Columns of a new block whose `|T(j,j)|` falls below
    /// `trim_tol · ‖G‖_F` are dropped. Zero keeps every column.
    pub trim_tol: f64,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            blocksize: 100,
            seed: 0,
            max_cols: None,
            trim_tol: 1e-12,
        }
    }
}

impl ExtractionConfig {
    pub fn with_tol(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_blocksize(mut self, blocksize: usize) -> Self {
        self.blocksize = blocksize;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_cols(mut self, max_cols: Option<usize>) -> Self {
        self.max_cols = max_cols;
        self
    }

    pub fn with_trim_tol(mut self, trim_tol: f64) -> Self {
        self.trim_tol = trim_tol;
        self
    }

    fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        let tol = self.tol.value();
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {tol}")));
        }
        if self.blocksize == 0 {
            return Err(Error::InvalidConfig("blocksize must be at least 1".into()));
        }
        if let Some(cap) = self.max_cols {
            if cap == 0 || cap > rows.min(cols) {
                return Err(Error::InvalidConfig(format!(
                    "max_cols = {cap} must lie in 1..={}",
                    rows.min(cols)
                )));
            }
        }
        if !(self.trim_tol >= 0.0 && self.trim_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "trim_tol must be nonnegative, got {}",
                self.trim_tol
            )));
        }
        Ok(())
    }
}

/// Output of [`extract_basis`].
#[derive(Debug, Clone)]
pub struct BasisResult<T: Scalar> {
    /// `m x l` orthonormal basis.
    pub q: DenseMatrix<T>,
    /// `‖(I - QQᴴ)G‖_F` before the first iteration and after each one.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// `QᴴG` (`l x n`), accumulated block by block during extraction.
    pub projected: DenseMatrix<T>,
}

impl<T: Scalar> BasisResult<T> {
    pub fn width(&self) -> usize {
        self.q.cols()
    }

    pub fn final_residual(&self) -> f64 {
        *self.residual_history.last().expect("history is never empty")
    }
}

/// Randomized basis extraction.
///
/// The residual is checked before sampling, so a zero matrix returns an
/// empty basis. Each sketch block is projected against the current basis
/// twice before its QR, rank-deficient directions are trimmed, and the
/// squared residual is tracked as `‖G‖_F² - Σ‖PᵢᴴG‖_F²`, switching to an
/// explicit evaluation once cancellation would make that difference
/// unreliable. Running out of blocks is not an error: `converged` is then
/// false and the full history is returned.
pub fn extract_basis<T: Scalar>(g: &DenseMatrix<T>, cfg: &ExtractionConfig) -> Result<BasisResult<T>> {
    let (m, n) = (g.rows(), g.cols());
    if m == 0 || n == 0 {
        return Err(Error::Dimension(format!("cannot extract a basis of a {m}x{n} matrix")));
    }
    cfg.validate(m, n)?;

    let norm2 = squared_norm(g.inner());
    let norm = norm2.sqrt();
    let tol = cfg.tol.resolve(norm);
    let mut history = vec![norm];
    let mut q = DMatrix::<T>::zeros(m, 0);
    let mut projected = DMatrix::<T>::zeros(0, n);

    let finish = |q: DMatrix<T>, projected: DMatrix<T>, history: Vec<f64>, iterations| {
        let last = *history.last().unwrap();
        Ok(BasisResult {
            q: DenseMatrix::from_inner(q),
            converged: last < tol || last == 0.0,
            residual_history: history,
            iterations,
            projected: DenseMatrix::from_inner(projected),
        })
    };

    if norm == 0.0 || norm < tol {
        return finish(q, projected, history, 0);
    }

    let blocksize = cfg.blocksize.min(n);
    let cap = cfg.max_cols.unwrap_or(m.min(n));
    let trim = cfg.trim_tol * norm;
    let mut res2 = CompensatedSum::new();
    res2.add(norm2);
    let mut iterations = 0;
    let mut sampled = 0;

    for block in 0..n.div_ceil(blocksize) {
        let width = blocksize.min(n - sampled).min(cap - q.ncols());
        sampled += blocksize.min(n - sampled);
        if width == 0 {
            break;
        }
        iterations += 1;

        let omega = gaussian_matrix::<T>(n, width, derive_seed(cfg.seed, block as u64))?;
        let mut y = blas::mul(g.inner(), Op::N, omega.inner(), Op::N);
        if q.ncols() > 0 {
            for _ in 0..2 {
                let c = blas::mul(&q, Op::C, &y, Op::N);
                blas::gemm(-T::one(), &q, Op::N, &c, Op::N, T::one(), &mut y);
            }
        }
        let (p, t) = householder_qr(y);
        let keep: Vec<usize> = (0..p.ncols())
            .filter(|&j| t[(j, j)].modulus() >= trim)
            .collect();

        if !keep.is_empty() {
            let p = if keep.len() == p.ncols() {
                p
            } else {
                p.select_columns(&keep)
            };
            let c = blas::mul(&p, Op::C, g.inner(), Op::N);
            res2.add(-squared_norm(&c));
            q = hstack(&q, &p);
            projected = vstack(&projected, &c);
        }

        let res = if res2.value() > CANCELLATION_FLOOR * norm2 {
            res2.value().sqrt()
        } else {
            let r2 = explicit_residual2(g.inner(), &q, &projected);
            res2 = CompensatedSum::new();
            res2.add(r2);
            r2.sqrt()
        };
        history.push(res);
        if res < tol {
            break;
        }
    }

    finish(q, projected, history, iterations)
}

/// `‖(I - QQᴴ)G‖_F` evaluated directly.
pub fn residual_norm<T: Scalar>(g: &DenseMatrix<T>, q: &DenseMatrix<T>) -> Result<f64> {
    if g.rows() != q.rows() {
        return Err(Error::Dimension(format!(
            "basis has {} rows, matrix has {}",
            q.rows(),
            g.rows()
        )));
    }
    let c = blas::mul(q.inner(), Op::C, g.inner(), Op::N);
    Ok(explicit_residual2(g.inner(), q.inner(), &c).sqrt())
}

fn explicit_residual2<T: Scalar>(g: &DMatrix<T>, q: &DMatrix<T>, qhg: &DMatrix<T>) -> f64 {
    let mut e = g.clone();
    blas::gemm(-T::one(), q, Op::N, qhg, Op::N, T::one(), &mut e);
    squared_norm(&e)
}

fn hstack<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

fn vstack<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    let mut out = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols());
    out.rows_mut(0, a.nrows()).copy_from(a);
    out.rows_mut(a.nrows(), b.nrows()).copy_from(b);
    out
}
