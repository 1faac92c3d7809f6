use nalgebra::linalg::SVD;
use nalgebra::DMatrix;

use super::blas::{self, Op};
use super::qr::householder_qr;
use super::{DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Thin SVD `M = U diag(s) Vᴴ` with `s` nonincreasing.
#[derive(Debug, Clone)]
pub struct SvdFactors<T: Scalar> {
    pub u: DenseMatrix<T>,
    pub s: Vec<f64>,
    pub v: DenseMatrix<T>,
}

/// Thin SVD of any shape.
///
/// Matrices with an aspect ratio of 2 or more are first reduced by QR (of
/// the matrix or its adjoint) and the bidiagonal SVD runs on the small
/// triangular factor.
pub fn svd<T: Scalar>(m: &DenseMatrix<T>) -> Result<SvdFactors<T>> {
    let (u, s, v) = thin_svd(m.inner(), true)?;
    Ok(SvdFactors {
        u: DenseMatrix::from_inner(u.expect("requested")),
        s,
        v: DenseMatrix::from_inner(v.expect("requested")),
    })
}

/// Singular values only, nonincreasing.
pub fn singular_values<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<f64>> {
    singular_values_of(m.inner())
}

pub(crate) fn singular_values_of<T: Scalar>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    Ok(thin_svd(m, false)?.1)
}

type Thin<T> = (Option<DMatrix<T>>, Vec<f64>, Option<DMatrix<T>>);

pub(crate) fn thin_svd<T: Scalar>(m: &DMatrix<T>, vectors: bool) -> Result<Thin<T>> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        let (u, v) = if vectors {
            (Some(DMatrix::zeros(rows, 0)), Some(DMatrix::zeros(cols, 0)))
        } else {
            (None, None)
        };
        return Ok((u, Vec::new(), v));
    }
    if cols > rows {
        let (u, s, v) = thin_svd(&m.adjoint(), vectors)?;
        return Ok((v, s, u));
    }
    if rows >= 2 * cols {
        let (q, r) = householder_qr(m.clone());
        let (ur, s, v) = kernel(r, vectors)?;
        let u = ur.map(|ur| blas::mul(&q, Op::N, &ur, Op::N));
        return Ok((u, s, v));
    }
    kernel(m.clone(), vectors)
}

fn kernel<T: Scalar>(m: DMatrix<T>, vectors: bool) -> Result<Thin<T>> {
    let (rows, cols) = m.shape();
    let max_iter = 100 * rows.min(cols) + 1000;
    let dec = SVD::try_new_unordered(m, vectors, vectors, f64::EPSILON, max_iter)
        .ok_or(Error::SvdNoConvergence { rows, cols })?;

    let sv = dec.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let s: Vec<f64> = order.iter().map(|&i| sv[i].max(0.0)).collect();
    if !vectors {
        return Ok((None, s, None));
    }
    let u_raw = dec.u.expect("u requested");
    let vt_raw = dec.v_t.expect("v requested");
    let u = DMatrix::from_fn(u_raw.nrows(), order.len(), |i, j| u_raw[(i, order[j])]);
    let v = DMatrix::from_fn(vt_raw.ncols(), order.len(), |i, j| {
        vt_raw[(order[j], i)].conjugate()
    });
    Ok((Some(u), s, Some(v)))
}
