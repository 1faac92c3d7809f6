use std::ops::Deref;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::blas::{self, Op};
use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense column-major matrix whose entries are all finite.
///
/// Thin wrapper over [`nalgebra::DMatrix`]; read access goes through `Deref`,
/// mutation only through constructors so the finiteness invariant holds for
/// every value of this type.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Scalar>(DMatrix<T>);

pub type RealMatrix = DenseMatrix<f64>;
pub type ComplexMatrix = DenseMatrix<Complex64>;

impl<T: Scalar> DenseMatrix<T> {
    /// Wraps `inner`, rejecting NaN or infinite entries.
    pub fn new(inner: DMatrix<T>) -> Result<Self> {
        if let Some(idx) = inner.iter().position(|x| !x.is_finite()) {
            let rows = inner.nrows().max(1);
            return Err(Error::NonFinite {
                row: idx % rows,
                col: idx / rows,
            });
        }
        Ok(Self(inner))
    }

    /// Internal constructor for results of finite arithmetic on finite inputs.
    pub(crate) fn from_inner(inner: DMatrix<T>) -> Self {
        debug_assert!(inner.iter().all(|x| x.is_finite()));
        Self(inner)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        Self::new(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_column_slice(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        check_len(rows, cols, data.len())?;
        Self::new(DMatrix::from_column_slice(rows, cols, data))
    }

    pub fn from_row_slice(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        check_len(rows, cols, data.len())?;
        Self::new(DMatrix::from_row_slice(rows, cols, data))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Real diagonal matrix lifted into the field `T`.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_inner(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                T::from_real(diag[i])
            } else {
                T::zero()
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn field(&self) -> Field {
        T::FIELD
    }

    pub fn inner(&self) -> &DMatrix<T> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<T> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self(blas::mul(&self.0, Op::N, &rhs.0, Op::N)))
    }

    /// Adjoint product `selfᴴ * rhs`.
    pub fn adjoint_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.rows() != rhs.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply ({}x{})^H by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self(blas::mul(&self.0, Op::C, &rhs.0, Op::N)))
    }

    /// Stacks `top` over `bottom`.
    pub fn vstack(top: &Self, bottom: &Self) -> Result<Self> {
        if top.cols() != bottom.cols() {
            return Err(Error::Dimension(format!(
                "cannot stack {}x{} over {}x{}",
                top.rows(),
                top.cols(),
                bottom.rows(),
                bottom.cols()
            )));
        }
        let (m, p, n) = (top.rows(), bottom.rows(), top.cols());
        let mut out = DMatrix::zeros(m + p, n);
        out.view_mut((0, 0), (m, n)).copy_from(&top.0);
        out.view_mut((m, 0), (p, n)).copy_from(&bottom.0);
        Ok(Self(out))
    }

    /// `self - other`, shapes must agree.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.0.shape() != other.0.shape() {
            return Err(Error::Dimension(format!(
                "cannot subtract {:?} from {:?}",
                other.0.shape(),
                self.0.shape()
            )));
        }
        Ok(Self(&self.0 - &other.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.map(|x| x * T::from_real(c)))
    }
}

impl RealMatrix {
    /// Lifts a real matrix into the complex field.
    pub fn to_complex(&self) -> ComplexMatrix {
        DenseMatrix(self.0.map(|x| Complex64::new(x, 0.0)))
    }
}

impl<T: Scalar> Deref for DenseMatrix<T> {
    type Target = DMatrix<T>;

    fn deref(&self) -> &DMatrix<T> {
        &self.0
    }
}

impl<T: Scalar> TryFrom<DMatrix<T>> for DenseMatrix<T> {
    type Error = Error;

    fn try_from(value: DMatrix<T>) -> Result<Self> {
        Self::new(value)
    }
}

fn check_len(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows * cols != len {
        return Err(Error::Dimension(format!(
            "{rows}x{cols} matrix needs {} entries, got {len}",
            rows * cols
        )));
    }
    Ok(())
}
