//! Dense matrix primitives: the matrix type, Gaussian sampling, blocked
//! Householder QR, SVD and norms.

pub(crate) mod blas;
mod dense;
mod norms;
mod qr;
mod random;
mod scalar;
mod svd;

pub use dense::{ComplexMatrix, DenseMatrix, RealMatrix};
pub use norms::{frobenius_norm, pseudoinverse_norm, CompensatedSum};
pub use qr::{reduced_qr, QrFactors};
pub use random::{derive_seed, gaussian_matrix};
pub use scalar::{Field, Scalar};
pub use svd::{singular_values, svd, SvdFactors};

pub(crate) use norms::squared_norm;
pub(crate) use qr::householder_qr;
pub(crate) use svd::singular_values_of;
