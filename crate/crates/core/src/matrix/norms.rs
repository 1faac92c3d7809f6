use nalgebra::{Dyn, Matrix, RawStorage};

use super::{svd, DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated `Σ|mᵢⱼ|²` over any nalgebra storage.
pub(crate) fn squared_norm<T, S>(m: &Matrix<T, Dyn, Dyn, S>) -> f64
where
    T: Scalar,
    S: RawStorage<T, Dyn, Dyn>,
{
    m.iter()
        .map(|x| x.modulus_squared())
        .collect::<CompensatedSum>()
        .value()
}

/// Frobenius norm `√(Σ|mᵢⱼ|²)`, accumulated with compensated summation.
pub fn frobenius_norm<T: Scalar>(m: &DenseMatrix<T>) -> f64 {
    squared_norm(m.inner()).sqrt()
}

/// Spectral norm of the pseudoinverse, `1 / σ_min(m)`.
///
/// Requires full column rank: `σ_min > 1e-13 · σ_max`.
pub fn pseudoinverse_norm<T: Scalar>(m: &DenseMatrix<T>) -> Result<f64> {
    if m.cols() == 0 {
        return Err(Error::Dimension("pseudoinverse of an empty matrix".into()));
    }
    let s = svd::singular_values(m)?;
    let sigma_max = s.first().copied().unwrap_or(0.0);
    let sigma_min = if m.rows() < m.cols() {
        0.0
    } else {
        s.last().copied().unwrap_or(0.0)
    };
    if !(sigma_min > 1e-13 * sigma_max) {
        return Err(Error::RankDeficient {
            sigma_min,
            sigma_max,
        });
    }
    Ok(1.0 / sigma_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::RealMatrix;

    #[test]
    fn identity_and_row_vector() {
        assert_eq!(frobenius_norm(&RealMatrix::identity(4)), 2.0);
        let m = RealMatrix::from_row_slice(1, 2, &[3.0, 4.0]).unwrap();
        assert_eq!(frobenius_norm(&m), 5.0);
    }

    #[test]
    fn compensation_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-12).abs() < 1e-20);
    }

    #[test]
    fn pseudoinverse_of_simple_matrices() {
        assert_eq!(pseudoinverse_norm(&RealMatrix::identity(3)).unwrap(), 1.0);
        let d = RealMatrix::from_diagonal(&[2.0, 0.5]);
        assert!((pseudoinverse_norm(&d).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pseudoinverse_rejects_rank_deficiency() {
        let d = RealMatrix::from_diagonal(&[1.0, 0.0]);
        assert!(matches!(
            pseudoinverse_norm(&d),
            Err(Error::RankDeficient { .. })
        ));
        let wide = RealMatrix::from_row_slice(1, 2, &[1.0, 1.0]).unwrap();
        assert!(pseudoinverse_norm(&wide).is_err());
    }
}
