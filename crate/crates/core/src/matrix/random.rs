use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Seeded Gaussian test matrix, filled in column-major order from a
/// ChaCha8 stream so the result is bitwise reproducible for a given
/// `(rows, cols, seed)` and field.
pub fn gaussian_matrix<T: Scalar>(rows: usize, cols: usize, seed: u64) -> Result<DenseMatrix<T>> {
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!(
            "gaussian matrix needs positive dimensions, got {rows}x{cols}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<T> = (0..rows * cols)
        .map(|_| T::sample_gaussian(&mut rng))
        .collect();
    Ok(DenseMatrix::from_inner(DMatrix::from_vec(rows, cols, data)))
}

/// Derives an independent-looking seed for sub-stream `stream` of `base`
/// (SplitMix64 finalizer).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn deterministic_per_seed() {
        let a = gaussian_matrix::<f64>(2, 2, 7).unwrap();
        let b = gaussian_matrix::<f64>(2, 2, 7).unwrap();
        assert_eq!(a, b);
        let c = gaussian_matrix::<f64>(5, 3, 1).unwrap();
        let d = gaussian_matrix::<f64>(5, 3, 2).unwrap();
        assert_ne!(c, d);
    }

    #[test]
    fn real_moments() {
        let g = gaussian_matrix::<f64>(1000, 1000, 11).unwrap();
        let n = (1000 * 1000) as f64;
        let mean = g.iter().sum::<f64>() / n;
        let var = g.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn complex_parts_have_half_variance() {
        let g = gaussian_matrix::<Complex64>(300, 300, 5).unwrap();
        let n = g.len() as f64;
        let var_re = g.iter().map(|z| z.re * z.re).sum::<f64>() / n;
        let var_im = g.iter().map(|z| z.im * z.im).sum::<f64>() / n;
        assert!((var_re - 0.5).abs() < 0.02, "{var_re}");
        assert!((var_im - 0.5).abs() < 0.02, "{var_im}");
    }

    #[test]
    fn rejects_empty_shape() {
        assert!(gaussian_matrix::<f64>(0, 3, 1).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }
}
