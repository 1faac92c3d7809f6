//! Thin GEMM layer over `matrixmultiply`, operating on nalgebra storage of
//! any stride.

use nalgebra::{DMatrix, Dyn, Matrix, RawStorage, RawStorageMut};

use super::Scalar;

/// Operand transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    /// As is.
    N,
    /// Conjugate transpose (plain transpose for real scalars).
    C,
}

type Mat<T, S> = Matrix<T, Dyn, Dyn, S>;

/// `C <- alpha * op(A) * op(B) + beta * C`.
pub(crate) fn gemm<T, SA, SB, SC>(
    alpha: T,
    a: &Mat<T, SA>,
    op_a: Op,
    b: &Mat<T, SB>,
    op_b: Op,
    beta: T,
    c: &mut Mat<T, SC>,
) where
    T: Scalar,
    SA: RawStorage<T, Dyn, Dyn>,
    SB: RawStorage<T, Dyn, Dyn>,
    SC: RawStorageMut<T, Dyn, Dyn>,
{
    // Complex adjoints need conjugated copies; matrixmultiply only handles
    // the transpose through strides.
    let conj_a;
    let conj_b;
    let (a_ptr, (ars, acs), m, k) = match op_a {
        Op::N => (a.as_ptr(), a.strides(), a.nrows(), a.ncols()),
        Op::C if T::FIELD == super::Field::Real => {
            let (rs, cs) = a.strides();
            (a.as_ptr(), (cs, rs), a.ncols(), a.nrows())
        }
        Op::C => {
            conj_a = a.map(|x| x.conjugate());
            let (rs, cs) = conj_a.strides();
            (conj_a.as_ptr(), (cs, rs), a.ncols(), a.nrows())
        }
    };
    let (b_ptr, (brs, bcs), kb, n) = match op_b {
        Op::N => (b.as_ptr(), b.strides(), b.nrows(), b.ncols()),
        Op::C if T::FIELD == super::Field::Real => {
            let (rs, cs) = b.strides();
            (b.as_ptr(), (cs, rs), b.ncols(), b.nrows())
        }
        Op::C => {
            conj_b = b.map(|x| x.conjugate());
            let (rs, cs) = conj_b.strides();
            (conj_b.as_ptr(), (cs, rs), b.ncols(), b.nrows())
        }
    };
    assert_eq!(k, kb, "gemm inner dimensions differ");
    assert_eq!((c.nrows(), c.ncols()), (m, n), "gemm output shape mismatch");

    if m == 0 || n == 0 {
        return;
    }
    if k == 0 {
        if beta == T::zero() {
            c.fill(T::zero());
        } else {
            for x in c.iter_mut() {
                *x *= beta;
            }
        }
        return;
    }
    let (crs, ccs) = c.strides();
    let c_ptr = c.as_mut_ptr();
    // SAFETY: shapes were checked above; strides come from nalgebra storage
    // describing exactly these shapes; `c` is borrowed mutably so it cannot
    // alias `a` or `b`.
    unsafe {
        T::gemm_raw(
            m, k, n, alpha, a_ptr, ars as isize, acs as isize, b_ptr, brs as isize, bcs as isize,
            beta, c_ptr, crs as isize, ccs as isize,
        );
    }
}

/// `op(A) * op(B)` into a fresh matrix.
pub(crate) fn mul<T, SA, SB>(a: &Mat<T, SA>, op_a: Op, b: &Mat<T, SB>, op_b: Op) -> DMatrix<T>
where
    T: Scalar,
    SA: RawStorage<T, Dyn, Dyn>,
    SB: RawStorage<T, Dyn, Dyn>,
{
    let m = if op_a == Op::N { a.nrows() } else { a.ncols() };
    let n = if op_b == Op::N { b.ncols() } else { b.nrows() };
    let mut c = DMatrix::zeros(m, n);
    gemm(T::one(), a, op_a, b, op_b, T::zero(), &mut c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn matches_nalgebra_products() {
        let a = DMatrix::from_fn(4, 3, |i, j| (i as f64) - 2.0 * (j as f64) + 0.5);
        let b = DMatrix::from_fn(4, 2, |i, j| (i * j) as f64 + 1.0);
        let got = mul(&a, Op::C, &b, Op::N);
        let want = a.transpose() * &b;
        assert!((got - want).norm() < 1e-12);

        let got = mul(&b, Op::C, &a, Op::N);
        assert!((got - b.transpose() * &a).norm() < 1e-12);
    }

    #[test]
    fn complex_adjoint_conjugates() {
        let a = DMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 + 1.0));
        let b = DMatrix::from_fn(3, 3, |i, j| Complex64::new((i + j) as f64, -(i as f64)));
        let got = mul(&a, Op::C, &b, Op::N);
        let want = a.adjoint() * &b;
        assert!((got - want).norm() < 1e-12);
        let got = mul(&b, Op::N, &a, Op::N);
        assert!((got - &b * &a).norm() < 1e-12);
        let got = mul(&b, Op::N, &b, Op::C);
        assert!((got - &b * b.adjoint()).norm() < 1e-12);
    }

    #[test]
    fn works_on_strided_views() {
        let big = DMatrix::from_fn(6, 6, |i, j| (i * 6 + j) as f64);
        let a = big.view((1, 2), (3, 2));
        let b = big.view((0, 0), (3, 4));
        let got = mul(&a, Op::C, &b, Op::N);
        let want = a.transpose() * b;
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn empty_inner_dimension_scales_output() {
        let a = DMatrix::<f64>::zeros(3, 0);
        let b = DMatrix::<f64>::zeros(0, 2);
        let mut c = DMatrix::from_element(3, 2, 5.0);
        gemm(1.0, &a, Op::N, &b, Op::N, 0.0, &mut c);
        assert!(c.iter().all(|&x| x == 0.0));
    }
}
