//! Blocked Householder QR (compact WY representation).
//!
//! Reflectors follow the LAPACK `larfg` convention: `H = I - τ v vᴴ` with
//! `v₀ = 1` and `Hᴴ x = β e₁`, `β` real. The panel reflectors are
//! accumulated into `I - V T Vᴴ` so trailing updates and the formation of
//! the thin Q factor run through GEMM.

use nalgebra::{DMatrix, DVector};

use super::blas::{self, Op};
use super::{DenseMatrix, Scalar};

const PANEL: usize = 32;

/// Thin QR factors: `q` is `rows x k` with orthonormal columns, `r` is
/// `k x cols` upper triangular with a nonnegative real diagonal,
/// `k = min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct QrFactors<T: Scalar> {
    pub q: DenseMatrix<T>,
    pub r: DenseMatrix<T>,
}

/// Reduced QR of any shape. Rank-deficient input is fine; trailing
/// diagonal entries of `r` are then near zero.
pub fn reduced_qr<T: Scalar>(m: &DenseMatrix<T>) -> QrFactors<T> {
    let (q, r) = householder_qr(m.inner().clone());
    QrFactors {
        q: DenseMatrix::from_inner(q),
        r: DenseMatrix::from_inner(r),
    }
}

struct Block<T: Scalar> {
    start: usize,
    v: DMatrix<T>,
    t: DMatrix<T>,
}

pub(crate) fn householder_qr<T: Scalar>(mut a: DMatrix<T>) -> (DMatrix<T>, DMatrix<T>) {
    let (m, n) = a.shape();
    let k = m.min(n);
    let mut blocks = Vec::with_capacity(k.div_ceil(PANEL));

    let mut j0 = 0;
    while j0 < k {
        let nb = PANEL.min(k - j0);
        let mut tau = Vec::with_capacity(nb);
        for j in j0..j0 + nb {
            tau.push(factor_column(&mut a, j, j0 + nb));
        }

        // Explicit unit lower-trapezoidal V for this panel.
        let rows = m - j0;
        let mut v = DMatrix::<T>::zeros(rows, nb);
        for c in 0..nb {
            v[(c, c)] = T::one();
            for i in c + 1..rows {
                v[(i, c)] = a[(j0 + i, j0 + c)];
            }
        }
        let t = form_t(&v, &tau);

        if j0 + nb < n {
            let cols = n - j0 - nb;
            // C <- (I - V T Vᴴ)ᴴ C = C - V Tᴴ (Vᴴ C)
            let w = {
                let c = a.view((j0, j0 + nb), (rows, cols));
                blas::mul(&v, Op::C, &c, Op::N)
            };
            let tw = blas::mul(&t, Op::C, &w, Op::N);
            let mut c = a.view_mut((j0, j0 + nb), (rows, cols));
            blas::gemm(-T::one(), &v, Op::N, &tw, Op::N, T::one(), &mut c);
        }
        blocks.push(Block { start: j0, v, t });
        j0 += nb;
    }

    let mut r = DMatrix::<T>::zeros(k, n);
    for j in 0..n {
        for i in 0..k.min(j + 1) {
            r[(i, j)] = a[(i, j)];
        }
    }

    let mut q = DMatrix::<T>::zeros(m, k);
    for i in 0..k {
        q[(i, i)] = T::one();
    }
    for b in blocks.iter().rev() {
        let rows = m - b.start;
        let cols = k - b.start;
        let w = {
            let c = q.view((b.start, b.start), (rows, cols));
            blas::mul(&b.v, Op::C, &c, Op::N)
        };
        let tw = blas::mul(&b.t, Op::N, &w, Op::N);
        let mut c = q.view_mut((b.start, b.start), (rows, cols));
        blas::gemm(-T::one(), &b.v, Op::N, &tw, Op::N, T::one(), &mut c);
    }

    // Phase convention: nonnegative real diagonal of R.
    for i in 0..k {
        let d = r[(i, i)];
        let modulus = d.modulus();
        if modulus > 0.0 && (d.imaginary() != 0.0 || d.real() < 0.0) {
            let phase = d.scale(1.0 / modulus);
            let conj = phase.conjugate();
            for j in i..n {
                r[(i, j)] *= conj;
            }
            r[(i, i)] = T::from_real(modulus);
            for x in q.column_mut(i).iter_mut() {
                *x *= phase;
            }
        }
    }

    (q, r)
}

/// Builds the reflector for column `j` (rows `j..`), stores `β` on the
/// diagonal and `v[1..]` below it, and applies `Hᴴ` to columns
/// `j+1..panel_end`. Returns `τ`.
fn factor_column<T: Scalar>(a: &mut DMatrix<T>, j: usize, panel_end: usize) -> T {
    let m = a.nrows();
    let alpha = a[(j, j)];
    let xnorm = if j + 1 < m {
        a.view((j + 1, j), (m - j - 1, 1)).norm()
    } else {
        0.0
    };
    if xnorm == 0.0 && alpha.imaginary() == 0.0 {
        return T::zero();
    }
    let norm = alpha.modulus().hypot(xnorm);
    let beta = if alpha.real() >= 0.0 { -norm } else { norm };
    let beta_t = T::from_real(beta);
    let tau = (beta_t - alpha) / beta_t;
    let scale = T::one() / (alpha - beta_t);
    for i in j + 1..m {
        a[(i, j)] *= scale;
    }
    a[(j, j)] = beta_t;

    if j + 1 < panel_end {
        let tau_c = tau.conjugate();
        let v: DVector<T> = DVector::from_fn(m - j, |i, _| if i == 0 { T::one() } else { a[(j + i, j)] });
        for c in j + 1..panel_end {
            let mut col = a.column_mut(c);
            let mut col = col.rows_mut(j, m - j);
            let w = v.dotc(&col);
            col.axpy(-tau_c * w, &v, T::one());
        }
    }
    tau
}

/// Upper triangular `T` with `H₁⋯H_b = I - V T Vᴴ` (forward, columnwise).
fn form_t<T: Scalar>(v: &DMatrix<T>, tau: &[T]) -> DMatrix<T> {
    let nb = tau.len();
    let mut t = DMatrix::<T>::zeros(nb, nb);
    for i in 0..nb {
        t[(i, i)] = tau[i];
        if i == 0 || tau[i] == T::zero() {
            continue;
        }
        let z = blas::mul(&v.columns(0, i), Op::C, &v.columns(i, 1), Op::N);
        let z = z.map(|x| -tau[i] * x);
        let tz = t.view((0, 0), (i, i)) * z;
        t.view_mut((0, i), (i, 1)).copy_from(&tz);
    }
    t
}
