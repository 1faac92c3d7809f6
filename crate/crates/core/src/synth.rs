//! Synthetic matrix pairs with a known generalized singular spectrum.
//!
//! `G₁ = U★ diag(α★) R★` and `G₂ = V★ diag(β★) R★` with Gaussian `R★` and
//! orthonormalized Gaussian `U★`, `V★`. Only the columns of `U★` (`V★`)
//! paired with a nonzero `α★` (`β★`) are materialized, so `m` and `p` may
//! be smaller than `n`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gsv::{GmpPair, GsvSpectrum};
use crate::matrix::blas::{self, Op};
use crate::matrix::{derive_seed, gaussian_matrix, householder_qr, singular_values_of, DenseMatrix, Field, Scalar};

/// Snapping threshold used when building the ground-truth spectrum.
const TRUTH_CLASSIFY_TOL: f64 = 1e-10;

/// Interior draws closer than this to 0 or 1 are redrawn so they cannot be
/// mistaken for the exact blocks.
const INTERIOR_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub m: usize,
    pub p: usize,
    pub n: usize,
    /// Rank of each matrix as a fraction of `min(m, p, n)`.
    pub rank_frac: f64,
    pub seed: u64,
    pub field: Field,
}

impl SynthSpec {
    pub fn new(m: usize, p: usize, n: usize) -> Self {
        Self {
            m,
            p,
            n,
            rank_frac: 0.6,
            seed: 0,
            field: Field::Real,
        }
    }

    pub fn with_rank_frac(mut self, rank_frac: f64) -> Self {
        self.rank_frac = rank_frac;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    /// `⌊rank_frac · min(m, p, n)⌋`, shared by both matrices.
    pub fn rank(&self) -> usize {
        (self.rank_frac * self.m.min(self.p).min(self.n) as f64).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.p == 0 || self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "synthetic sizes need m, p >= 1 and n >= 2, got ({}, {}, {})",
                self.m, self.p, self.n
            )));
        }
        if !(self.rank_frac > 0.0 && self.rank_frac <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rank_frac must lie in (0, 1], got {}",
                self.rank_frac
            )));
        }
        if self.rank() == 0 {
            return Err(Error::InfeasibleSynth(format!(
                "rank_frac {} gives rank 0 for min(m, p, n) = {}",
                self.rank_frac,
                self.m.min(self.p).min(self.n)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SynthResult<T: Scalar> {
    pub pair: GmpPair<T>,
    pub true_spectrum: GsvSpectrum,
    /// `κ₂(R★)`.
    pub condition_r: f64,
}

/// Generates a pair whose two matrices both have rank `spec.rank()`.
///
/// The ground truth has `n - rank` exact zeros in `α★`, `n - rank` exact
/// zeros in `β★`, and `2·rank - n` interior values drawn uniformly from
/// `(0, 1)` and sorted nonincreasing.
pub fn synth_gmp<T: Scalar>(spec: &SynthSpec) -> Result<SynthResult<T>> {
    spec.validate()?;
    let rank = spec.rank();
    synth_gmp_with_ranks(spec.m, spec.p, spec.n, rank, rank, spec.seed, spec.field)
}

/// Like [`synth_gmp`] with independent ranks for the two matrices.
pub fn synth_gmp_with_ranks<T: Scalar>(
    m: usize,
    p: usize,
    n: usize,
    rank1: usize,
    rank2: usize,
    seed: u64,
    field: Field,
) -> Result<SynthResult<T>> {
    if field != T::FIELD {
        return Err(Error::InvalidConfig(format!(
            "requested a {field} pair from a {} generator",
            T::FIELD
        )));
    }
    if rank1 == 0 || rank2 == 0 || rank1 > m.min(n) || rank2 > p.min(n) {
        return Err(Error::InfeasibleSynth(format!(
            "ranks ({rank1}, {rank2}) do not fit sizes ({m}, {p}, {n})"
        )));
    }
    if rank1 + rank2 < n {
        return Err(Error::InfeasibleSynth(format!(
            "rank(G1) + rank(G2) = {} < n = {n}: the stacked matrix would be rank deficient",
            rank1 + rank2
        )));
    }
    let ones = n - rank2;
    let zeros = n - rank1;
    let interior = n - ones - zeros;

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0));
    let mut draws: Vec<f64> = (0..interior)
        .map(|_| loop {
            let u: f64 = rng.random();
            if u > INTERIOR_MARGIN && u < 1.0 - INTERIOR_MARGIN {
                break u;
            }
        })
        .collect();
    draws.sort_by(|a, b| b.total_cmp(a));

    let mut alphas = vec![1.0; ones];
    alphas.extend(draws);
    alphas.resize(n, 0.0);
    let spectrum = GsvSpectrum::from_alphas(alphas, TRUTH_CLASSIFY_TOL)?;
    gmp_from_spectrum(&spectrum, m, p, seed)
}

/// Builds a pair with a prescribed ground-truth spectrum. Requires `m`
/// (`p`) to be at least the number of nonzero `α` (`β`).
pub fn gmp_from_spectrum<T: Scalar>(
    spectrum: &GsvSpectrum,
    m: usize,
    p: usize,
    seed: u64,
) -> Result<SynthResult<T>> {
    let n = spectrum.n();
    let k1 = spectrum.alphas().iter().filter(|&&a| a > 0.0).count();
    let k2 = spectrum.betas().iter().filter(|&&b| b > 0.0).count();
    if k1 > m || k2 > p || k1 == 0 || k2 == 0 {
        return Err(Error::InfeasibleSynth(format!(
            "spectrum with {k1} nonzero alphas and {k2} nonzero betas does not fit m = {m}, p = {p}"
        )));
    }

    let r_star = gaussian_matrix::<T>(n, n, derive_seed(seed, 1))?.into_inner();
    let sv = singular_values_of(&r_star)?;
    let condition_r = sv[0] / sv[n - 1];

    // Nonzero alphas lead, nonzero betas trail.
    let g1 = factor(m, &spectrum.alphas()[..k1], r_star.rows(0, k1).into_owned(), derive_seed(seed, 2))?;
    let g2 = factor(
        p,
        &spectrum.betas()[n - k2..],
        r_star.rows(n - k2, k2).into_owned(),
        derive_seed(seed, 3),
    )?;
    let pair = GmpPair::new(DenseMatrix::from_inner(g1), DenseMatrix::from_inner(g2))?;
    Ok(SynthResult {
        pair,
        true_spectrum: spectrum.clone(),
        condition_r,
    })
}

/// `W diag(d) R_rows` with `W` an orthonormalized `rows x len(d)` Gaussian.
fn factor<T: Scalar>(rows: usize, d: &[f64], mut r_rows: DMatrix<T>, seed: u64) -> Result<DMatrix<T>> {
    let w = householder_qr(gaussian_matrix::<T>(rows, d.len(), seed)?.into_inner()).0;
    for (i, &x) in d.iter().enumerate() {
        r_rows.row_mut(i).scale_mut(x);
    }
    Ok(blas::mul(&w, Op::N, &r_rows, Op::N))
}
