use std::path::Path;

use num_complex::Complex64;
use proptest::prelude::*;

use rgsv::analysis::{angular_distances, shannon_entropy};
use rgsv::bounds::quantity_error_bounds;
use rgsv::io::{parse_matrix, render_report, AnyMatrix, Report, ReportFormat};
use rgsv::matrix::{frobenius_norm, gaussian_matrix, reduced_qr, svd, Scalar};
use rgsv::range_finder::residual_norm;
use rgsv::synth::synth_gmp_with_ranks;
use rgsv::{
    compute_gsv, extract_basis, ComparativeReport, DenseMatrix, ExtractionConfig, Field, GmpPair, GsvOptions,
    GsvSpectrum, Method, Tolerance,
};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn orthogonality_defect<T: Scalar>(q: &DenseMatrix<T>) -> f64 {
    let g = q.adjoint_matmul(q).unwrap();
    let mut worst = 0.0f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - T::from_real(target)).modulus());
        }
    }
    worst
}

fn seeded(seed: u64, tol: Tolerance) -> GsvOptions {
    GsvOptions::default().with_extraction(ExtractionConfig::default().with_seed(seed).with_tol(tol))
}

fn random_pair<T: Scalar>(m: usize, p: usize, n: usize, seed: u64) -> GmpPair<T> {
    GmpPair::new(
        gaussian_matrix(m, n, seed).unwrap(),
        gaussian_matrix(p, n, seed ^ 0x5151).unwrap(),
    )
    .unwrap()
}

fn sorted_alphas() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..=1.0, 2..12).prop_map(|mut v| {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    })
}

fn probability_vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, 2..20)
        .prop_filter("nonzero mass", |v| v.iter().sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let s: f64 = v.iter().sum();
            v.into_iter().map(|x| x / s).collect()
        })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn qr_factors_are_orthonormal(rows in 1usize..40, cols in 1usize..40, seed in any::<u64>()) {
        let m: DenseMatrix<f64> = gaussian_matrix(rows, cols, seed).unwrap();
        let qr = reduced_qr(&m);
        prop_assert!(orthogonality_defect(&qr.q) <= 1e-12);
        for i in 0..qr.r.rows().min(qr.r.cols()) {
            prop_assert!(qr.r[(i, i)] >= 0.0);
        }
        let back = qr.q.matmul(&qr.r).unwrap().sub(&m).unwrap();
        prop_assert!(frobenius_norm(&back) <= 1e-12 * frobenius_norm(&m).max(1.0));
    }

    #[test]
    fn frobenius_norm_is_unitarily_invariant(rows in 2usize..30, cols in 1usize..20, seed in any::<u64>()) {
        let m: DenseMatrix<Complex64> = gaussian_matrix(rows, cols, seed).unwrap();
        let u = reduced_qr(&gaussian_matrix::<Complex64>(rows, rows, seed.wrapping_add(1)).unwrap()).q;
        let a = frobenius_norm(&m);
        let b = frobenius_norm(&u.matmul(&m).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn singular_values_carry_the_frobenius_mass(rows in 1usize..40, cols in 1usize..40, seed in any::<u64>()) {
        let m: DenseMatrix<Complex64> = gaussian_matrix(rows, cols, seed).unwrap();
        let f = svd(&m).unwrap();
        let mass: f64 = f.s.iter().map(|s| s * s).sum();
        let norm2 = frobenius_norm(&m).powi(2);
        prop_assert!((mass - norm2).abs() <= 1e-10 * norm2);
        prop_assert!(f.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn gaussian_matrices_are_reproducible(rows in 1usize..20, cols in 1usize..20, seed in any::<u64>()) {
        let a: DenseMatrix<f64> = gaussian_matrix(rows, cols, seed).unwrap();
        let b: DenseMatrix<f64> = gaussian_matrix(rows, cols, seed).unwrap();
        for i in 0..rows {
            for j in 0..cols {
                prop_assert_eq!(a[(i, j)].to_bits(), b[(i, j)].to_bits());
            }
        }
    }

    #[test]
    fn basis_residuals_shrink_and_agree(rank in 1usize..25, block in 1usize..8, seed in any::<u64>()) {
        let (m, n) = (40, 30);
        let left: DenseMatrix<f64> = gaussian_matrix(m, rank, seed).unwrap();
        let right: DenseMatrix<f64> = gaussian_matrix(rank, n, seed ^ 7).unwrap();
        let g = left.matmul(&right).unwrap();
        let norm = frobenius_norm(&g);
        let cfg = ExtractionConfig::default()
            .with_blocksize(block)
            .with_seed(seed)
            .with_tol(Tolerance::Relative(1e-12));
        let basis = extract_basis(&g, &cfg).unwrap();
        prop_assert!(basis.converged);
        prop_assert!(orthogonality_defect(&basis.q) <= 1e-11 * (basis.width() as f64).sqrt().max(1.0));
        prop_assert!(basis.residual_history.windows(2).all(|w| w[1] <= w[0] + 1e-8 * norm));
        let explicit = residual_norm(&g, &basis.q).unwrap();
        prop_assert!((explicit - basis.final_residual()).abs() <= 1e-8 * norm);
        prop_assert!(explicit <= 1e-10 * norm);
    }

    #[test]
    fn tighter_tolerance_never_raises_the_residual(seed in any::<u64>()) {
        let result = synth_gmp_with_ranks::<f64>(60, 60, 50, 30, 50, seed, Field::Real).unwrap();
        let g = result.pair.g1();
        let mut last = f64::INFINITY;
        for k in [2, 4, 6, 8, 10, 12] {
            let cfg = ExtractionConfig::default()
                .with_blocksize(4)
                .with_seed(seed)
                .with_tol(Tolerance::Relative(10f64.powi(-k)));
            let r = extract_basis(g, &cfg).unwrap().final_residual();
            prop_assert!(r <= last);
            last = r;
        }
    }

    #[test]
    fn spectra_are_ordered_and_pythagorean(m in 12usize..40, p in 12usize..40, n in 2usize..12, seed in any::<u64>(), complex in any::<bool>()) {
        let opts = seeded(seed, Tolerance::Relative(1e-10));
        let s = if complex {
            compute_gsv(&random_pair::<Complex64>(m, p, n, seed), &opts).unwrap()
        } else {
            compute_gsv(&random_pair::<f64>(m, p, n, seed), &opts).unwrap()
        };
        prop_assert!(s.max_pythagorean_defect() <= 1e-12);
        prop_assert!(s.alphas().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.betas().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn randomized_matches_direct(m in 5usize..40, p in 5usize..40, n in 2usize..12, seed in any::<u64>()) {
        let n = n.min(m + p - 1);
        let pair = random_pair::<f64>(m, p, n, seed);
        let opts = seeded(seed, Tolerance::Relative(1e-12));
        let a = compute_gsv(&pair, &opts).unwrap();
        let b = compute_gsv(&pair, &opts.clone().with_method(Method::Direct)).unwrap();
        prop_assert!(a.max_deviation(&b) <= 1e-8);
    }

    #[test]
    fn spectrum_is_scale_covariant(seed in any::<u64>(), up in any::<bool>()) {
        let pair = random_pair::<f64>(30, 25, 10, seed);
        let c = if up { 1e3 } else { 1e-3 };
        let opts = seeded(seed, Tolerance::Relative(1e-10));
        let a = compute_gsv(&pair, &opts).unwrap();
        let b = compute_gsv(&pair.scaled(c).unwrap(), &opts).unwrap();
        prop_assert!(a.max_deviation(&b) <= 1e-10);
    }

    #[test]
    fn swapping_the_pair_negates_reversed_angles(alphas in sorted_alphas()) {
        let s = GsvSpectrum::from_alphas(alphas, 1e-10).unwrap();
        let swapped = GsvSpectrum::from_alphas(s.betas().iter().rev().copied().collect(), 1e-10).unwrap();
        let t = angular_distances(&s);
        let u = angular_distances(&swapped);
        for (x, y) in t.iter().zip(u.iter().rev()) {
            prop_assert!((x + y).abs() <= 1e-10);
        }
        prop_assert!(t.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn entropy_is_normalized_and_symmetric(p in probability_vector(), shift in any::<prop::sample::Index>()) {
        let d = shannon_entropy(&p).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        let mut q = p.clone();
        q.rotate_left(shift.index(p.len()));
        prop_assert!((shannon_entropy(&q).unwrap() - d).abs() <= 1e-12);
        let uniform = vec![1.0 / p.len() as f64; p.len()];
        prop_assert!(shannon_entropy(&uniform).unwrap() >= d - 1e-12);
    }

    #[test]
    fn comparative_fractions_are_distributions(alphas in sorted_alphas()) {
        let s = GsvSpectrum::from_alphas(alphas, 1e-10).unwrap();
        let prop_ok = |v: &[f64]| v.iter().all(|x| *x >= 0.0) && (v.iter().sum::<f64>() - 1.0).abs() <= 1e-10;
        prop_assume!(s.alphas().iter().any(|a| *a > 0.0) && s.betas().iter().any(|b| *b > 0.0));
        let meta = rgsv::analysis::ReportMeta::from_options(&GsvOptions::default());
        let r = ComparativeReport::from_spectrum(s, meta).unwrap();
        prop_assert!(prop_ok(&r.p1) && prop_ok(&r.p2));
        prop_assert!((0.0..=1.0).contains(&r.d1) && (0.0..=1.0).contains(&r.d2));
    }

    #[test]
    fn bounds_grow_at_most_linearly(alphas in sorted_alphas(), e in 1e-9f64..0.2) {
        let s = GsvSpectrum::from_alphas(alphas, 1e-10).unwrap();
        let a = quantity_error_bounds(&s, e);
        let b = quantity_error_bounds(&s, 2.0 * e);
        prop_assert!(b.theta_bound >= a.theta_bound);
        let within = |x: f64, y: f64| y <= 2.0 * x * (1.0 + 1e-12) + 1e-300;
        for (x, y) in a.p1_bounds.iter().zip(&b.p1_bounds).chain(a.p2_bounds.iter().zip(&b.p2_bounds)) {
            prop_assert!(within(*x, *y));
        }
        prop_assert!(within(a.d1_bound, b.d1_bound) && within(a.d2_bound, b.d2_bound));
    }

    #[test]
    fn reports_round_trip(alphas in sorted_alphas(), json in any::<bool>()) {
        let s = GsvSpectrum::from_alphas(alphas, 1e-10).unwrap();
        prop_assume!(s.alphas().iter().any(|a| *a > 0.0) && s.betas().iter().any(|b| *b > 0.0));
        let meta = rgsv::analysis::ReportMeta::from_options(&GsvOptions::default());
        let r = ComparativeReport::from_spectrum(s, meta).unwrap();
        let format = if json { ReportFormat::Json } else { ReportFormat::Csv };
        let text = render_report(&r, format).unwrap();
        let back: ComparativeReport = match format {
            ReportFormat::Json => serde_json::from_str(&text).unwrap(),
            ReportFormat::Csv => ComparativeReport::from_csv(&text, Path::new("mem.csv")).unwrap(),
        };
        prop_assert_eq!(back, r);
    }

    #[test]
    fn matrix_market_round_trips_bitwise(rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.mtx");
        let m: DenseMatrix<Complex64> = gaussian_matrix(rows, cols, seed).unwrap();
        rgsv::io::write_matrix(&m, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        match parse_matrix(&text, &path).unwrap() {
            AnyMatrix::Complex(back) => {
                for i in 0..rows {
                    for j in 0..cols {
                        prop_assert_eq!(back[(i, j)], m[(i, j)]);
                    }
                }
            }
            AnyMatrix::Real(_) => prop_assert!(false, "field changed"),
        }
    }
}
