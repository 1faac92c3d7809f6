//! Full GSVD factors of a complex pair and their reconstruction residuals.
//! The randomized residuals sit at the extraction tolerance, the direct ones
//! at roundoff.

use num_complex::Complex64;
use rgsv::matrix::{frobenius_norm, gaussian_matrix};
use rgsv::{recover_gsvd, GmpPair, GsvOptions, Method, Result};

fn main() -> Result<()> {
    let pair = GmpPair::<Complex64>::new(gaussian_matrix(80, 40, 1)?, gaussian_matrix(60, 40, 2)?)?;
    for method in [Method::Randomized, Method::Direct] {
        let factors = recover_gsvd(&pair, &GsvOptions::default().with_method(method))?;
        let (e1, e2) = factors.reconstruction_residuals(&pair);
        println!(
            "{method}: U {}x{}, V {}x{}, R {}x{}, relative residuals G1 {:.2e}, G2 {:.2e}",
            factors.u.rows(),
            factors.u.cols(),
            factors.v.rows(),
            factors.v.cols(),
            factors.r_factor.rows(),
            factors.r_factor.cols(),
            e1 / frobenius_norm(pair.g1()),
            e2 / frobenius_norm(pair.g2())
        );
    }
    Ok(())
}
