//! Adaptive randomized basis of a low-rank matrix, with its residual history.

use rgsv::matrix::{frobenius_norm, gaussian_matrix};
use rgsv::range_finder::residual_norm;
use rgsv::{extract_basis, ExtractionConfig, RealMatrix, Result, Tolerance};

fn main() -> Result<()> {
    let left: RealMatrix = gaussian_matrix(500, 60, 1)?;
    let right: RealMatrix = gaussian_matrix(60, 300, 2)?;
    let g = left.matmul(&right)?;

    let cfg = ExtractionConfig::default()
        .with_blocksize(16)
        .with_tol(Tolerance::Relative(1e-10))
        .with_seed(42);
    let basis = extract_basis(&g, &cfg)?;

    println!("width {} after {} blocks, converged: {}", basis.width(), basis.iterations, basis.converged);
    for (i, r) in basis.residual_history.iter().enumerate() {
        println!("  iteration {i:2}: residual {r:.3e}");
    }
    let explicit = residual_norm(&g, &basis.q)?;
    println!("explicit residual {:.3e} (relative {:.3e})", explicit, explicit / frobenius_norm(&g));
    Ok(())
}
