//! Writing and reading pairs as Matrix Market and CSV files, then running
//! the computation on what was read back.

use rgsv::io::{read_matrix, write_matrix, write_matrix_csv, AnyPair};
use rgsv::matrix::gaussian_matrix;
use rgsv::{compute_gsv, GsvOptions, RealMatrix, Result};

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("rgsv-matrix-io");
    std::fs::create_dir_all(&dir).map_err(|e| rgsv::Error::Io { path: dir.clone(), source: e })?;

    let g1: RealMatrix = gaussian_matrix(30, 10, 1)?;
    let g2: RealMatrix = gaussian_matrix(20, 10, 2)?;
    write_matrix(&g1, dir.join("g1.mtx"))?;
    write_matrix_csv(&g2, dir.join("g2.csv"))?;

    let pair = AnyPair::from_matrices(read_matrix(dir.join("g1.mtx"))?, read_matrix(dir.join("g2.csv"))?)?;
    println!("read a {:?} pair with dims {:?}", pair.field(), pair.dims());
    if let AnyPair::Real(p) = &pair {
        let exact = p.g1().sub(&g1)?;
        println!("round trip exact: {}", exact.inner().iter().all(|x| *x == 0.0));
        let s = compute_gsv(p, &GsvOptions::default())?;
        println!("largest alpha {:.6}, smallest {:.6}", s.alphas()[0], s.alphas()[s.n() - 1]);
    }
    println!("files in {}", dir.display());
    Ok(())
}
