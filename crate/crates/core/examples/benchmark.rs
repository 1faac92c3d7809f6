//! Median wall time of the randomized and direct methods on a pair where one
//! matrix has low rank.

use rgsv::io::{bench_pair, median_seconds};
use rgsv::synth::synth_gmp_with_ranks;
use rgsv::{Field, GsvOptions, Method, Result};

fn main() -> Result<()> {
    let data = synth_gmp_with_ranks::<f64>(1200, 1200, 400, 40, 380, 1, Field::Real)?;
    let records = bench_pair(&data.pair, &GsvOptions::default(), 3, &[Method::Randomized, Method::Direct])?;
    for r in &records {
        println!(
            "{:10} rep {} l1 {:4} l2 {:4} {:.3}s error {:.1e}",
            r.method.to_string(),
            r.rep,
            r.l1,
            r.l2,
            r.seconds,
            r.spectrum_error.unwrap_or(f64::NAN)
        );
    }
    let fast = median_seconds(&records, Method::Randomized).unwrap();
    let slow = median_seconds(&records, Method::Direct).unwrap();
    println!("median randomized {fast:.3}s, direct {slow:.3}s, speedup {:.2}x", slow / fast);
    Ok(())
}
