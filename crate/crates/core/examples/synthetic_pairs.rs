//! Synthetic pairs with prescribed ranks and their block structure.

use num_complex::Complex64;
use rgsv::synth::{synth_gmp, synth_gmp_with_ranks, SynthSpec};
use rgsv::{Field, Result};

fn main() -> Result<()> {
    for frac in [0.5, 0.6, 0.8, 1.0] {
        let spec = SynthSpec::new(200, 200, 150).with_rank_frac(frac).with_seed(1);
        let data = synth_gmp::<f64>(&spec)?;
        let s = &data.true_spectrum;
        println!(
            "rank fraction {frac}: rank {}, r = {}, s = {}, cond(R) = {:.2e}",
            spec.rank(),
            s.r(),
            s.s(),
            data.condition_r
        );
    }

    let data = synth_gmp_with_ranks::<Complex64>(100, 150, 120, 70, 110, 4, Field::Complex)?;
    let s = &data.true_spectrum;
    println!("complex, ranks 70/110: r = {}, s = {}, n = {}", s.r(), s.s(), s.n());

    let err = synth_gmp::<f64>(&SynthSpec::new(10, 10, 50)).unwrap_err();
    println!("infeasible request: {err}");
    Ok(())
}
