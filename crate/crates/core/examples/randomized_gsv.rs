//! Generalized singular values of a synthetic pair by the randomized and the
//! direct method, compared against the known ground truth.

use rgsv::synth::{synth_gmp, SynthSpec};
use rgsv::{compute_gsv, GsvOptions, Method, Result};

fn main() -> Result<()> {
    let truth = synth_gmp::<f64>(&SynthSpec::new(400, 300, 250).with_rank_frac(0.6).with_seed(5))?;
    let opts = GsvOptions::default();

    let randomized = compute_gsv(&truth.pair, &opts)?;
    let direct = compute_gsv(&truth.pair, &opts.clone().with_method(Method::Direct))?;

    println!("r = {}, s = {}", randomized.r(), randomized.s());
    println!("randomized vs truth: {:.2e}", randomized.max_deviation(&truth.true_spectrum));
    println!("direct vs truth:     {:.2e}", direct.max_deviation(&truth.true_spectrum));
    println!("Pythagorean defect:  {:.2e}", randomized.max_pythagorean_defect());
    for (a, b) in randomized.alphas().iter().zip(randomized.betas()).step_by(25) {
        println!("  alpha {a:.6}  beta {b:.6}");
    }
    Ok(())
}
