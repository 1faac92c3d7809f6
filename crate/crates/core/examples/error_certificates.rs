//! Error certificate of a truncated randomized run and the expected projector
//! residual bound compared against Monte Carlo trials.

use rgsv::bounds::{certify_run, projector_bound, projector_trials, Which};
use rgsv::synth::gmp_from_spectrum;
use rgsv::{ExtractionConfig, GsvOptions, GsvSpectrum, Result, Tolerance};

fn main() -> Result<()> {
    let alphas: Vec<f64> = (0..60).map(|j| 0.95 * 0.8f64.powi(j)).collect();
    let spectrum = GsvSpectrum::from_alphas(alphas, 1e-10)?;
    let data = gmp_from_spectrum::<f64>(&spectrum, 80, 80, 3)?;

    let opts = GsvOptions::default().with_extraction(
        ExtractionConfig::default()
            .with_blocksize(10)
            .with_tol(Tolerance::Relative(1e-4)),
    );
    let run = certify_run(&data.pair, &opts)?;
    let c = &run.certificate;
    println!("perturbation {:.3e}, E = {:.3e}, vacuous: {}", run.delta_norm, c.e_script, c.vacuous);
    println!("actual max GSV error {:.3e}", run.spectrum.max_deviation(&data.true_spectrum));
    println!("theta bound {:.3e}, D1 bound {:.3e}, D2 bound {:.3e}", c.theta_bound, c.d1_bound, c.d2_bound);

    let (k, over) = (10, 5);
    let bound = projector_bound(&data.pair, &data.true_spectrum, k, over, Which::First)?;
    let trials = projector_trials(data.pair.g1(), k, over, 50, 11)?;
    let mean = trials.iter().sum::<f64>() / trials.len() as f64;
    println!("projector residual: mean {mean:.3e}, bound {bound:.3e}, ratio {:.3}", mean / bound);
    Ok(())
}
