//! Relative significance, angular distances, eigenexpression fractions and
//! entropies for two data sets sharing their columns.

use rgsv::io::{render_report, ReportFormat};
use rgsv::synth::{synth_gmp, SynthSpec};
use rgsv::{compare, GsvOptions, Result};

fn main() -> Result<()> {
    let data = synth_gmp::<f64>(&SynthSpec::new(120, 100, 12).with_rank_frac(0.75).with_seed(9))?;
    let report = compare(&data.pair, &GsvOptions::default())?;

    println!("entropy D1 = {:.4}, D2 = {:.4}", report.d1, report.d2);
    for l in 0..report.n() {
        println!(
            "  {l:2}: rho {:>10.3e}  theta {:+.4}  P1 {:.4}  P2 {:.4}",
            report.rho[l], report.theta[l], report.p1[l], report.p2[l]
        );
    }
    print!("{}", render_report(&report, ReportFormat::Csv)?);
    Ok(())
}
