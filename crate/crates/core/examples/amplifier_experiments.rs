//! Runs the nonlinear amplifier experiments: mild (B = 0.75), moderate
//! (B = 1), severe (B = 1.3) distortion and the erroneous model at B = 1,
//! printing ψ and the SNR per iteration for post- and pre-linearization.
//!
//! ```text
//! cargo run --release --example amplifier_experiments
//! ```

use voltlin::harness::{run_scenario, AmplifierConfig, Mode};

fn main() -> voltlin::Result<()> {
    let cases = [
        ("mild", AmplifierConfig::default(), 0.75, 6),
        ("moderate", AmplifierConfig::default(), 1.0, 6),
        ("severe", AmplifierConfig::default(), 1.3, 8),
        ("model error", AmplifierConfig::erroneous(), 1.0, 6),
    ];
    for (name, cfg, bound, iters) in cases {
        println!("== {name} distortion, B = {bound}");
        for mode in [Mode::Post, Mode::Pre] {
            let rep = run_scenario(&cfg, mode, bound, iters)?;
            let snr: Vec<String> = rep.snr_db.iter().map(|v| format!("{v:6.2}")).collect();
            println!(
                "  {mode:4}  psi in [{:.4}, {:.4}]  SNR/dB: {}",
                rep.psi.min_psi(),
                rep.psi.sup_psi,
                snr.join(" ")
            );
        }
    }
    Ok(())
}
