//! Undo a nonlinearity after the fact: recover `L{u}` from `y = Ĥ{u}`.
//!
//!     cargo run --example post_linearize

use voltlin::compose::precede_with_filter;
use voltlin::convergence::check_convergence;
use voltlin::solver::post_linearize;
use voltlin::{Complex64, FirFilter, GainSequence, KernelTerm, Signal, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let one = vec![Complex64::new(1.0, 0.0)];
    // A gain-of-4 amplifier with mild memory and cubic compression.
    let h = VolterraSystem::new(vec![
        KernelTerm::separable(GainSequence::constant(4.0), 0, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.05, 0.0)]])?,
        KernelTerm::separable(GainSequence::constant(-0.4), 0, vec![one; 3])?,
    ])?;
    // Target: a pure gain of 4, so L⁻¹ is 1/4.
    let q = FirFilter::pure_gain_inverse(4.0)?;

    let u = Signal::from_real(&(0..64).map(|n| 0.8 * (n as f64 * 0.2).sin()).collect::<Vec<_>>())?;
    let y = h.evaluate(&u)?;
    let target = u.scale(Complex64::new(4.0, 0.0))?;

    let augmented = precede_with_filter(&h, &q)?;
    let report = check_convergence(&augmented, 4.0 * u.sup_norm(), 0..64)?;
    println!("sup psi = {:.4} (guaranteed: {})", report.sup_psi, report.satisfied);

    let trace = post_linearize(&h, &q, &y, 6)?;
    for (r, x) in trace.iterates.iter().enumerate() {
        println!("r={r}  ||L{{u}} - x_r|| = {:.3e}", target.distance(x)?);
    }
    Ok(())
}
