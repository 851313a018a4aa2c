//! Predistortion: find the drive `x` so that `Ȟ{x} ≈ L{y_ref}`.
//!
//!     cargo run --example pre_linearize

use voltlin::solver::pre_linearize;
use voltlin::{Complex64, FirFilter, GainSequence, KernelTerm, Signal, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let one = vec![Complex64::new(1.0, 0.0)];
    let plant = VolterraSystem::new(vec![
        KernelTerm::separable(GainSequence::constant(10.0), 0, vec![one.clone()])?,
        KernelTerm::separable(GainSequence::constant(-1.5), 0, vec![one.clone(); 3])?,
        KernelTerm::separable(GainSequence::constant(-0.3), 1, vec![one; 3])?,
    ])?;
    let q = FirFilter::pure_gain_inverse(10.0)?;
    let y_ref = Signal::from_real(&(0..48).map(|n| 0.6 * (n as f64 * 0.3).cos()).collect::<Vec<_>>())?;
    let wanted = y_ref.scale(Complex64::new(10.0, 0.0))?;

    let result = pre_linearize(&plant, &q, &y_ref, 5)?;
    for (r, (x, v)) in result.trace.iterates.iter().zip(&result.outputs).enumerate() {
        println!(
            "r={r}  ||x_r|| = {:.4}  ||K y_ref - plant(x_r)|| = {:.3e}",
            x.sup_norm(),
            wanted.distance(v)?
        );
    }
    Ok(())
}
