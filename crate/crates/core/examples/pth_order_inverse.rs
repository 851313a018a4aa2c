//! The classic Pth-order inverse is the Richardson equalizer in disguise.
//!
//!     cargo run --example pth_order_inverse

use voltlin::compose::precede_with_filter;
use voltlin::solver::{equalize, pth_order_recursion, InitMode};
use voltlin::{Complex64, FirFilter, GainSequence, KernelTerm, Signal, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let c = |v: f64| Complex64::new(v, 0.0);
    let a = 2.0;
    let h = VolterraSystem::new(vec![
        KernelTerm::separable(GainSequence::constant(a), 0, vec![vec![c(1.0)]])?,
        KernelTerm::separable(GainSequence::constant(0.2), 0, vec![vec![c(1.0), c(0.5)], vec![c(1.0)]])?,
        KernelTerm::separable(GainSequence::constant(-0.05), 0, vec![vec![c(1.0)]; 3])?,
    ])?;
    let y = Signal::from_real(&(0..32).map(|n| 0.5 * (n as f64 * 0.4).sin()).collect::<Vec<_>>())?;

    let composed = precede_with_filter(&h, &FirFilter::new(vec![c(1.0 / a)], 0)?)?;
    let trace = equalize(&composed, &y, InitMode::ObservedOutput, 5, None)?;
    for r in 0..=5 {
        let u = pth_order_recursion(&h, &y, r + 1)?;
        let x = trace.iterates[r].scale(c(1.0 / a))?;
        println!("P={}  |u_P - x_r/a| = {:.1e}  residual {:.3e}", r + 1, u.distance(&x)?, trace.residual_norms[r]);
    }
    Ok(())
}
