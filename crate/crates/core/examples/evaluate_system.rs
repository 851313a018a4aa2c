//! Build a small time-varying system by hand and evaluate it.
//!
//!     cargo run --example evaluate_system

use voltlin::{Complex64, DenseTensor, GainSequence, KernelTerm, Signal, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let c = |v: f64| Complex64::new(v, 0.0);

    // 1st order: a two-tap filter with a slowly varying gain.
    let linear = KernelTerm::separable(
        GainSequence::raised_cosine(1.0, 0.2, 0.05, 0.0)?,
        0,
        vec![vec![c(0.9), c(0.1)]],
    )?;
    // 2nd order: a full (non-separable) kernel on lags {0,1} x {0,1}.
    let quad = KernelTerm::dense(
        GainSequence::constant(1.0),
        0,
        DenseTensor::new(vec![0, 0], vec![2, 2], vec![c(0.05), c(0.02), c(0.02), c(-0.01)])?,
    )?;
    // 3rd order: memoryless cubic.
    let cubic = KernelTerm::separable(GainSequence::constant(-0.1), 0, vec![vec![c(1.0)]; 3])?;

    let h = VolterraSystem::new(vec![linear, quad, cubic])?;
    println!("orders {:?}, memory {}, causal {}", h.orders(), h.memory(), h.is_causal());

    let x = Signal::from_real(&(0..12).map(|n| (n as f64 * 0.5).sin()).collect::<Vec<_>>())?;
    let y = h.evaluate(&x)?;
    for (n, (xi, yi)) in x.samples().iter().zip(y.samples()).enumerate() {
        println!("{n:2}  x={:+.4}  y={:+.4}", xi.re, yi.re);
    }

    // Per-order kernel norms and the output bound for ||x|| <= 1.
    for p in h.orders() {
        println!("||h_{p}||_1 at n=0: {:.4}", h.kernel_l1_norm(p, 0)?);
    }
    println!("sup |y| <= {:.4}", h.output_bound(1.0, 0..12)?);
    Ok(())
}
