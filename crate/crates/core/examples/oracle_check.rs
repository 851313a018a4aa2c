//! Cross-check the fast paths against brute force: enumeration of dense
//! kernels, the explicit input-dependent matrix, and the per-sample bounds.
//!
//!     cargo run --example oracle_check

use voltlin::oracle::{
    alpha_bound_check, beta_bound_check, brute_force_evaluate, build_matrix_window,
    matrix_richardson_step,
};
use voltlin::solver::richardson_step;
use voltlin::{Complex64, GainSequence, KernelTerm, Signal, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = VolterraSystem::new(vec![
        KernelTerm::separable(GainSequence::constant(1.0), 0, vec![vec![c(0.9, 0.1), c(0.1, 0.0)]])?,
        KernelTerm::separable(GainSequence::raised_cosine(0.2, 0.3, 0.1, 0.0)?, 0, vec![vec![c(1.0, 0.0), c(0.0, 0.3)], vec![c(0.5, 0.0)]])?,
        KernelTerm::separable(GainSequence::constant(c(-0.05, 0.02)), 1, vec![vec![c(1.0, 0.0)]; 3])?,
    ])?;
    let x = Signal::new((0..8).map(|n| Complex64::from_polar(0.9, n as f64)).collect())?;
    let y = Signal::new((0..8).map(|n| Complex64::from_polar(0.5, -(n as f64))).collect())?;

    println!("evaluate vs enumeration: {:.1e}", h.evaluate(&x)?.distance(&brute_force_evaluate(&h, &x)?)?);
    let step = richardson_step(&h, &y, &x)?;
    println!("sample vs matrix step:   {:.1e}", step.distance(&matrix_richardson_step(&h, &y, &x)?)?);

    let m = build_matrix_window(&h, &x)?;
    println!("A_x (magnitudes):");
    for i in 0..m.size() {
        let row: Vec<String> = (0..m.size()).map(|j| format!("{:5.2}", m.get(i, j).norm())).collect();
        println!("  {}", row.join(" "));
    }
    for n in 0..8 {
        let a = alpha_bound_check(&h, &x, &y, n)?;
        let b = beta_bound_check(&h, &x, &y, n)?;
        println!("n={n}  alpha {:.3} <= {:.3}   beta {:.3} <= {:.3}", a.lhs, a.rhs, b.lhs, b.rhs);
    }
    Ok(())
}
