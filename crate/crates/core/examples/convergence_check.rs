//! Where does the convergence guarantee stop holding? Scan the input bound
//! and report sup ψ, the contraction factor and the Lipschitz constant.
//!
//!     cargo run --example convergence_check

use voltlin::convergence::{check_convergence, eta, lipschitz_constant};
use voltlin::{Complex64, GainSequence, KernelTerm, VolterraSystem};

fn main() -> voltlin::Result<()> {
    let one = vec![Complex64::new(1.0, 0.0)];
    let h = VolterraSystem::new(vec![
        KernelTerm::separable(GainSequence::constant(1.0), 0, vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)]])?,
        KernelTerm::separable(GainSequence::raised_cosine(0.1, 0.5, 0.02, 0.0)?, 0, vec![one.clone(); 3])?,
        KernelTerm::separable(GainSequence::constant(0.01), 0, vec![one; 5])?,
    ])?;
    println!("   B   sup_psi  at_n  ok    eta(e=B)  lipschitz");
    for i in 1..=12 {
        let b = 0.1 * i as f64;
        let r = check_convergence(&h, b, 0..100)?;
        let e = (0..100).map(|n| eta(&h, b, b, b, n)).collect::<voltlin::Result<Vec<_>>>()?;
        let sup_eta = e.into_iter().fold(0.0, f64::max);
        let lip = lipschitz_constant(&h, b, 0.0, 0..100)?;
        println!("{b:4.1}  {:7.4}  {:4}  {:5} {sup_eta:8.4}  {lip:9.4}", r.sup_psi, r.argmax_n, r.satisfied);
    }
    Ok(())
}
