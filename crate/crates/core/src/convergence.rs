//! Sufficient condition for monotone convergence of the Richardson equalizer
//! and the bounds it is built from.
//!
//! The functional
//!
//! ```text
//! ψ_n(B) = Σ_k |δ[k] - h_{1,n}[k]| + Σ_{p≥2} ||h_{p,n}||₁ (2^p - 1) B^{p-1}
//! ```
//!
//! guarantees `||e⁽ʳ⁺¹⁾||∞ < ||e⁽ʳ⁾||∞` for all `r` when `sup_n ψ_n(B) < 1`,
//! `B = ||x||∞` and the iteration starts from the observation.

use std::ops::Range;

use serde::Serialize;

use crate::system::check_bound;
use crate::{Error, Result, Signal, VolterraSystem};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub sup_psi: f64,
    pub argmax_n: i64,
    pub satisfied: bool,
    /// ψ at every time in the checked range, starting at `start`.
    pub trace: Vec<f64>,
    #[serde(skip)]
    pub start: i64,
}

impl ConvergenceReport {
    pub fn min_psi(&self) -> f64 {
        self.trace.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `(2^p - 1) B^{p-1}`
pub fn weight_w(p: usize, bound: f64) -> f64 {
    (2f64.powi(p as i32) - 1.0) * bound.powi(p as i32 - 1)
}

pub fn psi(system: &VolterraSystem, bound: f64, n: i64) -> Result<f64> {
    check_bound(bound)?;
    let mut total = system.first_order_deviation(n);
    for p in system.orders().into_iter().filter(|&p| p >= 2) {
        total += system.kernel_l1_norm(p, n)? * weight_w(p, bound);
    }
    Ok(total)
}

pub fn check_convergence(
    system: &VolterraSystem,
    bound: f64,
    range: Range<i64>,
) -> Result<ConvergenceReport> {
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let start = range.start;
    let trace = range
        .map(|n| psi(system, bound, n))
        .collect::<Result<Vec<f64>>>()?;
    let (argmax, sup_psi) = trace
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        });
    Ok(ConvergenceReport {
        sup_psi,
        argmax_n: start + argmax as i64,
        satisfied: sup_psi < 1.0,
        trace,
        start,
    })
}

/// Bound helper: the sup norm of a known signal.
pub fn signal_bound(x: &Signal) -> f64 {
    x.sup_norm()
}

/// Binomial coefficient as a float. Exact for the small orders used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `w̃(p, ||e||) = B_x^{p-1} + B_xr Σ_{l=1}^{p-1} C(p-1, l) B_x^{p-1-l} ||e||^{l-1}`
pub fn weight_w_tilde(p: usize, bound_x: f64, bound_xr: f64, e_norm: f64) -> f64 {
    let m = p - 1;
    let tail: f64 = (1..=m)
        .map(|l| binomial(m, l) * bound_x.powi((m - l) as i32) * e_norm.powi(l as i32 - 1))
        .sum();
    bound_x.powi(m as i32) + bound_xr * tail
}

/// Per-iteration contraction factor: `||e⁽ʳ⁺¹⁾||∞ ≤ ||e⁽ʳ⁾||∞ sup_n η_n`.
pub fn eta(
    system: &VolterraSystem,
    bound_x: f64,
    bound_xr: f64,
    e_norm: f64,
    n: i64,
) -> Result<f64> {
    for b in [bound_x, bound_xr, e_norm] {
        check_bound(b)?;
    }
    let mut total = system.first_order_deviation(n);
    for p in system.orders().into_iter().filter(|&p| p >= 2) {
        total += system.kernel_l1_norm(p, n)? * weight_w_tilde(p, bound_x, bound_xr, e_norm);
    }
    Ok(total)
}

/// `f'_n(ζ) = Σ_p p ||h_{p,n}||₁ ζ^{p-1}`
pub fn bound_function_derivative(system: &VolterraSystem, n: i64, zeta: f64) -> Result<f64> {
    check_bound(zeta)?;
    let mut total = 0.0;
    for p in system.orders() {
        total += p as f64 * system.kernel_l1_norm(p, n)? * zeta.powi(p as i32 - 1);
    }
    Ok(total)
}

/// Lipschitz constant of the system for inputs within `bound_x + e_norm`:
/// `sup_n f'_n(bound_x + e_norm)` over `range`.
///
/// `f'_n` is increasing, so evaluating at the upper end of the mean-value
/// interval gives a valid constant.
pub fn lipschitz_constant(
    system: &VolterraSystem,
    bound_x: f64,
    e_norm: f64,
    range: Range<i64>,
) -> Result<f64> {
    check_bound(bound_x)?;
    check_bound(e_norm)?;
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let zeta = bound_x + e_norm;
    let mut sup = 0.0f64;
    for n in range {
        sup = sup.max(bound_function_derivative(system, n, zeta)?);
    }
    Ok(sup)
}

/// Radius of convergence `inf_n [limsup_p ||h_{p,n}||₁^{1/p}]^{-1}`.
///
/// Kernels vanish above the maximum order, so the limsup is zero and the
/// radius is infinite for every system this crate can represent.
pub fn radius_of_convergence(system: &VolterraSystem, range: Range<i64>) -> Result<f64> {
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let _ = system;
    Ok(f64::INFINITY)
}

/// Root-test estimate `1 / max_p ||h_p||₁^{1/p}` from the norms of orders
/// `1..=norms.len()`. This is a lower bound on the radius of the series
/// the norms are taken from. Returns infinity when all norms are zero.
pub fn root_test_radius(norms: &[f64]) -> f64 {
    let sup = norms
        .iter()
        .enumerate()
        .map(|(i, v)| v.powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max);
    if sup == 0.0 {
        f64::INFINITY
    } else {
        1.0 / sup
    }
}
