//! Cascades of Volterra systems with FIR filters.
//!
//! [`precede_with_filter`] builds `H{x} = Ĥ{q * x}` and [`follow_with_filter`]
//! builds `H{x} = q * Ȟ{x}`. Both stay in the sum-of-terms representation.

use num_complex::Complex64;

use crate::kernel::checked_volume;
use crate::{Coefficients, DenseTensor, Error, FirFilter, Result, VolterraSystem};

/// Filter the input before the system: every kernel dimension is convolved
/// with `q`, so order-`p` kernels pick up `p` filter factors.
pub fn precede_with_filter(system: &VolterraSystem, q: &FirFilter) -> Result<VolterraSystem> {
    let mut terms = Vec::with_capacity(system.terms().len());
    for term in system.terms() {
        let coefficients = match term.coefficients() {
            Coefficients::Separable(factors) => Coefficients::Separable(
                factors.iter().map(|f| convolve(f, q.taps())).collect(),
            ),
            Coefficients::Dense(t) => Coefficients::Dense(convolve_dense(t, q.taps(), system.budget())?),
        };
        terms.push(term.with_parts(
            term.gain().clone(),
            term.shift() + q.first_lag(),
            coefficients,
        ));
    }
    Ok(VolterraSystem::new(terms)?.with_budget(system.budget()))
}

/// Filter the output of the system: one term per (original term, tap), with
/// the gain delayed and weighted by the tap and the lag shift moved by the
/// tap's lag.
pub fn follow_with_filter(system: &VolterraSystem, q: &FirFilter) -> Result<VolterraSystem> {
    let zero = Complex64::new(0.0, 0.0);
    let mut terms = Vec::with_capacity(system.terms().len() * q.taps().len());
    for term in system.terms() {
        for (lag, tap) in q.iter().filter(|(_, t)| *t != zero) {
            terms.push(term.with_parts(
                term.gain().delayed_scaled(lag, tap),
                term.shift() + lag,
                term.coefficients().clone(),
            ));
        }
    }
    Ok(VolterraSystem::new(terms)?.with_budget(system.budget()))
}

/// Full linear convolution.
fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Convolves every axis of `t` with `taps`. Offsets are unchanged since the
/// filter lag is folded into the term shift.
fn convolve_dense(t: &DenseTensor, taps: &[Complex64], budget: usize) -> Result<DenseTensor> {
    let mut extents = t.extents().to_vec();
    let grown: Vec<usize> = extents.iter().map(|e| e + taps.len() - 1).collect();
    let required = checked_volume(&grown).unwrap_or(usize::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut values = t.values().to_vec();
    for axis in 0..extents.len() {
        let outer: usize = extents[..axis].iter().product();
        let inner: usize = extents[axis + 1..].iter().product();
        let len = extents[axis];
        let new_len = len + taps.len() - 1;
        let mut next = vec![Complex64::new(0.0, 0.0); outer * new_len * inner];
        for o in 0..outer {
            for i in 0..len {
                for (j, tap) in taps.iter().enumerate() {
                    let src = (o * len + i) * inner;
                    let dst = (o * new_len + i + j) * inner;
                    for k in 0..inner {
                        next[dst + k] += values[src + k] * tap;
                    }
                }
            }
        }
        values = next;
        extents[axis] = new_len;
    }
    DenseTensor::new(t.offsets().to_vec(), extents, values)
}
