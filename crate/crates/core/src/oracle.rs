//! Brute-force reference implementations.
//!
//! Everything here works from dense materializations of the kernels and
//! enumerates lag tuples directly, so it shares no arithmetic with the
//! term-wise fast paths in [`crate::system`]. Cost is quadratic in the
//! window size and exponential in the order.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::convergence::binomial;
use crate::{Error, Result, Signal, VolterraSystem};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The coefficient matrix `A_x` restricted to rows and columns `[0, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixWindow {
    size: usize,
    entries: Vec<Complex64>,
}

impl MatrixWindow {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.size + col]
    }

    pub fn apply(&self, x: &Signal) -> Result<Signal> {
        if x.len() != self.size {
            return Err(Error::LengthMismatch {
                left: self.size,
                right: x.len(),
            });
        }
        let out = (0..self.size)
            .map(|i| {
                self.entries[i * self.size..(i + 1) * self.size]
                    .iter()
                    .zip(x.samples())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Signal::new(out)
    }
}

/// `g_{x,n}[k₁]` by enumerating every lag tuple of every order.
pub fn brute_force_effective_response(
    system: &VolterraSystem,
    x: &Signal,
    n: i64,
) -> Result<BTreeMap<i64, Complex64>> {
    let mut g = BTreeMap::new();
    for p in 1..=system.max_order() {
        let tensor = system.materialize_dense(p, n)?;
        for (lags, v) in tensor.indices().zip(tensor.values()) {
            let rest: Complex64 = lags[1..].iter().map(|k| x.at(n - k)).product();
            *g.entry(lags[0]).or_insert(ZERO) += v * rest;
        }
    }
    Ok(g)
}

/// `y[n]` by enumerating every lag tuple of every order.
pub fn brute_force_evaluate(system: &VolterraSystem, x: &Signal) -> Result<Signal> {
    let mut out = Vec::with_capacity(x.len());
    for n in 0..x.len() as i64 {
        let mut acc = ZERO;
        for p in 1..=system.max_order() {
            let tensor = system.materialize_dense(p, n)?;
            for (lags, v) in tensor.indices().zip(tensor.values()) {
                acc += v * lags.iter().map(|k| x.at(n - k)).product::<Complex64>();
            }
        }
        out.push(acc);
    }
    Signal::new(out)
}

/// `(A_x)_{ij} = g_{x,i}[i - j]` for `i, j in [0, N)`.
pub fn build_matrix_window(system: &VolterraSystem, x: &Signal) -> Result<MatrixWindow> {
    let size = x.len();
    let mut entries = vec![ZERO; size * size];
    for i in 0..size {
        let g = brute_force_effective_response(system, x, i as i64)?;
        for (&lag, &v) in &g {
            let j = i as i64 - lag;
            if (0..size as i64).contains(&j) {
                entries[i * size + j as usize] += v;
            }
        }
    }
    Ok(MatrixWindow { size, entries })
}

/// `x⁽ʳ⁺¹⁾ = (I - A_{x⁽ʳ⁾}) x⁽ʳ⁾ + y`
pub fn matrix_richardson_step(system: &VolterraSystem, y: &Signal, x_r: &Signal) -> Result<Signal> {
    if y.len() != x_r.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x_r.len(),
        });
    }
    let ax = build_matrix_window(system, x_r)?.apply(x_r)?;
    let out = x_r
        .samples()
        .iter()
        .zip(ax.samples())
        .zip(y.samples())
        .map(|((x, a), y)| x - a + y)
        .collect();
    Signal::new(out)
}

/// A computed quantity and the bound it must not exceed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl BoundCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack
    }
}

fn norms_by_order(system: &VolterraSystem, n: i64) -> Result<Vec<f64>> {
    (1..=system.max_order())
        .map(|p| Ok(system.materialize_dense(p, n)?.l1_norm()))
        .collect()
}

/// `|Σ_k (δ[k] - g_{x,n}[k]) e[n-k]|` against
/// `||e||∞ [Σ|δ - h₁| + Σ_{p≥2} ||h_p||₁ ||x||∞^{p-1}]`.
pub fn alpha_bound_check(system: &VolterraSystem, x: &Signal, e: &Signal, n: i64) -> Result<BoundCheck> {
    let mut g = brute_force_effective_response(system, x, n)?;
    g.entry(0).or_insert(ZERO);
    let lhs = g
        .iter()
        .map(|(&k, &v)| {
            let delta = if k == 0 { Complex64::new(1.0, 0.0) } else { ZERO };
            (delta - v) * e.at(n - k)
        })
        .sum::<Complex64>()
        .norm();

    let h1 = system.materialize_dense(1, n)?;
    let mut deviation = 0.0;
    let mut saw_zero = false;
    for (lags, v) in h1.indices().zip(h1.values()) {
        if lags[0] == 0 {
            saw_zero = true;
            deviation += (Complex64::new(1.0, 0.0) - v).norm();
        } else {
            deviation += v.norm();
        }
    }
    if !saw_zero {
        deviation += 1.0;
    }
    let bx = x.sup_norm();
    let nonlinear: f64 = norms_by_order(system, n)?
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, norm)| norm * bx.powi(i as i32))
        .sum();
    Ok(BoundCheck {
        lhs,
        rhs: e.sup_norm() * (deviation + nonlinear),
    })
}

/// `|Σ_k (g_{x⁽ʳ⁾,n}[k] - g_{x,n}[k]) x⁽ʳ⁾[n-k]|` against
/// `||e||∞ Σ_{p≥2} ||h_p||₁ ||x⁽ʳ⁾||∞ Σ_{l=1}^{p-1} C(p-1,l) ||x||∞^{p-1-l} ||e||∞^{l-1}`
/// with `e = x - x⁽ʳ⁾`.
pub fn beta_bound_check(system: &VolterraSystem, x: &Signal, x_r: &Signal, n: i64) -> Result<BoundCheck> {
    let e = x.sub(x_r)?;
    let g_x = brute_force_effective_response(system, x, n)?;
    let g_xr = brute_force_effective_response(system, x_r, n)?;
    let mut lags: Vec<i64> = g_x.keys().chain(g_xr.keys()).copied().collect();
    lags.sort_unstable();
    lags.dedup();
    let lhs = lags
        .iter()
        .map(|k| {
            let a = g_xr.get(k).copied().unwrap_or(ZERO);
            let b = g_x.get(k).copied().unwrap_or(ZERO);
            (a - b) * x_r.at(n - k)
        })
        .sum::<Complex64>()
        .norm();

    let (bx, bxr, be) = (x.sup_norm(), x_r.sup_norm(), e.sup_norm());
    let mut sum = 0.0;
    for (i, norm) in norms_by_order(system, n)?.iter().enumerate().skip(1) {
        let m = i; // p - 1
        let inner: f64 = (1..=m)
            .map(|l| binomial(m, l) * bx.powi((m - l) as i32) * be.powi(l as i32 - 1))
            .sum();
        sum += norm * bxr * inner;
    }
    Ok(BoundCheck { lhs, rhs: be * sum })
}

/// `|Π_{i=q}^{p} x⁽ʳ⁾[n-k_i] - Π_{i=q}^{p} x[n-k_i]|` against
/// `(||x||∞ + ||e||∞)^{p-q+1} - ||x||∞^{p-q+1}`. `lags` holds `k_q..k_p`.
pub fn gamma_bound_check(
    p: usize,
    q: usize,
    lags: &[i64],
    x: &Signal,
    x_r: &Signal,
    n: i64,
) -> Result<BoundCheck> {
    if q == 0 || q > p {
        return Err(Error::InvalidArgument(format!("need 1 <= q <= p, got q={q}, p={p}")));
    }
    let count = p - q + 1;
    if lags.len() != count {
        return Err(Error::InvalidArgument(format!(
            "expected {count} lags, got {}",
            lags.len()
        )));
    }
    let e = x.sub(x_r)?;
    let prod_r: Complex64 = lags.iter().map(|k| x_r.at(n - k)).product();
    let prod: Complex64 = lags.iter().map(|k| x.at(n - k)).product();
    let (bx, be) = (x.sup_norm(), e.sup_norm());
    Ok(BoundCheck {
        lhs: (prod_r - prod).norm(),
        rhs: (bx + be).powi(count as i32) - bx.powi(count as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GainSequence, KernelTerm};

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn identity_matrix() {
        let x = Signal::from_real(&[0.3, 1.0, -2.0]).unwrap();
        let m = build_matrix_window(&VolterraSystem::identity(), &x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), if i == j { c(1.0) } else { c(0.0) });
            }
        }
    }

    #[test]
    fn lti_matrix_is_banded_toeplitz() {
        let sys = VolterraSystem::linear(GainSequence::constant(1.0), 0, vec![c(1.0), c(0.5)]).unwrap();
        let m = build_matrix_window(&sys, &Signal::zeros(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = match i as i64 - j as i64 {
                    0 => c(1.0),
                    1 => c(0.5),
                    _ => c(0.0),
                };
                assert_eq!(m.get(i, j), expected);
            }
        }
    }

    #[test]
    fn matrix_step_trivial_cases() {
        let y = Signal::from_real(&[1.0, -1.0]).unwrap();
        let x = Signal::from_real(&[4.0, 2.0]).unwrap();
        assert_eq!(
            matrix_richardson_step(&VolterraSystem::identity(), &y, &x).unwrap(),
            y
        );
        let cubic = VolterraSystem::new(vec![KernelTerm::separable(
            GainSequence::constant(0.7),
            0,
            vec![vec![c(1.0), c(0.2)]; 3],
        )
        .unwrap()])
        .unwrap();
        assert_eq!(matrix_richardson_step(&cubic, &y, &Signal::zeros(2)).unwrap(), y);
    }

    #[test]
    fn alpha_trivial_cases() {
        let x = Signal::from_real(&[0.5, -0.5, 1.0]).unwrap();
        let sys = VolterraSystem::new(vec![KernelTerm::separable(
            GainSequence::constant(0.3),
            0,
            vec![vec![c(1.0), c(0.5)]; 2],
        )
        .unwrap()])
        .unwrap();
        assert_eq!(
            alpha_bound_check(&sys, &x, &Signal::zeros(3), 1).unwrap(),
            BoundCheck { lhs: 0.0, rhs: 0.0 }
        );
        let e = Signal::from_real(&[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(
            alpha_bound_check(&VolterraSystem::identity(), &x, &e, 2).unwrap(),
            BoundCheck { lhs: 0.0, rhs: 0.0 }
        );
    }

    #[test]
    fn beta_trivial_cases() {
        let x = Signal::from_real(&[0.5, -0.5, 1.0]).unwrap();
        let sys = VolterraSystem::new(vec![KernelTerm::separable(
            GainSequence::constant(0.3),
            0,
            vec![vec![c(1.0), c(0.5)]; 3],
        )
        .unwrap()])
        .unwrap();
        let same = beta_bound_check(&sys, &x, &x, 2).unwrap();
        assert_eq!(same.lhs, 0.0);
        assert!(same.rhs >= 0.0);
        let linear = VolterraSystem::linear(GainSequence::constant(2.0), 0, vec![c(1.0), c(-1.0)]).unwrap();
        let x_r = Signal::from_real(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(
            beta_bound_check(&linear, &x, &x_r, 2).unwrap(),
            BoundCheck { lhs: 0.0, rhs: 0.0 }
        );
    }

    #[test]
    fn gamma_cases() {
        let x = Signal::from_real(&[0.5, -0.5, 1.0]).unwrap();
        assert_eq!(
            gamma_bound_check(3, 1, &[0, 1, 1], &x, &x, 2).unwrap(),
            BoundCheck { lhs: 0.0, rhs: 0.0 }
        );
        let x_r = Signal::from_real(&[0.4, -0.5, 1.25]).unwrap();
        let single = gamma_bound_check(2, 2, &[2], &x, &x_r, 2).unwrap();
        assert!((single.lhs - 0.1).abs() < 1e-15);
        assert!((single.rhs - 0.25).abs() < 1e-15);
        assert!(gamma_bound_check(2, 3, &[], &x, &x_r, 0).is_err());
        assert!(gamma_bound_check(2, 1, &[0], &x, &x_r, 0).is_err());
    }
}
