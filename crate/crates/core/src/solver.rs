//! The Richardson equalizer.
//!
//! Given a Volterra system `H` and an observation `y = H{x}`, the iteration
//!
//! ```text
//! x⁽ʳ⁺¹⁾[n] = x⁽ʳ⁾[n] + y[n] - H{x⁽ʳ⁾}[n]
//! ```
//!
//! reconstructs `x`. Post- and pre-linearization run the same iteration on a
//! system augmented with the inverse `q` of the desired linear behaviour.
//! Every iteration is a full pass over the block.

use num_complex::Complex64;

use crate::compose::{follow_with_filter, precede_with_filter};
use crate::{Error, FirFilter, Result, Signal, VolterraSystem};

/// Default sup-norm above which an iterate is treated as diverged.
pub const DEFAULT_ABORT_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub enum InitMode {
    /// `x⁽⁰⁾ = y`
    ObservedOutput,
    /// `x⁽⁰⁾ = 0`
    Zero,
    Custom(Signal),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualizerOptions {
    pub abort_threshold: f64,
}

impl Default for EqualizerOptions {
    fn default() -> Self {
        Self {
            abort_threshold: DEFAULT_ABORT_THRESHOLD,
        }
    }
}

/// Iterates `x⁽⁰⁾..x⁽ᴿ⁾` and their norms.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub iterates: Vec<Signal>,
    /// `||y - H{x⁽ʳ⁾}||∞` for every iterate.
    pub residual_norms: Vec<f64>,
    /// `||x - x⁽ʳ⁾||∞`, present when the true input was supplied.
    pub error_norms: Option<Vec<f64>>,
}

impl IterationTrace {
    pub fn iterations(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Signal {
        self.iterates.last().expect("trace holds x⁽⁰⁾")
    }
}

/// One equalizer pass.
pub fn richardson_step(system: &VolterraSystem, y: &Signal, x_r: &Signal) -> Result<Signal> {
    y.check_len(x_r)?;
    let hx = system.evaluate(x_r)?;
    step_from_response(y, x_r, &hx)
}

fn step_from_response(y: &Signal, x_r: &Signal, hx: &Signal) -> Result<Signal> {
    let next: Vec<Complex64> = x_r
        .samples()
        .iter()
        .zip(y.samples())
        .zip(hx.samples())
        .map(|((x, y), h)| x + (y - h))
        .collect();
    Signal::new(next)
}

pub fn equalize(
    system: &VolterraSystem,
    y: &Signal,
    init: InitMode,
    iterations: usize,
    truth: Option<&Signal>,
) -> Result<IterationTrace> {
    equalize_with(system, y, init, iterations, truth, EqualizerOptions::default())
}

pub fn equalize_with(
    system: &VolterraSystem,
    y: &Signal,
    init: InitMode,
    iterations: usize,
    truth: Option<&Signal>,
    options: EqualizerOptions,
) -> Result<IterationTrace> {
    if let Some(t) = truth {
        y.check_len(t)?;
    }
    let mut x = match init {
        InitMode::ObservedOutput => y.clone(),
        InitMode::Zero => Signal::zeros(y.len()),
        InitMode::Custom(s) => {
            y.check_len(&s)?;
            s
        }
    };
    let mut iterates = Vec::with_capacity(iterations + 1);
    let mut residual_norms = Vec::with_capacity(iterations + 1);
    let mut error_norms = truth.map(|_| Vec::with_capacity(iterations + 1));
    for r in 0..=iterations {
        let norm = x.sup_norm();
        if norm > options.abort_threshold {
            return Err(Error::Diverged {
                iteration: r,
                norm,
                threshold: options.abort_threshold,
            });
        }
        let hx = system.evaluate(&x).map_err(|e| match e {
            Error::NonFinite(_) => Error::Diverged {
                iteration: r,
                norm,
                threshold: options.abort_threshold,
            },
            other => other,
        })?;
        residual_norms.push(y.distance(&hx)?);
        if let (Some(errs), Some(t)) = (error_norms.as_mut(), truth) {
            errs.push(t.distance(&x)?);
        }
        let next = if r < iterations {
            Some(step_from_response(y, &x, &hx)?)
        } else {
            None
        };
        iterates.push(std::mem::replace(&mut x, next.unwrap_or_default()));
    }
    Ok(IterationTrace {
        iterates,
        residual_norms,
        error_norms,
    })
}

/// Reconstructs `x = L{u}` from `y = Ĥ{u}`, where `q` is the impulse response
/// of `L⁻¹`.
pub fn post_linearize(
    system: &VolterraSystem,
    q: &FirFilter,
    y: &Signal,
    iterations: usize,
) -> Result<IterationTrace> {
    let augmented = precede_with_filter(system, q)?;
    equalize(&augmented, y, InitMode::ObservedOutput, iterations, None)
}

/// Result of pre-linearization: the drive signals and what the system
/// produces from them.
#[derive(Debug, Clone, PartialEq)]
pub struct PreLinearization {
    pub trace: IterationTrace,
    /// `v⁽ʳ⁾ = Ȟ{x⁽ʳ⁾}` for every iterate.
    pub outputs: Vec<Signal>,
}

/// Finds a drive signal `x` such that `Ȟ{x} ≈ L{y_ref}`, where `q` is the
/// impulse response of `L⁻¹`.
pub fn pre_linearize(
    system: &VolterraSystem,
    q: &FirFilter,
    y_ref: &Signal,
    iterations: usize,
) -> Result<PreLinearization> {
    let augmented = follow_with_filter(system, q)?;
    let trace = equalize(&augmented, y_ref, InitMode::ObservedOutput, iterations, None)?;
    let outputs = trace
        .iterates
        .iter()
        .map(|x| system.evaluate(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(PreLinearization { trace, outputs })
}

/// The recursive `P`th-order inverse for a system whose first-order part is
/// a memoryless constant gain `a`:
///
/// ```text
/// u₁ = y/a,   u_p = u_{p-1} + y/a - H{u_{p-1}}/a
/// ```
pub fn pth_order_recursion(system: &VolterraSystem, y: &Signal, order: usize) -> Result<Signal> {
    if order == 0 {
        return Err(Error::InvalidArgument("inverse order must be at least 1".into()));
    }
    let a = memoryless_linear_gain(system)?;
    let inv = 1.0 / a;
    let y_scaled = y.scale(inv)?;
    let mut u = y_scaled.clone();
    for _ in 2..=order {
        let hu = system.evaluate(&u)?;
        let next: Vec<Complex64> = u
            .samples()
            .iter()
            .zip(y_scaled.samples())
            .zip(hu.samples())
            .map(|((u, ys), h)| u + ys - h * inv)
            .collect();
        u = Signal::new(next)?;
    }
    Ok(u)
}

/// The gain `a` of a first-order part `a·δ` that does not vary with time.
fn memoryless_linear_gain(system: &VolterraSystem) -> Result<Complex64> {
    let reject = |why: &str| Err(Error::InvalidArgument(format!("first-order part {why}")));
    let mut first = system.terms_of_order(1).peekable();
    if first.peek().is_none() {
        return reject("is missing");
    }
    if first.any(|t| !t.gain().is_constant()) {
        return reject("is time-varying");
    }
    let h1 = system.materialize_dense(1, 0)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut a = zero;
    for (lags, v) in h1.indices().zip(h1.values()) {
        if lags[0] == 0 {
            a = *v;
        } else if *v != zero {
            return reject("has memory");
        }
    }
    if a == zero {
        return reject("has no lag-0 tap");
    }
    Ok(a)
}
