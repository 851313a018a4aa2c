use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::amplifier::{amplifier_system, plant_system, test_signal, AmplifierConfig};
use crate::compose::{follow_with_filter, precede_with_filter};
use crate::convergence::{check_convergence, ConvergenceReport};
use crate::solver::{equalize, InitMode};
use crate::{Error, FirFilter, Result, Signal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Post,
    Pre,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Post => "post",
            Mode::Pre => "pre",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "post" => Ok(Mode::Post),
            "pre" => Ok(Mode::Pre),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// SNR in dB of `x` against `reference`. Infinite when they are equal.
pub fn snr(reference: &Signal, x: &Signal) -> Result<f64> {
    reference.check_len(x)?;
    let signal: f64 = reference.samples().iter().map(Complex64::norm_sqr).sum();
    if signal == 0.0 {
        return Err(Error::InvalidArgument("reference signal is all zero".into()));
    }
    let noise: f64 = reference
        .samples()
        .iter()
        .zip(x.samples())
        .map(|(r, x)| (r - x).norm_sqr())
        .sum();
    if noise == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / noise).log10())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub mode: Mode,
    pub bound: f64,
    pub iterations: usize,
    pub psi: ConvergenceReport,
    /// Index `r` holds the SNR after `r` iterations; index 0 is the
    /// unlinearized output.
    pub snr_db: Vec<f64>,
    /// The cascade output per iteration: `x⁽ʳ⁾` (post) or `Ȟ{x⁽ʳ⁾}` (pre).
    pub outputs: Vec<Signal>,
    /// `K s[n]` minus the cascade output, per iteration.
    pub errors: Vec<Signal>,
    /// Drive signals `x⁽ʳ⁾` fed into the amplifier (pre mode only).
    pub drives: Vec<Signal>,
}

impl ScenarioReport {
    pub fn convergence_guaranteed(&self) -> bool {
        self.psi.satisfied
    }
}

/// Runs one post- or pre-linearization experiment on the amplifier.
///
/// The plant always uses the true coefficients; the linearizer uses
/// [`amplifier_system`], which differs when `cfg.erroneous` is set.
pub fn run_scenario(
    cfg: &AmplifierConfig,
    mode: Mode,
    bound: f64,
    iterations: usize,
) -> Result<ScenarioReport> {
    let plant = plant_system(cfg)?;
    let model = amplifier_system(cfg)?;
    let q = FirFilter::pure_gain_inverse(cfg.gain)?;
    let s = test_signal(bound, cfg.samples)?;
    let target = s.scale(Complex64::new(cfg.gain, 0.0))?;
    let range = 0..cfg.samples as i64;

    let (psi, outputs, drives) = match mode {
        Mode::Post => {
            let augmented = precede_with_filter(&model, &q)?;
            let psi = check_convergence(&augmented, cfg.gain * bound, range)?;
            let y = plant.evaluate(&s)?;
            let trace = equalize(&augmented, &y, InitMode::ObservedOutput, iterations, None)?;
            (psi, trace.iterates, Vec::new())
        }
        Mode::Pre => {
            let augmented = follow_with_filter(&model, &q)?;
            let psi = check_convergence(&augmented, bound, range)?;
            let trace = equalize(&augmented, &s, InitMode::ObservedOutput, iterations, None)?;
            let outputs = trace
                .iterates
                .iter()
                .map(|x| plant.evaluate(x))
                .collect::<Result<Vec<_>>>()?;
            (psi, outputs, trace.iterates)
        }
    };
    let snr_db = outputs
        .iter()
        .map(|o| snr(&target, o))
        .collect::<Result<Vec<_>>>()?;
    let errors = outputs
        .iter()
        .map(|o| target.sub(o))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScenarioReport {
        mode,
        bound,
        iterations,
        psi,
        snr_db,
        outputs,
        errors,
        drives,
    })
}
