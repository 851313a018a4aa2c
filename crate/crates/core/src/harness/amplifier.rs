use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{GainSequence, KernelTerm, Result, Signal, VolterraSystem};

pub const ERRONEOUS_C1: [f64; 3] = [0.99, 0.025, 0.03];
pub const ERRONEOUS_C3: [f64; 3] = [-0.37, -0.1, -0.01];
pub const ERRONEOUS_C5: [f64; 2] = [-0.29, -0.03];

/// Amplifier with gain `κ_n = K (1 + m cos(4πn/N))` and separable first,
/// third and fifth order kernels `κ_n c_p ⊗ .. ⊗ c_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplifierConfig {
    /// Fundamental gain `K`.
    pub gain: f64,
    /// Number of simulated samples `N`.
    pub samples: usize,
    /// Modulation depth `m` of the gain.
    pub depth: f64,
    pub c1: Vec<f64>,
    pub c3: Vec<f64>,
    pub c5: Vec<f64>,
    /// Linearize with [`ERRONEOUS_C1`] and friends instead of the true
    /// coefficients. The plant itself is unchanged.
    pub erroneous: bool,
}

impl Default for AmplifierConfig {
    fn default() -> Self {
        Self {
            gain: 50.0,
            samples: 500,
            depth: 0.03,
            c1: vec![1.00, 0.03, 0.015],
            c3: vec![-0.38, -0.07, -0.03],
            c5: vec![-0.27, -0.06],
            erroneous: false,
        }
    }
}

impl AmplifierConfig {
    pub fn erroneous() -> Self {
        Self {
            erroneous: true,
            ..Self::default()
        }
    }

    pub fn gain_sequence(&self) -> Result<GainSequence> {
        GainSequence::raised_cosine(self.gain, self.depth, 4.0 * PI / self.samples as f64, 0.0)
    }

    fn build(&self, c1: &[f64], c3: &[f64], c5: &[f64]) -> Result<VolterraSystem> {
        let gain = self.gain_sequence()?;
        let taps = |c: &[f64]| c.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>();
        let mut terms = Vec::new();
        for (order, c) in [(1, c1), (3, c3), (5, c5)] {
            if c.is_empty() {
                continue;
            }
            terms.push(KernelTerm::separable(gain.clone(), 0, vec![taps(c); order])?);
        }
        VolterraSystem::new(terms)
    }
}

/// The system the linearizer is built from: the configured coefficients,
/// or the erroneous set when `cfg.erroneous` is set.
pub fn amplifier_system(cfg: &AmplifierConfig) -> Result<VolterraSystem> {
    if cfg.erroneous {
        cfg.build(&ERRONEOUS_C1, &ERRONEOUS_C3, &ERRONEOUS_C5)
    } else {
        plant_system(cfg)
    }
}

/// The amplifier that actually processes the signals.
pub fn plant_system(cfg: &AmplifierConfig) -> Result<VolterraSystem> {
    cfg.build(&cfg.c1, &cfg.c3, &cfg.c5)
}

/// `s[n] = B sin(2πn/N) sin(38πn/N)`
pub fn test_signal(bound: f64, len: usize) -> Result<Signal> {
    let n_total = len as f64;
    let samples: Vec<f64> = (0..len)
        .map(|n| {
            let n = n as f64;
            bound * (2.0 * PI * n / n_total).sin() * (38.0 * PI * n / n_total).sin()
        })
        .collect();
    Signal::from_real(&samples)
}
