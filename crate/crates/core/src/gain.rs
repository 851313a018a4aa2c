//! Time-varying scalar gains that multiply kernel terms.

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum GainModel {
    Constant(Complex64),
    /// `base * (1 + depth * cos(rate * n + phase))`
    RaisedCosine {
        base: f64,
        depth: f64,
        rate: f64,
        phase: f64,
    },
    /// `values[n]` for `n` in range, zero elsewhere.
    Sampled(Vec<Complex64>),
}

impl GainModel {
    fn at(&self, n: i64) -> Complex64 {
        match self {
            GainModel::Constant(c) => *c,
            GainModel::RaisedCosine {
                base,
                depth,
                rate,
                phase,
            } => Complex64::new(base * (1.0 + depth * (rate * n as f64 + phase).cos()), 0.0),
            GainModel::Sampled(values) => {
                if n < 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    values
                        .get(n as usize)
                        .copied()
                        .unwrap_or(Complex64::new(0.0, 0.0))
                }
            }
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            GainModel::Constant(c) => c.is_finite(),
            GainModel::RaisedCosine {
                base,
                depth,
                rate,
                phase,
            } => [base, depth, rate, phase].iter().all(|v| v.is_finite()),
            GainModel::Sampled(values) => values.iter().all(|v| v.is_finite()),
        }
    }
}

/// A gain model evaluated as `scale * model(n - delay)`.
///
/// `scale` and `delay` come from cascading with an FIR filter at the output
/// of a system, where each filter tap contributes a delayed and weighted copy
/// of the original gain.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSequence {
    model: GainModel,
    scale: Complex64,
    delay: i64,
}

impl GainSequence {
    pub fn new(model: GainModel) -> Result<Self> {
        Self::with_transform(model, Complex64::new(1.0, 0.0), 0)
    }

    pub fn with_transform(model: GainModel, scale: Complex64, delay: i64) -> Result<Self> {
        if !model.is_finite() || !scale.is_finite() {
            return Err(Error::NonFinite("gain sequence"));
        }
        Ok(Self {
            model,
            scale,
            delay,
        })
    }

    /// Panics if `value` is not finite.
    pub fn constant(value: impl Into<Complex64>) -> Self {
        Self::new(GainModel::Constant(value.into())).expect("finite constant gain")
    }

    pub fn raised_cosine(base: f64, depth: f64, rate: f64, phase: f64) -> Result<Self> {
        Self::new(GainModel::RaisedCosine {
            base,
            depth,
            rate,
            phase,
        })
    }

    pub fn sampled(values: Vec<Complex64>) -> Result<Self> {
        Self::new(GainModel::Sampled(values))
    }

    #[inline]
    pub fn at(&self, n: i64) -> Complex64 {
        self.scale * self.model.at(n - self.delay)
    }

    pub fn model(&self) -> &GainModel {
        &self.model
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn delay(&self) -> i64 {
        self.delay
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.model, GainModel::Constant(_))
    }

    /// The sequence `n -> factor * self(n - by)`.
    pub fn delayed_scaled(&self, by: i64, factor: Complex64) -> Self {
        // Constant models ignore the delay; keep it at zero so that equal
        // gains compare equal.
        let delay = if self.is_constant() { 0 } else { self.delay + by };
        Self {
            model: self.model.clone(),
            scale: self.scale * factor,
            delay,
        }
    }
}
