//! Finite complex-valued sample sequences.

use num_complex::Complex64;

use crate::{Error, Result};

/// Samples `x[0..N)`. Reads outside that window return zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Signal {
    samples: Vec<Complex64>,
}

impl Signal {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::NonFinite("signal"));
        }
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::new(samples.iter().map(|&s| Complex64::new(s, 0.0)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            samples: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample at time `n`, zero outside `[0, N)`.
    #[inline]
    pub fn at(&self, n: i64) -> Complex64 {
        if n < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.samples
            .get(n as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Largest sample magnitude, `0` for an empty signal.
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Result<Signal> {
        Signal::new(self.samples.iter().map(|&s| s * factor).collect())
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `sup |self - other|`.
    pub fn distance(&self, other: &Signal) -> Result<f64> {
        self.check_len(other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_len(&self, other: &Signal) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Signal,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Signal> {
        self.check_len(other)?;
        Signal::new(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl TryFrom<Vec<Complex64>> for Signal {
    type Error = Error;

    fn try_from(samples: Vec<Complex64>) -> Result<Self> {
        Signal::new(samples)
    }
}
