//! Finite impulse response filters, used for the inverse of the target
//! linear behaviour.

use num_complex::Complex64;

use crate::{Error, Result, Signal};

/// Impulse response `q[first_lag + j] = taps[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<Complex64>,
    first_lag: i64,
}

impl FirFilter {
    pub fn new(taps: Vec<Complex64>, first_lag: i64) -> Result<Self> {
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("filter taps"));
        }
        if taps.iter().all(|t| *t == Complex64::new(0.0, 0.0)) {
            return Err(Error::InvalidFilter("at least one tap must be nonzero".into()));
        }
        Ok(Self { taps, first_lag })
    }

    pub fn unit_impulse() -> Self {
        Self {
            taps: vec![Complex64::new(1.0, 0.0)],
            first_lag: 0,
        }
    }

    /// Inverse of an ideal amplifier with gain `k`: a single tap `1/k` at lag 0.
    pub fn pure_gain_inverse(k: f64) -> Result<Self> {
        if k == 0.0 || !k.is_finite() {
            return Err(Error::InvalidFilter(format!(
                "gain must be finite and nonzero, got {k}"
            )));
        }
        Self::new(vec![Complex64::new(1.0 / k, 0.0)], 0)
    }

    pub fn taps(&self) -> &[Complex64] {
        &self.taps
    }

    pub fn first_lag(&self) -> i64 {
        self.first_lag
    }

    /// `(lag, tap)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.taps
            .iter()
            .enumerate()
            .map(move |(j, &t)| (self.first_lag + j as i64, t))
    }

    pub fn is_causal(&self) -> bool {
        self.first_lag >= 0
    }

    /// `y[n] = sum_l q[l] x[n - l]` on `[0, N)`.
    pub fn apply(&self, x: &Signal) -> Result<Signal> {
        let out = (0..x.len() as i64)
            .map(|n| self.iter().map(|(l, q)| q * x.at(n - l)).sum())
            .collect();
        Signal::new(out)
    }
}

/// Free-function form of [`FirFilter::apply`].
pub fn fir_apply(q: &FirFilter, x: &Signal) -> Result<Signal> {
    q.apply(x)
}

/// Free-function form of [`FirFilter::pure_gain_inverse`].
pub fn pure_gain_inverse(k: f64) -> Result<FirFilter> {
    FirFilter::pure_gain_inverse(k)
}
