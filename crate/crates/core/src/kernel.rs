//! Kernel terms: a gain-modulated, lag-shifted coefficient tensor.
//!
//! A term of order `p` contributes
//! `gain(n) * tensor[k_1 - shift, .., k_p - shift]` to `h_{p,n}[k_1, .., k_p]`.
//! Tensors are stored either densely over a box of lags or as an outer
//! product of `p` tap vectors.

use num_complex::Complex64;

use crate::{Error, GainSequence, Result, Signal};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A `p`-dimensional row-major tensor over lags
/// `k_i in [offsets[i], offsets[i] + extents[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    offsets: Vec<i64>,
    extents: Vec<usize>,
    values: Vec<Complex64>,
}

impl DenseTensor {
    pub fn new(offsets: Vec<i64>, extents: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if offsets.is_empty() || offsets.len() != extents.len() {
            return Err(Error::InvalidTerm(
                "dense tensor needs one offset and one extent per dimension".into(),
            ));
        }
        if extents.contains(&0) {
            return Err(Error::InvalidTerm("dense extents must be at least 1".into()));
        }
        let len = checked_volume(&extents)
            .ok_or_else(|| Error::InvalidTerm("dense tensor size overflows".into()))?;
        if values.len() != len {
            return Err(Error::InvalidTerm(format!(
                "dense tensor expects {len} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("dense tensor"));
        }
        Ok(Self {
            offsets,
            extents,
            values,
        })
    }

    /// All-zero tensor on the given box. Extents may be zero here, which
    /// gives an empty tensor.
    pub(crate) fn zeros(offsets: Vec<i64>, extents: Vec<usize>) -> Self {
        let len = extents.iter().product();
        Self {
            offsets,
            extents,
            values: vec![ZERO; len],
        }
    }

    pub fn order(&self) -> usize {
        self.extents.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Coefficient at the given lags, zero outside the stored box.
    pub fn get(&self, lags: &[i64]) -> Complex64 {
        match self.flat_index(lags) {
            Some(i) => self.values[i],
            None => ZERO,
        }
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    fn flat_index(&self, lags: &[i64]) -> Option<usize> {
        if lags.len() != self.order() {
            return None;
        }
        let mut idx = 0usize;
        for ((&k, &off), &ext) in lags.iter().zip(&self.offsets).zip(&self.extents) {
            let j = k - off;
            if j < 0 || j as usize >= ext {
                return None;
            }
            idx = idx * ext + j as usize;
        }
        Some(idx)
    }

    /// Lags of every entry, in storage order.
    pub fn indices(&self) -> LagTuples<'_> {
        LagTuples::new(&self.offsets, &self.extents)
    }
}

pub(crate) fn checked_volume(extents: &[usize]) -> Option<usize> {
    extents.iter().try_fold(1usize, |acc, &e| acc.checked_mul(e))
}

/// Row-major odometer over a box of lag tuples.
pub struct LagTuples<'a> {
    offsets: &'a [i64],
    extents: &'a [usize],
    current: Vec<i64>,
    done: bool,
}

impl<'a> LagTuples<'a> {
    pub(crate) fn new(offsets: &'a [i64], extents: &'a [usize]) -> Self {
        let done = extents.contains(&0);
        Self {
            offsets,
            extents,
            current: offsets.to_vec(),
            done,
        }
    }
}

impl Iterator for LagTuples<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut d = self.current.len();
        loop {
            if d == 0 {
                self.done = true;
                break;
            }
            d -= 1;
            self.current[d] += 1;
            if self.current[d] < self.offsets[d] + self.extents[d] as i64 {
                break;
            }
            self.current[d] = self.offsets[d];
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Dense(DenseTensor),
    /// One tap vector per dimension, each indexed from lag 0.
    Separable(Vec<Vec<Complex64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelTerm {
    gain: GainSequence,
    shift: i64,
    coefficients: Coefficients,
}

impl KernelTerm {
    pub fn new(gain: GainSequence, shift: i64, coefficients: Coefficients) -> Result<Self> {
        match &coefficients {
            Coefficients::Dense(_) => {}
            Coefficients::Separable(factors) => {
                if factors.is_empty() {
                    return Err(Error::InvalidTerm("order must be at least 1".into()));
                }
                if factors.iter().any(|f| f.is_empty()) {
                    return Err(Error::InvalidTerm("empty tap vector".into()));
                }
                if factors.iter().flatten().any(|c| !c.is_finite()) {
                    return Err(Error::NonFinite("tap vector"));
                }
            }
        }
        Ok(Self {
            gain,
            shift,
            coefficients,
        })
    }

    pub fn separable(gain: GainSequence, shift: i64, factors: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::new(gain, shift, Coefficients::Separable(factors))
    }

    pub fn dense(gain: GainSequence, shift: i64, tensor: DenseTensor) -> Result<Self> {
        Self::new(gain, shift, Coefficients::Dense(tensor))
    }

    pub fn order(&self) -> usize {
        match &self.coefficients {
            Coefficients::Dense(t) => t.order(),
            Coefficients::Separable(f) => f.len(),
        }
    }

    pub fn gain(&self) -> &GainSequence {
        &self.gain
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    /// Number of stored dense entries (zero for separable terms).
    pub fn dense_len(&self) -> usize {
        match &self.coefficients {
            Coefficients::Dense(t) => t.len(),
            Coefficients::Separable(_) => 0,
        }
    }

    /// Lag range `[lo, hi)` covered in dimension `dim`, shift included.
    pub fn support(&self, dim: usize) -> (i64, i64) {
        let (lo, ext) = match &self.coefficients {
            Coefficients::Dense(t) => (t.offsets[dim], t.extents[dim]),
            Coefficients::Separable(f) => (0, f[dim].len()),
        };
        (lo + self.shift, lo + self.shift + ext as i64)
    }

    pub fn is_causal(&self) -> bool {
        (0..self.order()).all(|d| self.support(d).0 >= 0)
    }

    /// `h[k_1..k_p]` contributed by this term at time `n`.
    pub fn value(&self, n: i64, lags: &[i64]) -> Complex64 {
        if lags.len() != self.order() {
            return ZERO;
        }
        let shifted: Vec<i64> = lags.iter().map(|k| k - self.shift).collect();
        let c = match &self.coefficients {
            Coefficients::Dense(t) => t.get(&shifted),
            Coefficients::Separable(factors) => {
                let mut prod = Complex64::new(1.0, 0.0);
                for (f, &k) in factors.iter().zip(&shifted) {
                    if k < 0 || k as usize >= f.len() {
                        return ZERO;
                    }
                    prod *= f[k as usize];
                }
                prod
            }
        };
        self.gain.at(n) * c
    }

    /// Output contribution `sum_k h[k] prod_i x[n - k_i]` at time `n`.
    pub fn output_at(&self, n: i64, x: &Signal) -> Complex64 {
        let g = self.gain.at(n);
        if g == ZERO {
            return ZERO;
        }
        let base = n - self.shift;
        let c = match &self.coefficients {
            Coefficients::Separable(factors) => factors
                .iter()
                .map(|f| tap_sum(f, base, x))
                .product::<Complex64>(),
            Coefficients::Dense(t) => contract(t, base, 0, x)[0],
        };
        g * c
    }

    /// Adds this term's share of the effective impulse response at time `n`
    /// into `out`, where `out[j]` holds lag `first_lag + j`.
    pub(crate) fn add_effective_response(
        &self,
        n: i64,
        x: &Signal,
        first_lag: i64,
        out: &mut [Complex64],
    ) {
        let g = self.gain.at(n);
        if g == ZERO {
            return;
        }
        let base = n - self.shift;
        let (lo, _) = self.support(0);
        let start = (lo - first_lag) as usize;
        match &self.coefficients {
            Coefficients::Separable(factors) => {
                let rest: Complex64 = factors[1..]
                    .iter()
                    .map(|f| tap_sum(f, base, x))
                    .product();
                let w = g * rest;
                for (j, c) in factors[0].iter().enumerate() {
                    out[start + j] += w * c;
                }
            }
            Coefficients::Dense(t) => {
                let first = contract(t, base, 1, x);
                for (j, c) in first.iter().enumerate() {
                    out[start + j] += g * c;
                }
            }
        }
    }

    /// Adds `value(n, .)` into a dense tensor whose box contains this term's
    /// support.
    pub(crate) fn accumulate_into(&self, n: i64, target: &mut DenseTensor) {
        let g = self.gain.at(n);
        match &self.coefficients {
            Coefficients::Dense(t) => {
                for (lags, v) in t.indices().zip(&t.values) {
                    let shifted: Vec<i64> = lags.iter().map(|k| k + self.shift).collect();
                    let i = target
                        .flat_index(&shifted)
                        .expect("target box covers term support");
                    target.values[i] += g * v;
                }
            }
            Coefficients::Separable(factors) => {
                let offsets = vec![0i64; factors.len()];
                let extents: Vec<usize> = factors.iter().map(Vec::len).collect();
                for lags in LagTuples::new(&offsets, &extents) {
                    let mut prod = g;
                    for (f, &k) in factors.iter().zip(&lags) {
                        prod *= f[k as usize];
                    }
                    let shifted: Vec<i64> = lags.iter().map(|k| k + self.shift).collect();
                    let i = target
                        .flat_index(&shifted)
                        .expect("target box covers term support");
                    target.values[i] += prod;
                }
            }
        }
    }

    pub(crate) fn with_parts(&self, gain: GainSequence, shift: i64, coefficients: Coefficients) -> Self {
        Self {
            gain,
            shift,
            coefficients,
        }
    }
}

/// `sum_j taps[j] * x[base - j]`
#[inline]
fn tap_sum(taps: &[Complex64], base: i64, x: &Signal) -> Complex64 {
    taps.iter()
        .enumerate()
        .map(|(j, c)| c * x.at(base - j as i64))
        .sum()
}

/// Contracts dimensions `keep..p` of `t` against `x[base - k]` and returns
/// the remaining row-major tensor over dimensions `0..keep`.
fn contract(t: &DenseTensor, base: i64, keep: usize, x: &Signal) -> Vec<Complex64> {
    let mut cur = t.values.clone();
    for d in (keep..t.order()).rev() {
        let ext = t.extents[d];
        let off = t.offsets[d];
        let xs: Vec<Complex64> = (0..ext).map(|j| x.at(base - off - j as i64)).collect();
        cur = cur
            .chunks_exact(ext)
            .map(|row| row.iter().zip(&xs).map(|(a, b)| a * b).sum())
            .collect();
    }
    cur
}
