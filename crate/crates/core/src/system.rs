//! Time-varying discrete-time Volterra systems.

use std::ops::Range;

use num_complex::Complex64;

use crate::kernel::checked_volume;
use crate::{DenseTensor, Error, GainSequence, KernelTerm, Result, Signal};

/// Default limit on the number of entries in a single dense
/// materialization of `h_{p,n}`.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A finite-order Volterra system given as a sum of kernel terms.
///
/// The order-`p` kernel at time `n` is the sum of the values of all terms of
/// order `p`. There is no zeroth-order term.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraSystem {
    terms: Vec<KernelTerm>,
    budget: usize,
}

/// A tap sequence over consecutive lags starting at `first_lag`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagSequence {
    pub first_lag: i64,
    pub taps: Vec<Complex64>,
}

impl LagSequence {
    pub fn at(&self, lag: i64) -> Complex64 {
        let j = lag - self.first_lag;
        if j < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.taps
            .get(j as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// `sum_k taps[k] * x[n - k]`
    pub fn convolve_at(&self, x: &Signal, n: i64) -> Complex64 {
        self.taps
            .iter()
            .enumerate()
            .map(|(j, c)| c * x.at(n - self.first_lag - j as i64))
            .sum()
    }

    pub fn lags(&self) -> Range<i64> {
        self.first_lag..self.first_lag + self.taps.len() as i64
    }
}

impl VolterraSystem {
    pub fn new(terms: Vec<KernelTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidTerm("a system needs at least one term".into()));
        }
        Ok(Self {
            terms,
            budget: DEFAULT_BUDGET,
        })
    }

    /// The identity system `H{x} = x`.
    pub fn identity() -> Self {
        Self::linear(GainSequence::constant(1.0), 0, vec![Complex64::new(1.0, 0.0)])
            .expect("unit tap is valid")
    }

    /// A first-order system with impulse response `taps` starting at
    /// `first_lag`, scaled by `gain`.
    pub fn linear(gain: GainSequence, first_lag: i64, taps: Vec<Complex64>) -> Result<Self> {
        Self::new(vec![KernelTerm::separable(gain, first_lag, vec![taps])?])
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(KernelTerm::order).max().unwrap_or(0)
    }

    /// Orders with at least one term, ascending.
    pub fn orders(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.terms.iter().map(KernelTerm::order).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }

    pub fn terms_of_order(&self, p: usize) -> impl Iterator<Item = &KernelTerm> {
        self.terms.iter().filter(move |t| t.order() == p)
    }

    /// `true` iff every term is supported on non-negative lags only.
    pub fn is_causal(&self) -> bool {
        self.terms.iter().all(KernelTerm::is_causal)
    }

    /// Smallest `M` such that all lags lie in `[K_min, K_min + M)`.
    pub fn memory(&self) -> usize {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for t in &self.terms {
            for d in 0..t.order() {
                let (a, b) = t.support(d);
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        (hi - lo) as usize
    }

    /// Bounding box `(offsets, extents)` of all order-`p` supports.
    fn support_box(&self, p: usize) -> (Vec<i64>, Vec<usize>) {
        let mut lo = vec![i64::MAX; p];
        let mut hi = vec![i64::MIN; p];
        let mut any = false;
        for t in self.terms_of_order(p) {
            any = true;
            for d in 0..p {
                let (a, b) = t.support(d);
                lo[d] = lo[d].min(a);
                hi[d] = hi[d].max(b);
            }
        }
        if !any {
            return (vec![0; p], vec![0; p]);
        }
        let extents = lo.iter().zip(&hi).map(|(a, b)| (b - a) as usize).collect();
        (lo, extents)
    }

    fn check_order(&self, p: usize) -> Result<()> {
        let max = self.max_order();
        if p == 0 || p > max {
            return Err(Error::OrderOutOfRange { order: p, max });
        }
        Ok(())
    }

    fn check_eval_budget(&self) -> Result<()> {
        for p in self.orders() {
            let required: usize = self.terms_of_order(p).map(KernelTerm::dense_len).sum();
            if required > self.budget {
                return Err(Error::BudgetExceeded {
                    required,
                    budget: self.budget,
                });
            }
        }
        Ok(())
    }

    /// Response `y[n]` for `n in [0, N)`.
    pub fn evaluate(&self, x: &Signal) -> Result<Signal> {
        self.check_eval_budget()?;
        let out = (0..x.len() as i64).map(|n| self.output_at(n, x)).collect();
        Signal::new(out)
    }

    /// A single output sample. Skips the budget check done by
    /// [`evaluate`](Self::evaluate).
    pub fn output_at(&self, n: i64, x: &Signal) -> Complex64 {
        self.terms.iter().map(|t| t.output_at(n, x)).sum()
    }

    /// The input-dependent impulse response `g_{x,n}[k_1]` obtained by
    /// absorbing all but the first input factor into the kernels.
    pub fn effective_impulse_response(&self, x: &Signal, n: i64) -> Result<LagSequence> {
        self.check_eval_budget()?;
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for t in &self.terms {
            let (a, b) = t.support(0);
            lo = lo.min(a);
            hi = hi.max(b);
        }
        let mut taps = vec![Complex64::new(0.0, 0.0); (hi - lo) as usize];
        for t in &self.terms {
            t.add_effective_response(n, x, lo, &mut taps);
        }
        Ok(LagSequence { first_lag: lo, taps })
    }

    /// The order-`p` kernel at time `n` as a dense tensor over the union of
    /// the term supports. Empty if no term has order `p`.
    pub fn materialize_dense(&self, p: usize, n: i64) -> Result<DenseTensor> {
        self.check_order(p)?;
        let (offsets, extents) = self.support_box(p);
        let required = checked_volume(&extents).unwrap_or(usize::MAX);
        if required > self.budget {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        Ok(self.materialize_unchecked(p, n, offsets, extents))
    }

    fn materialize_unchecked(
        &self,
        p: usize,
        n: i64,
        offsets: Vec<i64>,
        extents: Vec<usize>,
    ) -> DenseTensor {
        let mut tensor = DenseTensor::zeros(offsets, extents);
        for t in self.terms_of_order(p) {
            t.accumulate_into(n, &mut tensor);
        }
        tensor
    }

    /// `||h_{p,n}||_1`, exact after overlapping terms are summed.
    pub fn kernel_l1_norm(&self, p: usize, n: i64) -> Result<f64> {
        Ok(self.materialize_dense(p, n)?.l1_norm())
    }

    /// `sum_k |delta[k] - h_{1,n}[k]|`
    pub fn first_order_deviation(&self, n: i64) -> f64 {
        let (offsets, extents) = self.support_box(1);
        let h1 = self.materialize_unchecked(1, n, offsets, extents);
        let mut total = 0.0;
        let mut has_zero_lag = false;
        for (lags, v) in h1.indices().zip(h1.values()) {
            if lags[0] == 0 {
                has_zero_lag = true;
                total += (Complex64::new(1.0, 0.0) - v).norm();
            } else {
                total += v.norm();
            }
        }
        if !has_zero_lag {
            total += 1.0;
        }
        total
    }

    /// `f_n(B) = sum_p ||h_{p,n}||_1 B^p`
    pub fn bound_function(&self, n: i64, bound: f64) -> Result<f64> {
        check_bound(bound)?;
        let mut total = 0.0;
        for p in self.orders() {
            total += self.kernel_l1_norm(p, n)? * bound.powi(p as i32);
        }
        Ok(total)
    }

    /// `sup_{n in range} f_n(B)`
    pub fn output_bound(&self, bound: f64, range: Range<i64>) -> Result<f64> {
        if range.is_empty() {
            return Err(Error::EmptyRange);
        }
        let mut sup = 0.0f64;
        for n in range {
            sup = sup.max(self.bound_function(n, bound)?);
        }
        Ok(sup)
    }
}

pub(crate) fn check_bound(bound: f64) -> Result<()> {
    if !bound.is_finite() || bound < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bound must be finite and non-negative, got {bound}"
        )));
    }
    Ok(())
}
