//! Random instances and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voltlin::{
    Coefficients, Complex64, DenseTensor, FirFilter, GainSequence, KernelTerm, Signal,
    VolterraSystem,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng, amp: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-amp..=amp), rng.gen_range(-amp..=amp))
}

pub fn signal(rng: &mut impl Rng, len: usize, amp: f64) -> Signal {
    // Sample magnitude, then phase, so that |x[n]| <= amp.
    let samples = (0..len)
        .map(|_| Complex64::from_polar(rng.gen_range(0.0..=amp), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    Signal::new(samples).unwrap()
}

pub fn gain(rng: &mut impl Rng, time_varying: bool) -> GainSequence {
    if !time_varying {
        return GainSequence::constant(complex(rng, 1.0));
    }
    match rng.gen_range(0..3) {
        0 => GainSequence::constant(complex(rng, 1.0)),
        1 => GainSequence::raised_cosine(
            rng.gen_range(0.5..1.5),
            rng.gen_range(0.0..0.5),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..3.0),
        )
        .unwrap(),
        _ => {
            let len = rng.gen_range(1..40);
            GainSequence::sampled((0..len).map(|_| complex(rng, 1.0)).collect()).unwrap()
        }
    }
}

/// A random term of order `p` whose lags fit in a window of `max_mem`.
pub fn term(rng: &mut impl Rng, p: usize, max_mem: usize, causal: bool, time_varying: bool) -> KernelTerm {
    let g = gain(rng, time_varying);
    if rng.gen_bool(0.5) {
        let factors = (0..p)
            .map(|_| {
                let len = rng.gen_range(1..=max_mem);
                (0..len).map(|_| complex(rng, 1.0)).collect()
            })
            .collect::<Vec<Vec<Complex64>>>();
        let widest = factors.iter().map(Vec::len).max().unwrap();
        let shift = if causal {
            rng.gen_range(0..=(max_mem - widest) as i64)
        } else {
            rng.gen_range(-2..=2)
        };
        KernelTerm::separable(g, shift, factors).unwrap()
    } else {
        let extents: Vec<usize> = (0..p).map(|_| rng.gen_range(1..=max_mem)).collect();
        let offsets: Vec<i64> = extents
            .iter()
            .map(|&e| {
                if causal {
                    rng.gen_range(0..=(max_mem - e) as i64)
                } else {
                    rng.gen_range(-2..=1)
                }
            })
            .collect();
        let len = extents.iter().product();
        let values = (0..len).map(|_| complex(rng, 1.0)).collect();
        KernelTerm::dense(g, 0, DenseTensor::new(offsets, extents, values).unwrap()).unwrap()
    }
}

/// A random system with orders up to `max_order` (order 1 always present).
pub fn system(
    rng: &mut impl Rng,
    max_order: usize,
    max_mem: usize,
    causal: bool,
    time_varying: bool,
) -> VolterraSystem {
    let mut terms = vec![term(rng, 1, max_mem, causal, time_varying)];
    for p in 1..=max_order {
        for _ in 0..rng.gen_range(0..=2) {
            terms.push(term(rng, p, max_mem, causal, time_varying));
        }
    }
    VolterraSystem::new(terms).unwrap()
}

pub fn filter(rng: &mut impl Rng, max_len: usize, causal: bool) -> FirFilter {
    let len = rng.gen_range(1..=max_len);
    let first = if causal { rng.gen_range(0..=1) } else { rng.gen_range(-2..=1) };
    let mut taps: Vec<Complex64> = (0..len).map(|_| complex(rng, 1.0)).collect();
    taps[0] += Complex64::new(1.5, 0.0);
    FirFilter::new(taps, first).unwrap()
}

/// Multiplies every term of order >= 2 by `factor`.
pub fn scale_nonlinear(system: &VolterraSystem, factor: f64) -> VolterraSystem {
    let terms = system
        .terms()
        .iter()
        .map(|t| {
            if t.order() == 1 {
                t.clone()
            } else {
                KernelTerm::new(
                    t.gain().delayed_scaled(0, Complex64::new(factor, 0.0)),
                    t.shift(),
                    t.coefficients().clone(),
                )
                .unwrap()
            }
        })
        .collect();
    VolterraSystem::new(terms).unwrap()
}

/// Output at any time `n` for an input given as a function of time, by
/// enumeration of the dense kernels.
pub fn output_with_input(system: &VolterraSystem, n: i64, input: &dyn Fn(i64) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 1..=system.max_order() {
        let t = system.materialize_dense(p, n).unwrap();
        for (lags, v) in t.indices().zip(t.values()) {
            acc += v * lags.iter().map(|k| input(n - k)).product::<Complex64>();
        }
    }
    acc
}

/// `q * x` at any time `m`.
pub fn filter_at(q: &FirFilter, x: &Signal, m: i64) -> Complex64 {
    q.iter().map(|(l, t)| t * x.at(m - l)).sum()
}

/// `Ĥ{q * x}` on `[0, N)` without truncating the filtered signal.
pub fn cascade_filter_then_system(system: &VolterraSystem, q: &FirFilter, x: &Signal) -> Signal {
    let u = |m: i64| filter_at(q, x, m);
    Signal::new((0..x.len() as i64).map(|n| output_with_input(system, n, &u)).collect()).unwrap()
}

/// `q * Ȟ{x}` on `[0, N)`, evaluating `Ȟ{x}` outside the window as needed.
pub fn cascade_system_then_filter(system: &VolterraSystem, q: &FirFilter, x: &Signal) -> Signal {
    let input = |m: i64| x.at(m);
    Signal::new(
        (0..x.len() as i64)
            .map(|n| {
                q.iter()
                    .map(|(l, t)| t * output_with_input(system, n - l, &input))
                    .sum()
            })
            .collect(),
    )
    .unwrap()
}

/// Largest `|a - b| / max(1, |b|)` over all samples.
pub fn max_relative_error(a: &Signal, b: &Signal) -> f64 {
    assert_eq!(a.len(), b.len());
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| voltlin::relative_error(x, y))
        .fold(0.0, f64::max)
}

pub fn is_memoryless_linear(t: &KernelTerm) -> bool {
    matches!(t.coefficients(), Coefficients::Separable(f) if f.len() == 1 && f[0].len() == 1)
}

/// A system whose first-order kernel is `a·δ` with constant `a`, plus
/// random time-invariant causal terms of orders 2..=max_order.
pub fn memoryless_first_order_system(rng: &mut impl Rng, max_order: usize, max_mem: usize) -> (VolterraSystem, Complex64) {
    let a = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
    let mut terms = vec![KernelTerm::separable(GainSequence::constant(a), 0, vec![vec![Complex64::new(1.0, 0.0)]]).unwrap()];
    for p in 2..=max_order {
        for _ in 0..rng.gen_range(1..=2) {
            let t = term(rng, p, max_mem, true, false);
            let small = KernelTerm::new(
                t.gain().delayed_scaled(0, Complex64::new(0.1, 0.0)),
                t.shift(),
                t.coefficients().clone(),
            )
            .unwrap();
            terms.push(small);
        }
    }
    (VolterraSystem::new(terms).unwrap(), a)
}

/// A random system with `sup_n ψ(B) < 1` over `range`, built around a
/// first-order part close to the identity.
pub fn contractive_system(
    rng: &mut impl Rng,
    bound: f64,
    len: usize,
    causal: bool,
) -> VolterraSystem {
    loop {
        let lin_mem = rng.gen_range(1..=3);
        let mut taps: Vec<Complex64> = (0..lin_mem).map(|_| complex(rng, 0.15)).collect();
        taps[0] += Complex64::new(1.0, 0.0);
        let mut terms = vec![KernelTerm::separable(GainSequence::constant(1.0), 0, vec![taps]).unwrap()];
        let max_order = rng.gen_range(2..=5);
        for p in 2..=max_order {
            if rng.gen_bool(0.7) {
                terms.push(term(rng, p, 3, causal, true));
            }
        }
        let base = VolterraSystem::new(terms).unwrap();
        let deviation = (0..len as i64)
            .map(|n| base.first_order_deviation(n))
            .fold(0.0, f64::max);
        if deviation >= 0.9 {
            continue;
        }
        let mut factor = 1.0;
        for _ in 0..200 {
            let candidate = scale_nonlinear(&base, factor);
            let report = voltlin::convergence::check_convergence(&candidate, bound, 0..len as i64).unwrap();
            if report.satisfied {
                return candidate;
            }
            factor *= 0.6;
        }
    }
}

/// Every term multiplied by `factor`.
pub fn scale_system(system: &VolterraSystem, factor: Complex64) -> VolterraSystem {
    let terms = system
        .terms()
        .iter()
        .map(|t| KernelTerm::new(t.gain().delayed_scaled(0, factor), t.shift(), t.coefficients().clone()).unwrap())
        .collect();
    VolterraSystem::new(terms).unwrap()
}

/// Error norms of the equalizer run from `y = H{x}` until the error falls
/// to `floor` or `cap` iterations pass.
pub fn error_history(system: &VolterraSystem, x: &Signal, floor: f64, cap: usize) -> Vec<f64> {
    let y = system.evaluate(x).unwrap();
    let mut xr = y.clone();
    let mut errs = vec![x.distance(&xr).unwrap()];
    while errs.len() <= cap && *errs.last().unwrap() > floor {
        xr = voltlin::solver::richardson_step(system, &y, &xr).unwrap();
        errs.push(x.distance(&xr).unwrap());
    }
    errs
}

/// True when each entry is below the previous one until the floor is reached.
pub fn strictly_decreasing_until(errs: &[f64], floor: f64) -> bool {
    errs.windows(2).all(|w| w[0] <= floor || w[1] < w[0])
}
