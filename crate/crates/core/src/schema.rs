//! JSON file formats for systems and filters.
//!
//! System file:
//!
//! ```json
//! { "orders": [ { "p": 3, "terms": [
//!     { "gain": { "raised_cosine": { "base": 50, "depth": 0.03, "rate": 0.025 } },
//!       "shift": 0,
//!       "factors": [[-0.38, -0.07], [-0.38, -0.07], [-0.38, -0.07]] },
//!     { "gain": { "constant": [1, 0] },
//!       "dense": { "offsets": [0, 0, 0], "extents": [1, 1, 2], "values": [0.1, [0, 0.2]] } } ] } ] }
//! ```
//!
//! Complex numbers are written as a plain number (real) or `[re, im]`.
//! A gain has exactly one of `constant`, `raised_cosine` or `sampled`, and
//! optionally `scale` and `delay`. Unknown keys are rejected.
//!
//! Filter file: `{ "taps": [...], "first_lag": int }`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{
    Coefficients, DenseTensor, Error, FirFilter, GainModel, GainSequence, KernelTerm, Result,
    VolterraSystem,
};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexRepr> for Complex64 {
    fn from(c: ComplexRepr) -> Self {
        match c {
            ComplexRepr::Real(re) => Complex64::new(re, 0.0),
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexRepr {
    fn from(c: Complex64) -> Self {
        if c.im == 0.0 {
            ComplexRepr::Real(c.re)
        } else {
            ComplexRepr::Pair([c.re, c.im])
        }
    }
}

fn to_complex(values: Vec<ComplexRepr>) -> Vec<Complex64> {
    values.into_iter().map(Into::into).collect()
}

fn from_complex(values: &[Complex64]) -> Vec<ComplexRepr> {
    values.iter().map(|&c| c.into()).collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    orders: Vec<OrderEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderEntry {
    p: usize,
    terms: Vec<TermEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
    gain: GainEntry,
    #[serde(default)]
    shift: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Vec<ComplexRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<DenseEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DenseEntry {
    offsets: Vec<i64>,
    extents: Vec<usize>,
    values: Vec<ComplexRepr>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GainEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constant: Option<ComplexRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    raised_cosine: Option<RaisedCosineEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sampled: Option<Vec<ComplexRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<ComplexRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delay: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaisedCosineEntry {
    base: f64,
    depth: f64,
    rate: f64,
    #[serde(default)]
    phase: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilterFile {
    taps: Vec<ComplexRepr>,
    first_lag: i64,
}

fn schema_err(e: impl std::fmt::Display) -> Error {
    Error::Schema(e.to_string())
}

impl GainEntry {
    fn into_gain(self) -> Result<GainSequence> {
        let model = match (self.constant, self.raised_cosine, self.sampled) {
            (Some(c), None, None) => GainModel::Constant(c.into()),
            (None, Some(rc), None) => GainModel::RaisedCosine {
                base: rc.base,
                depth: rc.depth,
                rate: rc.rate,
                phase: rc.phase,
            },
            (None, None, Some(values)) => GainModel::Sampled(to_complex(values)),
            _ => {
                return Err(schema_err(
                    "gain needs exactly one of constant, raised_cosine, sampled",
                ))
            }
        };
        let scale = self.scale.map(Into::into).unwrap_or(Complex64::new(1.0, 0.0));
        GainSequence::with_transform(model, scale, self.delay.unwrap_or(0))
    }

    fn from_gain(gain: &GainSequence) -> Self {
        let mut entry = GainEntry::default();
        match gain.model() {
            GainModel::Constant(c) => entry.constant = Some((*c).into()),
            GainModel::RaisedCosine {
                base,
                depth,
                rate,
                phase,
            } => {
                entry.raised_cosine = Some(RaisedCosineEntry {
                    base: *base,
                    depth: *depth,
                    rate: *rate,
                    phase: *phase,
                })
            }
            GainModel::Sampled(values) => entry.sampled = Some(from_complex(values)),
        }
        if gain.scale() != Complex64::new(1.0, 0.0) {
            entry.scale = Some(gain.scale().into());
        }
        if gain.delay() != 0 {
            entry.delay = Some(gain.delay());
        }
        entry
    }
}

pub fn system_from_json(text: &str) -> Result<VolterraSystem> {
    let file: SystemFile = serde_json::from_str(text).map_err(schema_err)?;
    let mut terms = Vec::new();
    for order in file.orders {
        if order.p == 0 {
            return Err(schema_err("order p must be at least 1"));
        }
        for term in order.terms {
            let gain = term.gain.into_gain()?;
            let coefficients = match (term.factors, term.dense) {
                (Some(factors), None) => {
                    Coefficients::Separable(factors.into_iter().map(to_complex).collect())
                }
                (None, Some(d)) => Coefficients::Dense(DenseTensor::new(
                    d.offsets,
                    d.extents,
                    to_complex(d.values),
                )?),
                _ => return Err(schema_err("term needs exactly one of factors, dense")),
            };
            let kt = KernelTerm::new(gain, term.shift, coefficients)?;
            if kt.order() != order.p {
                return Err(schema_err(format!(
                    "term of order {} listed under p = {}",
                    kt.order(),
                    order.p
                )));
            }
            terms.push(kt);
        }
    }
    VolterraSystem::new(terms)
}

pub fn system_to_json(system: &VolterraSystem) -> String {
    let orders = system
        .orders()
        .into_iter()
        .map(|p| OrderEntry {
            p,
            terms: system
                .terms_of_order(p)
                .map(|t| {
                    let (factors, dense) = match t.coefficients() {
                        Coefficients::Separable(f) => {
                            (Some(f.iter().map(|v| from_complex(v)).collect()), None)
                        }
                        Coefficients::Dense(d) => (
                            None,
                            Some(DenseEntry {
                                offsets: d.offsets().to_vec(),
                                extents: d.extents().to_vec(),
                                values: from_complex(d.values()),
                            }),
                        ),
                    };
                    TermEntry {
                        gain: GainEntry::from_gain(t.gain()),
                        shift: t.shift(),
                        factors,
                        dense,
                    }
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&SystemFile { orders }).expect("system serializes")
}

pub fn filter_from_json(text: &str) -> Result<FirFilter> {
    let file: FilterFile = serde_json::from_str(text).map_err(schema_err)?;
    FirFilter::new(to_complex(file.taps), file.first_lag)
}

pub fn filter_to_json(filter: &FirFilter) -> String {
    serde_json::to_string(&FilterFile {
        taps: from_complex(filter.taps()),
        first_lag: filter.first_lag(),
    })
    .expect("filter serializes")
}
