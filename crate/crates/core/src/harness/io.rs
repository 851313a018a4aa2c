//! CSV and JSON output. Floats are written in shortest round-trip form, so
//! identical inputs give byte-identical files.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde_json::json;

use super::scenario::ScenarioReport;
use crate::{Error, Result, Signal};

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes `n,real,imag` rows.
pub fn write_signal_csv<W: Write>(out: W, signal: &Signal) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "real", "imag"]).map_err(csv_err)?;
    for (n, s) in signal.samples().iter().enumerate() {
        w.write_record([n.to_string(), s.re.to_string(), s.im.to_string()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `n,real,imag` rows; `n` must count up from 0.
pub fn read_signal_csv<R: Read>(input: R) -> Result<Signal> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_err)?.clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    if names != ["n", "real", "imag"] {
        return Err(Error::Schema(format!(
            "signal CSV header must be n,real,imag, got {}",
            names.join(",")
        )));
    }
    let mut samples = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let field = |k: usize| record.get(k).map(str::trim).unwrap_or("");
        let n: usize = field(0)
            .parse()
            .map_err(|_| Error::Schema(format!("row {i}: bad index {:?}", field(0))))?;
        if n != i {
            return Err(Error::Schema(format!("row {i}: expected n = {i}, got {n}")));
        }
        let parse = |k: usize| -> Result<f64> {
            field(k)
                .parse()
                .map_err(|_| Error::Schema(format!("row {i}: bad number {:?}", field(k))))
        };
        samples.push(Complex64::new(parse(1)?, parse(2)?));
    }
    Signal::new(samples)
}

/// Writes `r,snr_db` rows.
pub fn write_snr_csv<W: Write>(out: W, snr_db: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["r", "snr_db"]).map_err(csv_err)?;
    for (r, v) in snr_db.iter().enumerate() {
        w.write_record([r.to_string(), v.to_string()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `mode,bound,r,snr_db,sup_psi` rows for a set of scenarios.
pub fn write_sweep_csv<W: Write>(out: W, reports: &[ScenarioReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mode", "bound", "r", "snr_db", "sup_psi"])
        .map_err(csv_err)?;
    for rep in reports {
        for (r, v) in rep.snr_db.iter().enumerate() {
            w.write_record([
                rep.mode.to_string(),
                rep.bound.to_string(),
                r.to_string(),
                v.to_string(),
                rep.psi.sup_psi.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Scenario summary as JSON. Infinite SNR values become `null`.
pub fn scenario_json(report: &ScenarioReport) -> serde_json::Value {
    let snr: Vec<Option<f64>> = report
        .snr_db
        .iter()
        .map(|v| v.is_finite().then_some(*v))
        .collect();
    json!({
        "mode": report.mode.to_string(),
        "bound": report.bound,
        "iterations": report.iterations,
        "psi": report.psi,
        "min_psi": report.psi.min_psi(),
        "convergence_guaranteed": report.convergence_guaranteed(),
        "snr_db": snr,
    })
}
