//! Checkers that compare computed statistics against closed-form bounds and
//! emit machine-readable reports.

pub mod baseline;
pub mod census;
pub mod checks;
pub mod parse;
pub mod suites;

use std::io::Write;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack applied to floating-point right-hand sides before comparing,
/// so that a bound is never failed on its own rounding error.
pub const JUDGE_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    /// The inequality holds but its right side is at least the trivial bound 1.
    #[serde(rename = "vacuous-pass")]
    VacuousPass,
    #[serde(rename = "out-of-hypothesis")]
    OutOfHypothesis,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::VacuousPass => "vacuous-pass",
            Status::OutOfHypothesis => "out-of-hypothesis",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::VacuousPass)
    }
}

/// `fail` iff `lhs > rhs` (with `rhs` rounded outward by [`JUDGE_MARGIN`]);
/// otherwise `vacuous-pass` when `rhs >= 1` and `pass` below that.
pub fn judge(lhs: &BigRational, rhs: f64) -> Status {
    if rhs.is_nan() {
        return Status::Fail;
    }
    if rhs.is_infinite() {
        return if rhs > 0.0 { Status::VacuousPass } else { Status::Fail };
    }
    let widened = rhs + rhs.abs() * JUDGE_MARGIN;
    let bound = BigRational::from_float(widened).expect("finite");
    if lhs > &bound {
        Status::Fail
    } else if rhs >= 1.0 {
        Status::VacuousPass
    } else {
        Status::Pass
    }
}

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    /// `key=value` pairs separated by `;`.
    pub params: String,
    /// The computed statistic, exact.
    pub lhs: Option<BigRational>,
    /// The bound.
    pub rhs: Option<f64>,
    pub status: Status,
    pub runtime_ms: u64,
    pub seed: Option<u64>,
}

/// One CSV/JSON row.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub check: String,
    pub params: String,
    pub lhs_num: String,
    pub lhs_den: String,
    pub rhs: String,
    pub status: &'static str,
    pub runtime_ms: u64,
    pub seed: String,
}

impl Report {
    pub fn judged(check: &str, params: String, lhs: BigRational, rhs: f64, started: Instant) -> Report {
        Report {
            check: check.into(),
            params,
            status: judge(&lhs, rhs),
            lhs: Some(lhs),
            rhs: Some(rhs),
            runtime_ms: elapsed_ms(started),
            seed: None,
        }
    }

    /// A report for a parameter set that falls outside the hypotheses.
    pub fn out_of_hypothesis(check: &str, params: String) -> Report {
        Report {
            check: check.into(),
            params,
            lhs: None,
            rhs: None,
            status: Status::OutOfHypothesis,
            runtime_ms: 0,
            seed: None,
        }
    }

    /// `lhs` as a float, for display.
    pub fn lhs_f64(&self) -> Option<f64> {
        self.lhs.as_ref().map(rational_to_f64)
    }

    pub fn row(&self) -> Row {
        let (num, den) = match &self.lhs {
            Some(l) => (l.numer().to_string(), l.denom().to_string()),
            None => (String::new(), String::new()),
        };
        Row {
            check: self.check.clone(),
            params: self.params.clone(),
            lhs_num: num,
            lhs_den: den,
            rhs: self.rhs.map(|r| r.to_string()).unwrap_or_default(),
            status: self.status.as_str(),
            runtime_ms: self.runtime_ms,
            seed: self.seed.map(|s| s.to_string()).unwrap_or_default(),
        }
    }
}

/// Wraps a checker result, turning hypothesis failures into reports.
pub fn or_out_of_hypothesis(check: &str, params: String, r: Result<Report>) -> Result<Report> {
    match r {
        Err(Error::OutOfHypothesis(_)) => Ok(Report::out_of_hypothesis(check, params)),
        other => other,
    }
}

pub(crate) fn elapsed_ms(started: Instant) -> u64 {
    started.elapsed().as_millis() as u64
}

/// Nearest float to a rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Writes reports as CSV with a header row and LF line endings.
pub fn write_csv<W: Write>(out: W, reports: &[Report]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    if reports.is_empty() {
        w.write_record(["check", "params", "lhs_num", "lhs_den", "rhs", "status", "runtime_ms", "seed"])
            .map_err(csv_err)?;
    }
    for r in reports {
        w.serialize(r.row()).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("writing CSV: {e}")))?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(format!("writing CSV: {e}"))
}

/// Overall status of a list of reports: any failure fails, otherwise any
/// out-of-hypothesis entry is reported, otherwise pass.
pub fn overall(reports: &[Report]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::OutOfHypothesis) {
        Status::OutOfHypothesis
    } else if reports.iter().all(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::VacuousPass
    }
}

#[cfg(test)]
mod tests;
