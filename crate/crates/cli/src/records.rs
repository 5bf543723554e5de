//! Serializable report records.
//!
//! Floating-point fields go through [`Num`], which writes 17 significant
//! digits in exponent form so that every `f64` round-trips exactly.

use std::fmt;

use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    /// `None` for non-finite values.
    pub fn finite(x: f64) -> Option<Num> {
        x.is_finite().then_some(Num(x))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        RawValue::from_string(self.to_string())
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RefutedHypothesis,
    NonConverged,
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RefutedHypothesis => "refuted-hypothesis",
            Status::NonConverged => "non-converged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub function: String,
    pub a: Num,
    pub b: Num,
    pub lhs: Num,
    pub rhs: Num,
    pub residual: Option<Num>,
    pub quadrature_error: Num,
    pub evaluations: usize,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub x: Num,
    pub y: Num,
    pub lambda: Num,
    pub mixed_value: Num,
    pub endpoint_max: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub verdict: String,
    pub derivative_order: usize,
    pub power: Num,
    pub grid_size: usize,
    pub tol: Num,
    pub max_violation: Num,
    pub counterexample: Option<WitnessRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub theorem: String,
    pub function: String,
    pub a: Num,
    pub b: Num,
    pub exponent: Option<Num>,
    /// Absent when the quadrature behind the deviation did not converge.
    pub lhs: Option<Num>,
    pub rhs: Num,
    pub margin: Option<Num>,
    /// `null` when infinite (bound zero, deviation not) or unavailable.
    pub ratio: Option<Num>,
    pub hypothesis: HypothesisRecord,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicationRecord {
    pub theorem: String,
    pub variant: String,
    pub a: Num,
    pub b: Num,
    pub alpha: Num,
    pub exponent: Option<Num>,
    pub lhs: Num,
    pub rhs: Num,
    pub note: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// `best_exponent` or `worst_case_alpha`.
    pub kind: String,
    pub theorem: String,
    pub function: String,
    pub a: Num,
    pub b: Num,
    pub exponent: Option<Num>,
    pub range: [Num; 2],
    pub params: Vec<Num>,
    /// `null` when infinite.
    pub objective: Option<Num>,
    pub iterations: usize,
    pub converged: bool,
    pub fallback: bool,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub refuted_hypothesis: usize,
    pub non_converged: usize,
}

impl Summary {
    pub fn add(&mut self, s: Status) {
        self.total += 1;
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::RefutedHypothesis => self.refuted_hypothesis += 1,
            Status::NonConverged => self.non_converged += 1,
        }
    }

    /// 0 all pass, 2 any failure or refuted hypothesis, 3 any
    /// non-convergence (which takes precedence).
    pub fn exit_code(&self) -> i32 {
        if self.non_converged > 0 {
            3
        } else if self.fail + self.refuted_hypothesis > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
    pub config: RunConfig,
    pub identities: Vec<IdentityRecord>,
    pub bounds: Vec<BoundRecord>,
    pub applications: Vec<ApplicationRecord>,
    pub searches: Vec<SearchRecord>,
    pub summary: Summary,
}

impl RunReport {
    pub fn statuses(&self) -> impl Iterator<Item = Status> + '_ {
        self.identities
            .iter()
            .map(|r| r.status)
            .chain(self.bounds.iter().map(|r| r.status))
            .chain(self.applications.iter().map(|r| r.status))
            .chain(self.searches.iter().map(|r| r.status))
    }

    pub fn tally(&self) -> Summary {
        let mut s = Summary::default();
        self.statuses().for_each(|st| s.add(st));
        s
    }
}
