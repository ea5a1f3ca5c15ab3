use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One checked inequality `lhs <= constant * rhs * (1 + slack)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub check: String,
    pub theorem_ref: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub slack: f64,
    pub pass: bool,
    pub seed: Option<u64>,
    pub trials: usize,
    pub witness_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn new(
        check: impl Into<String>,
        theorem_ref: impl Into<String>,
        lhs: f64,
        rhs: f64,
        constant: f64,
        slack: f64,
    ) -> Self {
        let bound = constant * rhs * (1.0 + slack);
        let pass = lhs.is_finite() && bound.is_finite() && lhs <= bound;
        Self {
            check: check.into(),
            theorem_ref: theorem_ref.into(),
            lhs,
            rhs,
            constant,
            slack,
            pass,
            seed: None,
            trials: 1,
            witness_digest: None,
            note: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_digest(mut self, digest: String) -> Self {
        self.witness_digest = Some(digest);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// All records produced by one named check, plus any curves it traced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub records: Vec<InequalityReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub series: BTreeMap<String, Vec<f64>>,
}

impl CheckOutcome {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), records: Vec::new(), series: BTreeMap::new() }
    }

    pub fn push(&mut self, record: InequalityReport) {
        self.records.push(record);
    }

    pub fn with_series(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.series.insert(name.into(), values);
        self
    }

    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityReport> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Largest `lhs / (constant * rhs)` over the records; infinite when a
    /// record has a zero bound and positive left side.
    pub fn worst_margin(&self) -> f64 {
        self.records
            .iter()
            .map(|r| {
                let bound = r.constant * r.rhs;
                if bound > 0.0 {
                    r.lhs / bound
                } else if r.lhs > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn extend(&mut self, other: CheckOutcome) {
        self.records.extend(other.records);
        for (k, v) in other.series {
            self.series.insert(k, v);
        }
    }
}

/// Hex SHA-256 of the JSON encoding of `value`.
pub fn digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("witness types serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
