//! Report assembly and serialization.

use std::io::Write;

use bimult::config::{ExperimentConfig, OutputFormat};
use bimult::verification::CheckOutcome;
use serde::Serialize;

/// Plot-ready numeric table.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub op: String,
    pub config: ExperimentConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self { op: config.op.clone(), config: config.clone(), checks: Vec::new(), table: None, details: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn record_count(&self) -> usize {
        self.checks.iter().map(|c| c.records.len()).sum()
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failures().count()).sum()
    }

    pub fn write(&self, format: OutputFormat, out: impl Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)
            }
            OutputFormat::Csv => self.write_csv(out),
        }
    }

    /// Tables are written as-is; otherwise one row per check record.
    fn write_csv(&self, out: impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(table) = &self.table {
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|v| fmt_float(*v)))?;
            }
        } else {
            w.write_record(["check", "theorem_ref", "lhs", "rhs", "constant", "slack", "pass", "seed", "trials", "witness_digest", "note"])?;
            for rec in self.checks.iter().flat_map(|c| &c.records) {
                w.write_record([
                    rec.check.clone(),
                    rec.theorem_ref.clone(),
                    fmt_float(rec.lhs),
                    fmt_float(rec.rhs),
                    fmt_float(rec.constant),
                    fmt_float(rec.slack),
                    rec.pass.to_string(),
                    rec.seed.map(|s| s.to_string()).unwrap_or_default(),
                    rec.trials.to_string(),
                    rec.witness_digest.clone().unwrap_or_default(),
                    rec.note.clone().unwrap_or_default(),
                ])?;
            }
        }
        w.flush()
    }
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, f64::MAX, 0.0] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }
}
