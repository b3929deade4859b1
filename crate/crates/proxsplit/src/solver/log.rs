//! Append-only per-iteration records and their CSV export.

use std::io::Write;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub n: usize,
    /// Objective at the post-update iterate, when every term reports one.
    pub objective: Option<f64>,
    /// Relative step `||x_{n+1} - x_n|| / max(||x_n||, eps)`.
    pub residual: f64,
    pub lambda: f64,
    /// Wall time of the iteration.
    pub millis: f64,
    /// Wall time per proximity operator within the iteration.
    pub prox_millis: Vec<f64>,
    /// Fixed-point residual `||T y_n - y_n||` (Douglas-Rachford only).
    pub fixed_point_residual: Option<f64>,
}

#[derive(Debug, Default, Clone)]
pub struct IterationLog {
    records: Vec<IterationRecord>,
}

impl IterationLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: IterationRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[IterationRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&IterationRecord> {
        self.records.last()
    }

    /// CSV with columns `n,objective,residual,lambda,millis`.
    /// An unknown objective leaves the field empty; infinities print as `inf`.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        let ctx = |e| Error::Io {
            context: "writing iteration log".into(),
            source: e,
        };
        writeln!(out, "n,objective,residual,lambda,millis").map_err(ctx)?;
        for r in &self.records {
            let obj = match r.objective {
                None => String::new(),
                Some(v) if v.is_infinite() => "inf".to_string(),
                Some(v) => format!("{v}"),
            };
            writeln!(
                out,
                "{},{},{},{},{}",
                r.n, obj, r.residual, r.lambda, r.millis
            )
            .map_err(ctx)?;
        }
        Ok(())
    }
}
