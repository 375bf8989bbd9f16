//! JSON and CSV experiment reports.

use serde::Serialize;
use serde_json::{Map, Value};

use super::fit::RateFit;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitSummary {
    pub slope: f64,
    pub intercept: f64,
}

impl From<&RateFit> for FitSummary {
    fn from(f: &RateFit) -> Self {
        FitSummary { slope: f.slope, intercept: f.intercept }
    }
}

/// `{"experiment", "genset", "seed", "rows", "fit"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub genset: String,
    pub seed: u64,
    pub rows: Vec<Map<String, Value>>,
    pub fit: Option<FitSummary>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, genset: impl Into<String>, seed: u64) -> Self {
        ExperimentReport { experiment: experiment.into(), genset: genset.into(), seed, rows: Vec::new(), fit: None }
    }

    /// Appends a row; `row` must serialize to a JSON object.
    pub fn push<T: Serialize>(&mut self, row: &T) -> Result<()> {
        match serde_json::to_value(row)? {
            Value::Object(m) => {
                self.rows.push(m);
                Ok(())
            }
            other => Err(Error::Internal(format!("report row is not an object: {other}"))),
        }
    }

    pub fn with_fit(mut self, fit: Option<&RateFit>) -> Self {
        self.fit = fit.map(FitSummary::from);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One line per row; columns from the first row's scalar fields.
    pub fn to_csv(&self) -> String {
        let Some(first) = self.rows.first() else {
            return String::new();
        };
        let cols: Vec<&String> = first.iter().filter(|(_, v)| !v.is_array() && !v.is_object()).map(|(k, _)| k).collect();
        let mut out = cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = cols
                .iter()
                .map(|c| match row.get(*c) {
                    Some(Value::String(s)) => s.clone(),
                    Some(Value::Null) | None => String::new(),
                    Some(v) => v.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
