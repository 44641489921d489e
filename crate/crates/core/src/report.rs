//! Shared residual-report plumbing.
//!
//! Every checker in the crate reports named residuals. A residual passes
//! when it stays below `tol * sqrt(dim) * scale`, where `scale` is 1 for
//! identity-style relations and the larger operand norm for equations
//! between products.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<ResidualEntry>,
}

impl Report {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.entries.push(ResidualEntry {
            name: name.into(),
            value,
            threshold,
            pass: value < threshold,
        });
    }

    /// Records a residual with the standard `tol * sqrt(dim) * scale`
    /// threshold.
    pub fn check(&mut self, name: impl Into<String>, value: f64, tol: f64, dim: usize, scale: f64) {
        let threshold = tol * (dim as f64).sqrt() * scale.max(1.0);
        self.push(name, value, threshold);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.value).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Largest residual among entries whose name starts with `prefix`.
    pub fn max_with_prefix(&self, prefix: &str) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.name.starts_with(prefix))
            .map(|e| e.value)
            .fold(0.0, f64::max)
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn failing(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{} {:<48} {:>12.4e} (< {:.1e})",
                if e.pass { "ok  " } else { "FAIL" },
                e.name,
                e.value,
                e.threshold
            )?;
        }
        Ok(())
    }
}
