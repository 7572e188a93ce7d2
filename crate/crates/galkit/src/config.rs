//! Runtime budgets and report settings shared by the checkers and the CLI.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Check names to run; empty means the full registry.
    pub checks: Vec<String>,
    /// Largest group order for exhaustive subgroup enumeration.
    pub subgroup_bound: u64,
    /// Largest permutation degree a construction may produce.
    pub degree_budget: usize,
    pub format: ReportFormat,
    /// Seed for the randomized instance sampling (check `bigboy`).
    pub seed: u64,
    /// Number of seeded random instances for sampled checks.
    pub sample_count: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checks: Vec::new(),
            subgroup_bound: 512,
            degree_budget: 300,
            format: ReportFormat::Text,
            seed: 0,
            sample_count: 10,
        }
    }
}

impl SuiteConfig {
    pub fn validated(self) -> crate::Result<Self> {
        if self.subgroup_bound == 0 || self.degree_budget == 0 {
            return Err(crate::Error::InvalidParameter(
                "bounds must be positive".into(),
            ));
        }
        Ok(self)
    }
}
