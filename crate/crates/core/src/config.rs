use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::field::DEFAULT_FIELD_CAP;

/// Tunables shared by the engine, the verifier and the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Seed for every randomized step.
    pub seed: u64,
    /// Groups up to this order are scanned element by element; absence of
    /// an element is only certified in this regime.
    pub exhaustive_cap: u128,
    /// Random elements drawn when a group is too large to scan.
    pub sample_budget: usize,
    /// Wall-clock budget per verifier check; `None` means unbounded.
    pub time_budget_seconds: Option<f64>,
    /// Bound on field orders `p^e` (and hence on constructed degrees).
    pub degree_cap: u64,
    /// Largest degree accepted by the converse search.
    pub converse_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0x5eed,
            exhaustive_cap: 1_000_000,
            sample_budget: 20_000,
            time_budget_seconds: None,
            degree_cap: DEFAULT_FIELD_CAP,
            converse_bound: 10,
        }
    }
}

impl Config {
    pub fn time_budget(&self) -> Option<Duration> {
        self.time_budget_seconds.map(Duration::from_secs_f64)
    }
}
