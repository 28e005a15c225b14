//! JSON suite reports and deterministic parallel trial execution.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{trial_rng, TrialRng};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const MAX_ARTIFACTS: usize = 10;

/// Outcome of a suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    /// Trials whose hypotheses could not be met.
    pub skipped: usize,
    /// Largest normalized violation measure seen (negative PSD slack or
    /// equality residual); 0 when every check is comfortably satisfied.
    pub worst_residual: f64,
    pub metrics: BTreeMap<String, f64>,
    pub artifacts: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// Per-trial result fed into [`SuiteReport::from_outcomes`].
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass { residual: f64 },
    Fail { residual: f64, artifact: serde_json::Value },
    Skipped,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            trials: 0,
            passes: 0,
            failures: 0,
            skipped: 0,
            worst_residual: 0.0,
            metrics: BTreeMap::new(),
            artifacts: Vec::new(),
            timestamp: None,
        }
    }

    pub fn from_outcomes(suite: &str, seed: u64, outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut r = Self::new(suite, seed);
        for o in outcomes {
            r.push(o);
        }
        r
    }

    pub fn push(&mut self, o: Outcome) {
        self.trials += 1;
        match o {
            Outcome::Pass { residual } => {
                self.passes += 1;
                self.note_residual(residual);
            }
            Outcome::Fail { residual, artifact } => {
                self.failures += 1;
                self.note_residual(residual);
                if self.artifacts.len() < MAX_ARTIFACTS {
                    self.artifacts.push(artifact);
                }
            }
            Outcome::Skipped => self.skipped += 1,
        }
    }

    fn note_residual(&mut self, r: f64) {
        let r = if r.is_finite() { r } else { f64::MAX };
        self.worst_residual = self.worst_residual.max(r);
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), if value.is_finite() { value } else { f64::MAX });
    }

    pub fn all_pass(&self) -> bool {
        self.failures == 0
    }

    /// Folds another report in (used by suites made of several checks).
    pub fn absorb(&mut self, other: SuiteReport) {
        self.trials += other.trials;
        self.passes += other.passes;
        self.failures += other.failures;
        self.skipped += other.skipped;
        self.worst_residual = self.worst_residual.max(other.worst_residual);
        for (k, v) in other.metrics {
            self.metrics.insert(format!("{}.{k}", other.suite), v);
        }
        for a in other.artifacts {
            if self.artifacts.len() < MAX_ARTIFACTS {
                self.artifacts.push(a);
            }
        }
    }
}

/// Runs `trials` independent trials in parallel, each with its own stream
/// derived from `(seed, index)`; results come back in index order.
pub fn run_trials<T, F>(seed: u64, trials: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut TrialRng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            f(i, &mut rng)
        })
        .collect()
}

/// `max(0, -slack)`: how far a relative PSD slack falls below zero.
pub fn violation(relative_slack: f64) -> f64 {
    (-relative_slack).max(0.0)
}
