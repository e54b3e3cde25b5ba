//! Machine-readable verification outcomes.

use serde::{Deserialize, Serialize};

/// Residual terms beyond this count are summarized by `residual_count` only.
pub const RESIDUAL_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Nonzero,
}

/// Per-stage summary of a proof replay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub stage: usize,
    pub description: String,
    pub term_count: usize,
    pub delta_free_terms: usize,
    pub residual_nonzero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_mismatches: Option<usize>,
    pub ok: bool,
    pub elapsed_ms: u64,
}

/// Outcome of one verification run. `verdict == Zero` iff `residual_terms` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub m: u32,
    pub mode: String,
    pub verdict: Verdict,
    pub residual_terms: Vec<String>,
    pub residual_count: usize,
    pub summand_count: u64,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets_checked: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitted_scalar: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitted_mismatches: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<StageSummary>>,
}

impl VerifyReport {
    pub fn new(identity: &str, m: u32, mode: &str) -> Self {
        VerifyReport {
            identity: identity.to_string(),
            m,
            mode: mode.to_string(),
            verdict: Verdict::Zero,
            residual_terms: Vec::new(),
            residual_count: 0,
            summand_count: 0,
            elapsed_ms: 0,
            term_count: None,
            window: None,
            order: None,
            prime: None,
            trials: None,
            seed: None,
            targets_checked: None,
            fitted_scalar: None,
            fitted_mismatches: None,
            stages: None,
        }
    }

    /// Records residual entries (already in canonical order); sets the verdict.
    pub fn set_residual<I: IntoIterator<Item = String>>(&mut self, residual: I) {
        let all: Vec<String> = residual.into_iter().collect();
        self.residual_count = all.len();
        self.residual_terms = all.into_iter().take(RESIDUAL_CAP).collect();
        self.verdict = if self.residual_count == 0 {
            Verdict::Zero
        } else {
            Verdict::Nonzero
        };
    }

    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }

    /// Copy with every wall-clock field cleared; the form compared across thread counts.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        if let Some(stages) = r.stages.as_mut() {
            for s in stages {
                s.elapsed_ms = 0;
            }
        }
        r
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
