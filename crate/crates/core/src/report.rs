use std::time::Instant;

use serde::{Deserialize, Serialize};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// Knobs shared by every exhaustive-or-sampled check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest number of tuples scanned exhaustively.
    pub budget: u64,
    pub seed: u64,
    /// Tuples drawn when the exhaustive count exceeds `budget`.
    pub samples: u64,
    /// Largest group order that may be listed element by element.
    pub enumeration_limit: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

/// A counterexample: loop element indices, or permutations as image lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Elements(Vec<usize>),
    Permutations(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
/// The JSON form carries exactly `name`, `status`, `mode`,
/// `counterexample` and `timing_ms`; `checked` and `note` are for humans.
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub mode: Mode,
    /// Number of tuples (or items) actually examined.
    #[serde(skip, default)]
    pub checked: u64,
    pub counterexample: Option<Witness>,
    #[serde(skip, default)]
    pub note: Option<String>,
    pub timing_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Skipped(reason.into()),
            mode: Mode::Exhaustive,
            checked: 0,
            counterexample: None,
            note: None,
            timing_ms: 0,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn elements_witness(&self) -> Option<&[usize]> {
        match &self.counterexample {
            Some(Witness::Elements(v)) => Some(v),
            _ => None,
        }
    }
}

/// Accumulates the outcome of one check and stamps the elapsed time.
pub(crate) struct ReportBuilder {
    name: String,
    mode: Mode,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        ReportBuilder {
            name: name.into(),
            mode: Mode::Exhaustive,
            start: Instant::now(),
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn finish(self, checked: u64, counterexample: Option<Witness>) -> CheckReport {
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckReport {
            name: self.name,
            status,
            mode: self.mode,
            checked,
            counterexample,
            note: None,
            timing_ms: self.start.elapsed().as_millis() as u64,
        }
    }

    pub fn elements(self, checked: u64, witness: Option<Vec<usize>>) -> CheckReport {
        self.finish(checked, witness.map(Witness::Elements))
    }
}
