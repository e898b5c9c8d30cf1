use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped(_) => "skipped",
        }
    }
}

/// Where a check went wrong. Entries are zero-based internally and
/// rendered one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub entry: Option<(usize, usize)>,
    pub detail: String,
}

impl Witness {
    pub fn at(i: usize, j: usize, detail: impl Into<String>) -> Self {
        Witness { entry: Some((i, j)), detail: detail.into() }
    }

    pub fn note(detail: impl Into<String>) -> Self {
        Witness { entry: None, detail: detail.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.entry {
            Some((i, j)) => write!(f, "entry ({}, {}): {}", i + 1, j + 1, self.detail),
            None => f.write_str(&self.detail),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    /// The identity being checked, as a formula.
    pub paper_ref: String,
    pub status: CheckStatus,
    pub witness: Option<Witness>,
    /// Set when the failure came from a broken pipeline invariant rather
    /// than a false identity.
    pub internal: bool,
    pub elapsed: Duration,
}

pub(crate) enum Outcome {
    Pass,
    Fail(Witness),
    Skip(String),
    Internal(Witness),
}

impl From<Result<(), Witness>> for Outcome {
    fn from(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(w) => Outcome::Fail(w),
        }
    }
}

pub(crate) fn timed(name: impl Into<String>, formula: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (status, witness, internal) = match outcome {
        Outcome::Pass => (CheckStatus::Pass, None, false),
        Outcome::Fail(w) => (CheckStatus::Fail, Some(w), false),
        Outcome::Skip(why) => (CheckStatus::Skipped(why), None, false),
        Outcome::Internal(w) => (CheckStatus::Fail, Some(w), true),
    };
    CheckResult { name: name.into(), paper_ref: formula.to_string(), status, witness, internal, elapsed }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub group: String,
    pub invariants: String,
    pub field: String,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.results {
            match r.status {
                CheckStatus::Pass => s.passed += 1,
                CheckStatus::Fail => s.failed += 1,
                CheckStatus::Skipped(_) => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.summary().failed == 0
    }

    pub fn has_internal_error(&self) -> bool {
        self.results.iter().any(|r| r.internal)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == CheckStatus::Fail)
    }
}
