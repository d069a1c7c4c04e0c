use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::Identity;

/// Maximum counterexamples kept per report.
pub const COUNTEREXAMPLE_CAP: usize = 10;

/// Inclusive range of the identity's variable that was actually checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedRange {
    pub lo: u64,
    pub hi: u64,
}

impl CheckedRange {
    /// `[lo, hi]`, or `None` when `hi < lo`.
    pub fn new(lo: u64, hi: u64) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    /// Number of values checked.
    pub fn count(&self) -> u64 {
        self.hi - self.lo + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub expected: String,
    pub actual: String,
}

/// How a report should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A conjecture check failed. Not an error of the toolkit.
    ConjectureCounterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    /// `None` when the valid sub-range is empty.
    pub range: Option<CheckedRange>,
    pub passed: bool,
    /// Total failing cases; only the first [`COUNTEREXAMPLE_CAP`] are kept.
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Set when the check could not run at all (table construction failed).
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        match (self.passed, self.identity.is_conjecture()) {
            (true, _) => Status::Pass,
            (false, true) if self.error.is_none() => Status::ConjectureCounterexample,
            (false, _) => Status::Fail,
        }
    }

    pub(crate) fn errored(identity: Identity, error: String, elapsed: Duration) -> Self {
        Self {
            identity,
            range: None,
            passed: false,
            failures: 0,
            counterexamples: Vec::new(),
            error: Some(error),
            elapsed,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ConjectureCounterexample => "CONJECTURE-COUNTEREXAMPLE",
        };
        let range = match self.range {
            Some(r) => format!("{} in [{}, {}]", self.identity.variable(), r.lo, r.hi),
            None => "empty range".to_string(),
        };
        write!(
            f,
            "{status:<5} {:<12} {:<36} {range:<24} failures={} ({:.1?})",
            self.identity.id(),
            self.identity.statement(),
            self.failures,
            self.elapsed
        )?;
        if let Some(err) = &self.error {
            write!(f, "\n      error: {err}")?;
        }
        for c in &self.counterexamples {
            write!(
                f,
                "\n      {} = {}: expected {}, got {}",
                self.identity.variable(),
                c.n,
                c.expected,
                c.actual
            )?;
        }
        Ok(())
    }
}

/// Accumulates failures while an identity is checked.
pub(crate) struct Tally {
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl Tally {
    pub fn new() -> Self {
        Self {
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        n: u64,
        ok: bool,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) {
        if ok {
            return;
        }
        self.failures += 1;
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(Counterexample {
                n,
                expected: expected(),
                actual: actual(),
            });
        }
    }

    pub fn eq<T: PartialEq + fmt::Display>(&mut self, n: u64, expected: T, actual: T) {
        let ok = expected == actual;
        self.check(n, ok, || expected.to_string(), || actual.to_string());
    }

    pub fn finish(self, identity: Identity, range: Option<CheckedRange>) -> VerificationReport {
        VerificationReport {
            identity,
            range,
            passed: self.failures == 0,
            failures: self.failures,
            counterexamples: self.counterexamples,
            error: None,
            elapsed: Duration::ZERO,
        }
    }
}
