//! Exhaustive checks of the identities satisfied by `p` and `q`, plus the
//! cross-checks against the game solver and the prime sieve.
//!
//! Every identity is checked on the largest sub-range of `[1, n_max]` on
//! which it can be evaluated without reading past the materialized table.
//! Composed identities such as `q(n) = p(p(n)) + 1` therefore cover fewer
//! values of `n` than `n_max`; the report records the range actually used.

mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{classify_closed_form, solve_retrograde, GameError, GameState};
use crate::primes::{PrimeError, PrimeGapTable};
use crate::seq::{build_recursive, Membership, PairTable, SeqError, SeqKind};

use report::Tally;
pub use report::{CheckedRange, Counterexample, Status, VerificationReport, COUNTEREXAMPLE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Prime(#[from] PrimeError),
}

/// The identity registry, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    #[serde(rename = "L1")]
    Monotone,
    #[serde(rename = "C2")]
    NoTwoQ,
    #[serde(rename = "L2")]
    Partition,
    #[serde(rename = "L3")]
    DeltaP,
    #[serde(rename = "C-dq")]
    DeltaQ,
    #[serde(rename = "C-no3p")]
    NoThreeP,
    #[serde(rename = "L4")]
    QIsPpPlusOne,
    #[serde(rename = "L5")]
    DeltaPIff,
    #[serde(rename = "C3")]
    CountRecurrence,
    #[serde(rename = "C-qp")]
    QOfP,
    #[serde(rename = "L-pq")]
    POfQ,
    #[serde(rename = "C-pair")]
    PairClosure,
    #[serde(rename = "C-final")]
    PqMinusQp,
    #[serde(rename = "L-E")]
    ErrorBound,
    #[serde(rename = "E-zero")]
    ErrorZero,
    #[serde(rename = "game-equiv")]
    GameEquivalence,
    #[serde(rename = "prime-claim")]
    PrimeClaim,
}

impl Identity {
    pub const ALL: [Identity; 17] = [
        Identity::Monotone,
        Identity::NoTwoQ,
        Identity::Partition,
        Identity::DeltaP,
        Identity::DeltaQ,
        Identity::NoThreeP,
        Identity::QIsPpPlusOne,
        Identity::DeltaPIff,
        Identity::CountRecurrence,
        Identity::QOfP,
        Identity::POfQ,
        Identity::PairClosure,
        Identity::PqMinusQp,
        Identity::ErrorBound,
        Identity::ErrorZero,
        Identity::GameEquivalence,
        Identity::PrimeClaim,
    ];

    /// The identities that depend only on a [`PairTable`].
    pub const SEQUENCE: [Identity; 15] = [
        Identity::Monotone,
        Identity::NoTwoQ,
        Identity::Partition,
        Identity::DeltaP,
        Identity::DeltaQ,
        Identity::NoThreeP,
        Identity::QIsPpPlusOne,
        Identity::DeltaPIff,
        Identity::CountRecurrence,
        Identity::QOfP,
        Identity::POfQ,
        Identity::PairClosure,
        Identity::PqMinusQp,
        Identity::ErrorBound,
        Identity::ErrorZero,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::Monotone => "L1",
            Identity::NoTwoQ => "C2",
            Identity::Partition => "L2",
            Identity::DeltaP => "L3",
            Identity::DeltaQ => "C-dq",
            Identity::NoThreeP => "C-no3p",
            Identity::QIsPpPlusOne => "L4",
            Identity::DeltaPIff => "L5",
            Identity::CountRecurrence => "C3",
            Identity::QOfP => "C-qp",
            Identity::POfQ => "L-pq",
            Identity::PairClosure => "C-pair",
            Identity::PqMinusQp => "C-final",
            Identity::ErrorBound => "L-E",
            Identity::ErrorZero => "E-zero",
            Identity::GameEquivalence => "game-equiv",
            Identity::PrimeClaim => "prime-claim",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::Monotone => "p(n+1) > p(n)",
            Identity::NoTwoQ => "no two consecutive integers in q",
            Identity::Partition => "each integer in exactly one of p, q",
            Identity::DeltaP => "p(n+1) - p(n) in {1, 2}",
            Identity::DeltaQ => "q(n+1) - q(n) in {2, 3}",
            Identity::NoThreeP => "no three consecutive integers in p",
            Identity::QIsPpPlusOne => "q(n) = p(p(n)) + 1",
            Identity::DeltaPIff => "p(n+1) - p(n) = 2 iff n in p",
            Identity::CountRecurrence => "p(n+1) = #{i <= n : i in p} + n + 1",
            Identity::QOfP => "q(p(n)) = p(n) + q(n) - 1",
            Identity::POfQ => "p(q(n)) = p(n) + q(n)",
            Identity::PairClosure => "(p+q, p+2q) at index q(n) is a pair",
            Identity::PqMinusQp => "p(q(n)) = q(p(n)) + 1",
            Identity::ErrorBound => "p(n) - floor(n*phi) in {-1, 0, 1}",
            Identity::ErrorZero => "p(n) = floor(n*phi) (conjecture)",
            Identity::GameEquivalence => "losing states = {(p(n), q(n))}",
            Identity::PrimeClaim => "Q(P(n) - n - 1) = P(n) - 1",
        }
    }

    /// Name of the variable the checked range refers to.
    pub fn variable(self) -> &'static str {
        match self {
            Identity::NoTwoQ | Identity::Partition | Identity::NoThreeP => "m",
            Identity::GameEquivalence => "b",
            _ => "n",
        }
    }

    /// True for checks of an open conjecture rather than a proved statement.
    pub fn is_conjecture(self) -> bool {
        self == Identity::ErrorZero
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

/// Integers `1..=p(N)` classified using only the `p` and `q` arrays.
///
/// Built independently of the table's own membership index so a corrupted
/// array shows up as a collision or a hole.
struct ArrayMembership {
    hits: Vec<(u32, u32)>,
}

impl ArrayMembership {
    fn new(t: &PairTable) -> Self {
        let bound = t.p_values().last().copied().unwrap_or(0) as usize;
        let mut hits = vec![(0u32, 0u32); bound + 1];
        for &v in t.p_values() {
            if let Some(h) = hits.get_mut(v as usize) {
                h.0 += 1;
            }
        }
        for &v in t.q_values() {
            if let Some(h) = hits.get_mut(v as usize) {
                h.1 += 1;
            }
        }
        Self { hits }
    }

    fn bound(&self) -> u64 {
        self.hits.len() as u64 - 1
    }

    /// `Some(kind)` when `m` is hit exactly once.
    fn kind(&self, m: u64) -> Option<SeqKind> {
        match self.hits[m as usize] {
            (1, 0) => Some(SeqKind::P),
            (0, 1) => Some(SeqKind::Q),
            _ => None,
        }
    }
}

/// Length of the longest prefix of `values` with every entry `≤ bound`.
fn prefix_within(values: &[u64], bound: u64) -> u64 {
    values
        .iter()
        .take_while(|&&v| (1..=bound).contains(&v))
        .count() as u64
}

/// Checks one sequence identity against `table`.
///
/// `GameEquivalence` and `PrimeClaim` do not depend on a pair table; use
/// [`check_game_equivalence`] and [`check_prime_claim`].
pub fn check_sequence_identity(
    identity: Identity,
    table: &PairTable,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let n_max = table.n_max();
    let p = |n: u64| table.p_values()[n as usize - 1];
    let q = |n: u64| table.q_values()[n as usize - 1];
    let mut tally = Tally::new();

    let range = match identity {
        Identity::Monotone => {
            let range = CheckedRange::new(1, n_max - 1);
            for n in 1..n_max {
                tally.check(
                    n,
                    p(n + 1) > p(n),
                    || format!("p(n+1) > {}", p(n)),
                    || format!("p(n+1) = {}", p(n + 1)),
                );
            }
            range
        }
        Identity::NoTwoQ => {
            let arrays = ArrayMembership::new(table);
            let hi = arrays.bound().saturating_sub(1);
            for m in 1..=hi {
                let both_q =
                    arrays.kind(m) == Some(SeqKind::Q) && arrays.kind(m + 1) == Some(SeqKind::Q);
                tally.check(
                    m,
                    !both_q,
                    || "m or m+1 in p".into(),
                    || "m and m+1 both in q".into(),
                );
            }
            CheckedRange::new(1, hi)
        }
        Identity::Partition => {
            let arrays = ArrayMembership::new(table);
            for m in 1..=arrays.bound() {
                let (in_p, in_q) = arrays.hits[m as usize];
                tally.check(
                    m,
                    in_p + in_q == 1,
                    || "exactly one occurrence".into(),
                    || format!("{in_p} in p, {in_q} in q"),
                );
            }
            // The table's own membership index must agree with the arrays.
            for n in 1..=n_max {
                for (kind, value) in [(SeqKind::P, p(n)), (SeqKind::Q, q(n))] {
                    let expected = Membership { kind, index: n };
                    let actual = table.classify_integer(value).ok();
                    tally.check(
                        value,
                        actual == Some(expected),
                        || format!("{kind:?}({n})"),
                        || match actual {
                            Some(m) => format!("{:?}({})", m.kind, m.index),
                            None => "unindexed".into(),
                        },
                    );
                }
            }
            CheckedRange::new(1, arrays.bound())
        }
        Identity::DeltaP => {
            for n in 1..n_max {
                let d = p(n + 1) as i128 - p(n) as i128;
                tally.check(n, d == 1 || d == 2, || "1 or 2".into(), || d.to_string());
            }
            CheckedRange::new(1, n_max - 1)
        }
        Identity::DeltaQ => {
            for n in 1..n_max {
                let d = q(n + 1) as i128 - q(n) as i128;
                tally.check(n, d == 2 || d == 3, || "2 or 3".into(), || d.to_string());
            }
            CheckedRange::new(1, n_max - 1)
        }
        Identity::NoThreeP => {
            let arrays = ArrayMembership::new(table);
            let hi = arrays.bound().saturating_sub(2);
            for m in 1..=hi {
                let all_p = (m..m + 3).all(|v| arrays.kind(v) == Some(SeqKind::P));
                tally.check(
                    m,
                    !all_p,
                    || "one of m..m+2 in q".into(),
                    || "m, m+1, m+2 all in p".into(),
                );
            }
            CheckedRange::new(1, hi)
        }
        Identity::QIsPpPlusOne => {
            let hi = prefix_within(table.p_values(), n_max);
            for n in 1..=hi {
                tally.eq(n, q(n), p(p(n)) + 1);
            }
            CheckedRange::new(1, hi)
        }
        Identity::DeltaPIff => {
            let arrays = ArrayMembership::new(table);
            let hi = (n_max - 1).min(arrays.bound());
            for n in 1..=hi {
                let d = p(n + 1) as i128 - p(n) as i128;
                let kind = arrays.kind(n);
                let ok = match kind {
                    Some(SeqKind::P) => d == 2,
                    Some(SeqKind::Q) => d == 1,
                    None => false,
                };
                tally.check(
                    n,
                    ok,
                    || match kind {
                        Some(SeqKind::P) => "delta 2 (n in p)".into(),
                        Some(SeqKind::Q) => "delta 1 (n in q)".into(),
                        None => "n in exactly one of p, q".into(),
                    },
                    || format!("delta {d}"),
                );
            }
            CheckedRange::new(1, hi)
        }
        Identity::CountRecurrence => {
            for n in 1..n_max {
                tally.eq(n, p(n + 1), table.next_p_via_count(n)?);
            }
            CheckedRange::new(1, n_max - 1)
        }
        Identity::QOfP => {
            let hi = prefix_within(table.p_values(), n_max);
            for n in 1..=hi {
                tally.eq(n, p(n) + q(n) - 1, q(p(n)));
            }
            CheckedRange::new(1, hi)
        }
        Identity::POfQ => {
            let hi = prefix_within(table.q_values(), n_max);
            for n in 1..=hi {
                tally.eq(n, p(n) + q(n), p(q(n)));
            }
            CheckedRange::new(1, hi)
        }
        Identity::PairClosure => {
            let hi = prefix_within(table.q_values(), n_max);
            for n in 1..=hi {
                let expected = (p(n) + q(n), p(n) + 2 * q(n));
                let actual = (p(q(n)), q(q(n)));
                tally.check(
                    n,
                    expected == actual,
                    || format!("{expected:?}"),
                    || format!("{actual:?}"),
                );
            }
            CheckedRange::new(1, hi)
        }
        Identity::PqMinusQp => {
            let hi =
                prefix_within(table.q_values(), n_max).min(prefix_within(table.p_values(), n_max));
            for n in 1..=hi {
                tally.eq(n, q(p(n)) + 1, p(q(n)));
            }
            CheckedRange::new(1, hi)
        }
        Identity::ErrorBound => {
            for n in 1..=n_max {
                let e = table.error_term(n)?.e;
                tally.check(
                    n,
                    e.abs() <= 1,
                    || "|E(n)| <= 1".into(),
                    || format!("E(n) = {e}"),
                );
            }
            CheckedRange::new(1, n_max)
        }
        Identity::ErrorZero => {
            for n in 1..=n_max {
                let r = table.error_term(n)?;
                tally.check(
                    n,
                    r.e == 0,
                    || format!("p(n) = {}", r.floor_phi_n),
                    || format!("p(n) = {}", r.p_n),
                );
            }
            CheckedRange::new(1, n_max)
        }
        Identity::GameEquivalence | Identity::PrimeClaim => {
            unreachable!("{identity} is not a sequence identity")
        }
    };

    let mut report = tally.finish(identity, range);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Brute-force solver versus pair table versus closed-form classifier, over
/// every state with `b ≤ cap`.
pub fn check_game_equivalence(cap: u64) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let solved = solve_retrograde(cap)?;
    let pairs = build_recursive(cap)?;
    let mut tally = Tally::new();

    let mut expected = vec![GameState::new(0, 0)];
    let k = prefix_within(pairs.q_values(), cap) as usize;
    expected.extend((0..k).map(|i| GameState::new(pairs.p_values()[i], pairs.q_values()[i])));
    expected.sort();
    let mut found: Vec<GameState> = solved.losing_states().collect();
    found.sort();

    let (mut i, mut j) = (0, 0);
    while i < expected.len() || j < found.len() {
        match (expected.get(i), found.get(j)) {
            (Some(e), Some(f)) if e == f => {
                i += 1;
                j += 1;
            }
            (Some(e), f) if f.is_none_or(|f| e < f) => {
                tally.check(
                    e.b(),
                    false,
                    || format!("{e} losing"),
                    || format!("{e} winning"),
                );
                i += 1;
            }
            (_, f) => {
                let f = f.expect("expected list exhausted first");
                tally.check(
                    f.b(),
                    false,
                    || format!("{f} winning"),
                    || format!("{f} losing"),
                );
                j += 1;
            }
        }
    }

    for s in solved.states() {
        let brute = solved.get(s)?.outcome;
        let closed = classify_closed_form(s)?.outcome;
        tally.check(
            s.b(),
            brute == closed,
            || format!("{s} {brute:?} (retrograde)"),
            || format!("{s} {closed:?} (closed form)"),
        );
    }

    let mut report = tally.finish(Identity::GameEquivalence, CheckedRange::new(0, cap));
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `Q(P(n) − n − 1) = P(n) − 1` for `3 ≤ n ≤ n_max`, sieve sized automatically.
pub fn check_prime_claim(n_max: u64) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let table = PrimeGapTable::build_for_count(n_max.max(3))?;
    let mut tally = Tally::new();
    for n in 3..=n_max {
        let ev = table.check_prime_claim(n)?;
        tally.eq(n, ev.p_n - 1, ev.q_at_index);
    }
    let mut report = tally.finish(Identity::PrimeClaim, CheckedRange::new(3, n_max));
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs one identity. `n_max` is the table size for sequence identities,
/// the solver cap for `game-equiv`, and the largest prime index for
/// `prime-claim`.
pub fn verify_identity(identity: Identity, n_max: u64) -> Result<VerificationReport, VerifyError> {
    match identity {
        Identity::GameEquivalence => check_game_equivalence(n_max),
        Identity::PrimeClaim => check_prime_claim(n_max),
        _ => check_sequence_identity(identity, &build_recursive(n_max)?),
    }
}

/// Looks an identity up by its registry name and runs it.
pub fn verify_named(name: &str, n_max: u64) -> Result<VerificationReport, VerifyError> {
    verify_identity(name.parse()?, n_max)
}

/// Runs the whole registry. Never stops early: an identity that cannot run
/// yields a failed report carrying the error. Reports come back in registry
/// order.
pub fn verify_all(n_max: u64, game_cap: u64, prime_n_max: u64) -> Vec<VerificationReport> {
    let start = Instant::now();
    let table = build_recursive(n_max);
    Identity::ALL
        .par_iter()
        .map(|&identity| {
            let result = match identity {
                Identity::GameEquivalence => check_game_equivalence(game_cap),
                Identity::PrimeClaim => check_prime_claim(prime_n_max),
                _ => match &table {
                    Ok(t) => check_sequence_identity(identity, t),
                    Err(e) => Err(e.clone().into()),
                },
            };
            result.unwrap_or_else(|e| {
                VerificationReport::errored(identity, e.to_string(), start.elapsed())
            })
        })
        .collect()
}

/// Runs every sequence identity against a copy of `table` whose `p(n)` has
/// been replaced by `value`. A sound harness reports failures here.
pub fn verify_corrupted(
    table: &PairTable,
    n: u64,
    value: u64,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let corrupted = table.with_corrupted_p(n, value)?;
    Identity::SEQUENCE
        .iter()
        .map(|&id| check_sequence_identity(id, &corrupted))
        .collect()
}
