//! The coupled sequences `p` and `q`.
//!
//! `p(1) = 1`, `q(n) = p(n) + n`, and `p(n + 1)` is the smallest positive
//! integer not yet used by any earlier `p` or `q`. [`PairTable`] materializes
//! a prefix of both sequences together with a membership index that says,
//! for every integer up to `q(n_max)`, which sequence it belongs to.
//!
//! The closed forms `⌊nφ⌋` and `⌊nφ²⌋` live in [`beatty`].

pub mod beatty;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use beatty::{beatty_p, beatty_q, floor_inv_phi, isqrt_u128, MAX_CLOSED_FORM_INDEX};

/// Upper bound on the number of integers a [`PairTable`] may index.
pub const DEFAULT_SPAN_LIMIT: u64 = 3 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sequence index must be at least 1")]
    ZeroIndex,
    #[error("closed form overflows integer width at n = {n}")]
    Overflow { n: u64 },
    #[error("table for n_max = {n_max} needs {needed} slots, limit is {limit}")]
    Capacity { n_max: u64, needed: u64, limit: u64 },
    #[error("{what} = {value} outside table range [1, {max}]")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },
}

/// Which of the two sequences an integer belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    P,
    Q,
}

/// `value = p(index)` or `value = q(index)`, depending on `kind`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Membership {
    pub kind: SeqKind,
    pub index: u64,
}

/// `E(n) = p(n) − ⌊nφ⌋` for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub n: u64,
    pub p_n: u64,
    pub floor_phi_n: u64,
    pub e: i64,
}

/// A materialized prefix `p(1..=n_max)`, `q(1..=n_max)`.
///
/// All accessors are 1-based. The membership index covers `[1, q(n_max)]`;
/// integers in that span that are values of `p` beyond `n_max` are recorded
/// with their true index, so membership lookups never miss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    p: Vec<u64>,
    q: Vec<u64>,
    kind: Vec<Membership>,
}

impl PairTable {
    /// Builds the table by the mex recursion, bounded by [`DEFAULT_SPAN_LIMIT`].
    pub fn build(n_max: u64) -> Result<Self, SeqError> {
        Self::build_with_limit(n_max, DEFAULT_SPAN_LIMIT)
    }

    /// Builds the table by the mex recursion.
    ///
    /// `span_limit` bounds the number of integers the occupancy index may
    /// hold. Since `Δp ≤ 2`, `q(n_max) ≤ 3·n_max`, and `3·n_max + 2` slots
    /// are reserved up front.
    pub fn build_with_limit(n_max: u64, span_limit: u64) -> Result<Self, SeqError> {
        if n_max == 0 {
            return Err(SeqError::ZeroIndex);
        }
        let capacity = n_max
            .checked_mul(3)
            .and_then(|c| c.checked_add(2))
            .filter(|&c| c <= span_limit)
            .ok_or(SeqError::Capacity {
                n_max,
                needed: n_max.saturating_mul(3).saturating_add(2),
                limit: span_limit,
            })?;
        let capacity = capacity as usize;
        let len = n_max as usize;

        // slot[v] holds the membership of integer v once assigned; slot 0 unused.
        let mut slot: Vec<Option<Membership>> = vec![None; capacity + 1];
        let mut p = Vec::with_capacity(len);
        let mut q = Vec::with_capacity(len);
        let mut cursor = 1usize;
        let mut n = 0u64;
        loop {
            while slot[cursor].is_some() {
                cursor += 1;
            }
            n += 1;
            let p_n = cursor as u64;
            let q_n = p_n + n;
            if n > n_max {
                // Keep recording p beyond n_max until the span [1, q(n_max)] is full.
                if p_n > q[len - 1] {
                    break;
                }
                slot[cursor] = Some(Membership {
                    kind: SeqKind::P,
                    index: n,
                });
                continue;
            }
            assert!(
                q_n as usize <= capacity,
                "q({n}) = {q_n} exceeds reserved span"
            );
            slot[cursor] = Some(Membership {
                kind: SeqKind::P,
                index: n,
            });
            slot[q_n as usize] = Some(Membership {
                kind: SeqKind::Q,
                index: n,
            });
            p.push(p_n);
            q.push(q_n);
        }

        let span = q[len - 1] as usize;
        let kind = slot[1..=span]
            .iter()
            .map(|m| m.expect("every integer up to q(n_max) is assigned"))
            .collect();
        Ok(Self { p, q, kind })
    }

    pub fn n_max(&self) -> u64 {
        self.p.len() as u64
    }

    /// Largest integer covered by the membership index, `q(n_max)`.
    pub fn span(&self) -> u64 {
        self.kind.len() as u64
    }

    pub fn p(&self, n: u64) -> Result<u64, SeqError> {
        self.index(n).map(|i| self.p[i])
    }

    pub fn q(&self, n: u64) -> Result<u64, SeqError> {
        self.index(n).map(|i| self.q[i])
    }

    /// `p(1..=n_max)` as a 0-based slice.
    pub fn p_values(&self) -> &[u64] {
        &self.p
    }

    /// `q(1..=n_max)` as a 0-based slice.
    pub fn q_values(&self) -> &[u64] {
        &self.q
    }

    /// `Δp(n) = p(n + 1) − p(n)`, for `n < n_max`.
    pub fn delta_p(&self, n: u64) -> Result<u64, SeqError> {
        let i = self.delta_index(n)?;
        Ok(self.p[i + 1] - self.p[i])
    }

    /// `Δq(n) = q(n + 1) − q(n)`, for `n < n_max`.
    pub fn delta_q(&self, n: u64) -> Result<u64, SeqError> {
        let i = self.delta_index(n)?;
        Ok(self.q[i + 1] - self.q[i])
    }

    /// Which sequence `m` belongs to, and at which index.
    pub fn classify_integer(&self, m: u64) -> Result<Membership, SeqError> {
        if m == 0 || m > self.span() {
            return Err(SeqError::OutOfRange {
                what: "m",
                value: m,
                max: self.span(),
            });
        }
        Ok(self.kind[m as usize - 1])
    }

    /// Recomputes `p(n + 1)` from `p(1..=n)` alone: the number of `i ≤ n`
    /// that are values of `p`, plus `n + 1`.
    pub fn next_p_via_count(&self, n: u64) -> Result<u64, SeqError> {
        let i = self.delta_index(n)?;
        let prefix = &self.p[..=i];
        let count = prefix.partition_point(|&v| v <= n) as u64;
        Ok(count + n + 1)
    }

    /// `E(n)` measured against the recursive table.
    pub fn error_term(&self, n: u64) -> Result<ErrorRecord, SeqError> {
        let p_n = self.p(n)?;
        let floor_phi_n = beatty_p(n)?;
        Ok(ErrorRecord {
            n,
            p_n,
            floor_phi_n,
            e: p_n as i64 - floor_phi_n as i64,
        })
    }

    /// Copy of this table with `p(n)` overwritten and nothing else touched.
    ///
    /// The copy violates the table invariants on purpose; it exists so
    /// verification harnesses can prove they detect corruption.
    pub fn with_corrupted_p(&self, n: u64, value: u64) -> Result<Self, SeqError> {
        let i = self.index(n)?;
        let mut copy = self.clone();
        copy.p[i] = value;
        Ok(copy)
    }

    fn index(&self, n: u64) -> Result<usize, SeqError> {
        if n == 0 || n > self.n_max() {
            return Err(SeqError::OutOfRange {
                what: "n",
                value: n,
                max: self.n_max(),
            });
        }
        Ok(n as usize - 1)
    }

    fn delta_index(&self, n: u64) -> Result<usize, SeqError> {
        if n == 0 || n >= self.n_max() {
            return Err(SeqError::OutOfRange {
                what: "n",
                value: n,
                max: self.n_max().saturating_sub(1),
            });
        }
        Ok(n as usize - 1)
    }
}

/// Builds `p(1..=n_max)` and `q(1..=n_max)` by the mex recursion.
pub fn build_recursive(n_max: u64) -> Result<PairTable, SeqError> {
    PairTable::build(n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Direct transcription of the definition: scan for the smallest
    // positive integer outside U_n at every step. Quadratic.
    fn naive_mex(n_max: usize) -> (Vec<u64>, Vec<u64>) {
        let mut used = std::collections::BTreeSet::new();
        let (mut p, mut q) = (Vec::new(), Vec::new());
        for n in 1..=n_max as u64 {
            let next = (1..).find(|v| !used.contains(v)).unwrap();
            used.insert(next);
            used.insert(next + n);
            p.push(next);
            q.push(next + n);
        }
        (p, q)
    }

    #[test]
    fn first_pairs() {
        let t = build_recursive(1).unwrap();
        assert_eq!((t.p_values(), t.q_values()), (&[1][..], &[2][..]));
        let t = build_recursive(2).unwrap();
        assert_eq!((t.p_values(), t.q_values()), (&[1, 3][..], &[2, 5][..]));
        let t = build_recursive(5).unwrap();
        assert_eq!(t.p_values(), &[1, 3, 4, 6, 8]);
        assert_eq!(t.q_values(), &[2, 5, 7, 10, 13]);
    }

    #[test]
    fn matches_naive_definition() {
        let (p, q) = naive_mex(400);
        let t = build_recursive(400).unwrap();
        assert_eq!(t.p_values(), &p[..]);
        assert_eq!(t.q_values(), &q[..]);
    }

    #[test]
    fn zero_and_capacity_errors() {
        assert_eq!(build_recursive(0), Err(SeqError::ZeroIndex));
        assert!(matches!(
            PairTable::build_with_limit(10, 31),
            Err(SeqError::Capacity { needed: 32, .. })
        ));
        assert!(PairTable::build_with_limit(10, 32).is_ok());
        assert!(matches!(
            PairTable::build(u64::MAX),
            Err(SeqError::Capacity { .. })
        ));
    }

    #[test]
    fn membership_lookup() {
        let t = build_recursive(3).unwrap();
        assert_eq!(t.span(), 7);
        assert_eq!(
            t.classify_integer(2).unwrap(),
            Membership {
                kind: SeqKind::Q,
                index: 1
            }
        );
        assert_eq!(
            t.classify_integer(4).unwrap(),
            Membership {
                kind: SeqKind::P,
                index: 3
            }
        );
        // 6 = p(4) lies beyond n_max but inside [1, q(3)].
        assert_eq!(
            t.classify_integer(6).unwrap(),
            Membership {
                kind: SeqKind::P,
                index: 4
            }
        );
        let t5 = build_recursive(5).unwrap();
        assert_eq!(
            t5.classify_integer(13).unwrap(),
            Membership {
                kind: SeqKind::Q,
                index: 5
            }
        );
        assert!(t.classify_integer(0).is_err());
        assert!(t.classify_integer(8).is_err());
    }

    #[test]
    fn count_recurrence_examples() {
        let t = build_recursive(6).unwrap();
        assert_eq!(t.next_p_via_count(1).unwrap(), 3);
        assert_eq!(t.next_p_via_count(2).unwrap(), 4);
        assert_eq!(t.next_p_via_count(5).unwrap(), t.p(6).unwrap());
        assert_eq!(t.p(6).unwrap(), 9);
        assert!(t.next_p_via_count(6).is_err());
        assert!(t.next_p_via_count(0).is_err());
    }

    #[test]
    fn error_term_examples() {
        let t = build_recursive(1000).unwrap();
        for n in 1..=6 {
            assert_eq!(t.error_term(n).unwrap().e, 0);
        }
        let r = t.error_term(1000).unwrap();
        assert_eq!(
            r,
            ErrorRecord {
                n: 1000,
                p_n: 1618,
                floor_phi_n: 1618,
                e: 0
            }
        );
        assert!(t.error_term(1001).is_err());
        assert!(t.error_term(0).is_err());
    }

    #[test]
    fn accessors_reject_index_zero() {
        let t = build_recursive(4).unwrap();
        assert!(t.p(0).is_err());
        assert!(t.q(5).is_err());
        assert!(t.delta_p(4).is_err());
        assert_eq!(t.delta_p(1).unwrap(), 2);
        assert_eq!(t.delta_q(1).unwrap(), 3);
    }

    #[test]
    fn corrupted_copy_leaves_original() {
        let t = build_recursive(20).unwrap();
        let bad = t.with_corrupted_p(17, t.p(17).unwrap() + 1).unwrap();
        assert_eq!(bad.p(17).unwrap(), 28);
        assert_eq!(t.p(17).unwrap(), 27);
        assert_eq!(bad.q(17), t.q(17));
    }

    proptest! {
        #[test]
        fn table_invariants(n_max in 1u64..3000) {
            let t = build_recursive(n_max).unwrap();
            let (p, q) = (t.p_values(), t.q_values());
            for i in 0..p.len() {
                prop_assert_eq!(q[i], p[i] + i as u64 + 1);
            }
            for w in p.windows(2) {
                prop_assert!(matches!(w[1] - w[0], 1 | 2));
            }
            for w in q.windows(2) {
                prop_assert!(matches!(w[1] - w[0], 2 | 3));
            }
            prop_assert_eq!(t.span(), q[p.len() - 1]);
            for m in 1..t.span() {
                let a = t.classify_integer(m).unwrap().kind;
                let b = t.classify_integer(m + 1).unwrap().kind;
                prop_assert!(!(a == SeqKind::Q && b == SeqKind::Q));
            }
        }

        #[test]
        fn closed_form_matches_table(n in 1u64..5000) {
            let t = build_recursive(n).unwrap();
            prop_assert_eq!(t.p(n).unwrap(), beatty_p(n).unwrap());
            prop_assert_eq!(t.q(n).unwrap(), beatty_q(n).unwrap());
        }

        #[test]
        fn beatty_increments(n in 1u64..1u64 << 40) {
            let d = beatty_p(n + 1).unwrap() - beatty_p(n).unwrap();
            prop_assert!(d == 1 || d == 2);
        }
    }
}
