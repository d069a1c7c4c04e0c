//! Primes `P` and the composites `Q` that fill the gaps between them.
//!
//! `1` belongs to neither sequence, so `[P(n)]` holds `n` primes, the
//! integer `1`, and `P(n) − n − 1` composites. For `n ≥ 3`, `P(n) − 1` is
//! even and larger than 2, hence the last of those composites, which gives
//! `Q(P(n) − n − 1) = P(n) − 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest sieve accepted by [`PrimeGapTable::build`].
pub const MAX_SIEVE_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("sieve limit {limit} outside [4, {max}]")]
    Capacity { limit: u64, max: u64 },
    #[error("the prime-gap identity is stated for n >= 3, got n = {0}")]
    IndexBelowThree(u64),
    #[error("sieve up to {limit} holds only {count} primes, need P({n})")]
    SieveTooSmall { n: u64, limit: u64, count: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGapTable {
    limit: u64,
    primes: Vec<u64>,
    composites: Vec<u64>,
}

/// Evidence for one `n`: `holds` is `Q(index) == P(n) − 1` with
/// `index = P(n) − n − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClaimEvidence {
    pub n: u64,
    pub p_n: u64,
    pub index: u64,
    pub q_at_index: u64,
    pub holds: bool,
}

impl PrimeGapTable {
    /// Sieve of Eratosthenes over `[1, limit]`.
    pub fn build(limit: u64) -> Result<Self, PrimeError> {
        if !(4..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(PrimeError::Capacity {
                limit,
                max: MAX_SIEVE_LIMIT,
            });
        }
        let len = limit as usize + 1;
        let mut composite = vec![false; len];
        let mut i = 2usize;
        while i * i < len {
            if !composite[i] {
                for j in (i * i..len).step_by(i) {
                    composite[j] = true;
                }
            }
            i += 1;
        }
        let (mut primes, mut composites) = (Vec::new(), Vec::new());
        for (v, &is_composite) in composite.iter().enumerate().skip(2) {
            if is_composite {
                composites.push(v as u64);
            } else {
                primes.push(v as u64);
            }
        }
        Ok(Self {
            limit,
            primes,
            composites,
        })
    }

    /// Smallest sieve guaranteed to contain `P(n)`, via Rosser's bound
    /// `P(n) < n(ln n + ln ln n)` for `n ≥ 6`.
    pub fn build_for_count(n: u64) -> Result<Self, PrimeError> {
        let table = Self::build(sieve_limit_for(n))?;
        debug_assert!(table.prime_count() >= n);
        Ok(table)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn composites(&self) -> &[u64] {
        &self.composites
    }

    pub fn prime_count(&self) -> u64 {
        self.primes.len() as u64
    }

    /// `P(n)`, 1-based.
    pub fn prime(&self, n: u64) -> Option<u64> {
        n.checked_sub(1)
            .and_then(|i| self.primes.get(i as usize).copied())
    }

    /// `Q(n)`, 1-based.
    pub fn composite(&self, n: u64) -> Option<u64> {
        n.checked_sub(1)
            .and_then(|i| self.composites.get(i as usize).copied())
    }

    /// Number of `Q` entries `≤ bound`.
    pub fn composites_up_to(&self, bound: u64) -> u64 {
        self.composites.partition_point(|&c| c <= bound) as u64
    }

    pub fn check_prime_claim(&self, n: u64) -> Result<PrimeClaimEvidence, PrimeError> {
        if n < 3 {
            return Err(PrimeError::IndexBelowThree(n));
        }
        let p_n = self.prime(n).ok_or(PrimeError::SieveTooSmall {
            n,
            limit: self.limit,
            count: self.prime_count(),
        })?;
        let index = p_n - n - 1;
        // index counts composites <= P(n) <= limit, so Q(index) is materialized.
        let q_at_index = self.composite(index).expect("composite index within sieve");
        Ok(PrimeClaimEvidence {
            n,
            p_n,
            index,
            q_at_index,
            holds: q_at_index == p_n - 1,
        })
    }
}

/// A sieve limit `≥ P(n)`.
pub fn sieve_limit_for(n: u64) -> u64 {
    if n < 6 {
        return 13;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
}
