//! Exact `⌊nφ⌋` arithmetic.
//!
//! With φ = (1 + √5) / 2 we have `nφ = (n + √(5n²)) / 2`. Because √5 is
//! irrational, `√(5n²)` is never an integer for `n ≥ 1`, so replacing it by
//! `isqrt(5n²)` cannot move the result across an integer boundary:
//!
//! ```text
//! ⌊nφ⌋ = (n + isqrt(5n²)) div 2
//! ```
//!
//! Everything here is integer-only. The `5n²` intermediate is held in a
//! `u128`, which covers every `n` up to roughly 8.2·10¹⁸.

use super::SeqError;

/// Largest `n` for which `5n²` fits in a `u128`.
pub const MAX_CLOSED_FORM_INDEX: u64 = 8_249_634_742_471_189_717;

/// Integer square root `⌊√n⌋` of a `u128`.
///
/// Newton iteration from an over-estimate, followed by a downward
/// correction so the result satisfies `r² ≤ n < (r + 1)²`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Float guess, then one Newton step: floor((x + n/x) / 2) >= floor(sqrt(n))
    // for any positive x, so iteration starts at or above the root.
    let guess = ((n as f64).sqrt() as u128).max(1);
    let mut x = (guess + n / guess) / 2;
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    x
}

fn five_n_squared(n: u64) -> Result<u128, SeqError> {
    if n == 0 {
        return Err(SeqError::ZeroIndex);
    }
    let n = n as u128;
    n.checked_mul(n)
        .and_then(|sq| sq.checked_mul(5))
        .ok_or(SeqError::Overflow { n: n as u64 })
}

/// `⌊nφ⌋`, the lower Wythoff sequence.
pub fn beatty_p(n: u64) -> Result<u64, SeqError> {
    let root = isqrt_u128(five_n_squared(n)?);
    let value = (n as u128 + root) / 2;
    u64::try_from(value).map_err(|_| SeqError::Overflow { n })
}

/// `⌊nφ²⌋ = ⌊nφ⌋ + n`, the upper Wythoff sequence.
pub fn beatty_q(n: u64) -> Result<u64, SeqError> {
    beatty_p(n)?.checked_add(n).ok_or(SeqError::Overflow { n })
}

/// `⌊n/φ⌋ = ⌊nφ⌋ − n`, since `1/φ = φ − 1`.
pub fn floor_inv_phi(n: u64) -> Result<u64, SeqError> {
    Ok(beatty_p(n)? - n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_small_and_boundaries() {
        for r in 0u128..2000 {
            assert_eq!(isqrt_u128(r * r), r);
            if r > 0 {
                assert_eq!(isqrt_u128(r * r - 1), r - 1);
            }
            assert_eq!(isqrt_u128(r * r + 1), r.max(1));
        }
    }

    #[test]
    fn isqrt_wide() {
        assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
        let r = u64::MAX as u128;
        assert_eq!(isqrt_u128(r * r), r);
        assert_eq!(isqrt_u128(r * r - 1), r - 1);
        for r in [1u128 << 40, (1 << 63) + 12345, 999_999_999_999_999_989] {
            assert_eq!(isqrt_u128(r * r), r);
            assert_eq!(isqrt_u128(r * r - 1), r - 1);
            assert_eq!(isqrt_u128(r * r + 2 * r), r);
            assert_eq!(isqrt_u128(r * r + 2 * r + 1), r + 1);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(beatty_p(1).unwrap(), 1);
        assert_eq!(beatty_p(4).unwrap(), 6);
        assert_eq!(beatty_p(10).unwrap(), 16);
        assert_eq!(beatty_q(1).unwrap(), 2);
        assert_eq!(beatty_q(2).unwrap(), 5);
        assert_eq!(beatty_q(10).unwrap(), 26);
        assert_eq!(floor_inv_phi(1).unwrap(), 0);
        assert_eq!(floor_inv_phi(10).unwrap(), 6);
        assert_eq!(floor_inv_phi(100).unwrap(), 61);
    }

    #[test]
    fn zero_index_rejected() {
        assert_eq!(beatty_p(0), Err(SeqError::ZeroIndex));
        assert_eq!(beatty_q(0), Err(SeqError::ZeroIndex));
        assert_eq!(floor_inv_phi(0), Err(SeqError::ZeroIndex));
    }

    #[test]
    fn width_limit() {
        assert!(beatty_p(MAX_CLOSED_FORM_INDEX).is_ok());
        assert_eq!(
            beatty_p(MAX_CLOSED_FORM_INDEX + 1),
            Err(SeqError::Overflow {
                n: MAX_CLOSED_FORM_INDEX + 1
            })
        );
        assert!(beatty_p(u64::MAX).is_err());
        // q overflows u64 before 5n² overflows u128.
        assert!(beatty_q(MAX_CLOSED_FORM_INDEX).is_err());
    }
}
