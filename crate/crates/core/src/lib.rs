//! Wythoff pairs `(p(n), q(n))`.
//!
//! * [`seq`] builds `p` and `q` by the mex recursion and by the exact
//!   closed forms `⌊nφ⌋`, `⌊nφ²⌋`.
//! * [`game`] plays Wythoff's game: move rules, a brute-force retrograde
//!   solver, and a closed-form classifier.
//! * [`primes`] holds the prime / composite-gap analogue.
//! * [`verify`] checks every identity exhaustively and reports
//!   counterexamples.

pub mod game;
pub mod primes;
pub mod seq;
pub mod verify;

pub use game::{GameState, Move, Outcome};
pub use seq::{build_recursive, PairTable};
