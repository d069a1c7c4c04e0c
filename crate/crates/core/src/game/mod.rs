//! Wythoff's game.
//!
//! Two piles of chips. A move removes any positive number of chips from one
//! pile, or the same positive number from both. Whoever takes the last chip
//! wins, so the player facing `(0, 0)` has lost.
//!
//! Classification is mover-centric: a [`Outcome::Losing`] state is one where
//! the player about to move loses under optimal play (the second player can
//! force a win).

mod solver;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seq::{beatty_p, SeqError};

pub use solver::{solve_retrograde, RetrogradeTable, MAX_SOLVER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("move {mv} is not legal in state {state}")]
    IllegalMove { state: GameState, mv: Move },
    #[error("state {0} is losing; there is no winning move")]
    NoWinningMove(GameState),
    #[error("solver cap {cap} exceeds the limit {limit}")]
    Capacity { cap: u64, limit: u64 },
    #[error("state {state} lies outside the solved range (cap {cap})")]
    OutsideSolved { state: GameState, cap: u64 },
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Chip counts, always stored with `a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameState {
    a: u64,
    b: u64,
}

impl GameState {
    pub fn new(x: u64, y: u64) -> Self {
        Self {
            a: x.min(y),
            b: x.max(y),
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn is_terminal(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A move, read against the canonical orientation of the state it is
/// applied to: `TakeA` draws from the smaller pile, `TakeB` from the larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    TakeA(u64),
    TakeB(u64),
    TakeBoth(u64),
}

impl Move {
    pub fn amount(&self) -> u64 {
        match *self {
            Move::TakeA(k) | Move::TakeB(k) | Move::TakeBoth(k) => k,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::TakeA(k) => write!(f, "TakeA({k})"),
            Move::TakeB(k) => write!(f, "TakeB({k})"),
            Move::TakeBoth(k) => write!(f, "TakeBoth({k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Losing,
    Winning,
}

/// An outcome plus, for winning states, a move into a losing state when
/// one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub outcome: Outcome,
    pub witness: Option<Move>,
}

impl Classification {
    pub const LOSING: Self = Self {
        outcome: Outcome::Losing,
        witness: None,
    };

    pub fn winning(witness: Option<Move>) -> Self {
        Self {
            outcome: Outcome::Winning,
            witness,
        }
    }

    pub fn is_losing(&self) -> bool {
        self.outcome == Outcome::Losing
    }
}

/// Every legal move: `TakeA` then `TakeB` then `TakeBoth`, each with
/// ascending amount.
pub fn legal_moves(s: GameState) -> Vec<Move> {
    let mut moves = Vec::with_capacity((s.a * 2 + s.b) as usize);
    moves.extend((1..=s.a).map(Move::TakeA));
    moves.extend((1..=s.b).map(Move::TakeB));
    moves.extend((1..=s.a).map(Move::TakeBoth));
    moves
}

/// Moves in witness-search order: `TakeBoth`, `TakeA`, `TakeB`, ascending.
pub(crate) fn witness_order(s: GameState) -> impl Iterator<Item = Move> {
    (1..=s.a)
        .map(Move::TakeBoth)
        .chain((1..=s.a).map(Move::TakeA))
        .chain((1..=s.b).map(Move::TakeB))
}

pub fn apply(s: GameState, m: Move) -> Result<GameState, GameError> {
    let illegal = || GameError::IllegalMove { state: s, mv: m };
    let k = m.amount();
    if k == 0 {
        return Err(illegal());
    }
    let (x, y) = match m {
        Move::TakeA(k) => (s.a.checked_sub(k).ok_or_else(illegal)?, s.b),
        Move::TakeB(k) => (s.a, s.b.checked_sub(k).ok_or_else(illegal)?),
        Move::TakeBoth(k) => (
            s.a.checked_sub(k).ok_or_else(illegal)?,
            s.b.checked_sub(k).ok_or_else(illegal)?,
        ),
    };
    Ok(GameState::new(x, y))
}

/// Classifies by the closed form: `(a, b)` is losing iff it is `(0, 0)` or
/// `a = ⌊dφ⌋`, `b = ⌊dφ²⌋` with `d = b − a`. No witness is attached.
pub fn classify_closed_form(s: GameState) -> Result<Classification, GameError> {
    let d = s.b - s.a;
    let losing = if d == 0 {
        s.a == 0
    } else {
        // b = a + d, so a = ⌊dφ⌋ already forces b = ⌊dφ⌋ + d = ⌊dφ²⌋.
        beatty_p(d)? == s.a
    };
    Ok(if losing {
        Classification::LOSING
    } else {
        Classification::winning(None)
    })
}

/// A legal move from `s` into a closed-form losing state.
///
/// Scans the legal targets in witness order (`TakeBoth`, `TakeA`, `TakeB`,
/// ascending amount), so the answer matches the retrograde solver's witness.
pub fn best_move(s: GameState) -> Result<Move, GameError> {
    for m in witness_order(s) {
        let target = apply(s, m)?;
        if classify_closed_form(target)?.is_losing() {
            return Ok(m);
        }
    }
    Err(GameError::NoWinningMove(s))
}
