use super::{apply, witness_order, Classification, GameError, GameState};

/// Largest cap accepted by [`solve_retrograde`]. The work is cubic in the cap.
pub const MAX_SOLVER_CAP: u64 = 4096;

/// Brute-force classification of every state `(a, b)` with `a ≤ b ≤ cap`.
///
/// Cells are laid out triangularly by `(a, b − a)`: row `a` holds the
/// `cap − a + 1` states `(a, a), (a, a + 1), …, (a, cap)`.
#[derive(Debug, Clone)]
pub struct RetrogradeTable {
    cap: u64,
    cells: Vec<Classification>,
}

impl RetrogradeTable {
    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn get(&self, s: GameState) -> Result<Classification, GameError> {
        if s.b() > self.cap {
            return Err(GameError::OutsideSolved {
                state: s,
                cap: self.cap,
            });
        }
        Ok(self.cells[self.offset(s)])
    }

    /// All states in the table, `a` ascending then `b` ascending.
    pub fn states(&self) -> impl Iterator<Item = GameState> + '_ {
        (0..=self.cap).flat_map(move |a| (a..=self.cap).map(move |b| GameState::new(a, b)))
    }

    /// Losing states in [`states`](Self::states) order.
    pub fn losing_states(&self) -> impl Iterator<Item = GameState> + '_ {
        self.states()
            .filter(move |&s| self.cells[self.offset(s)].is_losing())
    }

    fn offset(&self, s: GameState) -> usize {
        let (a, d) = (s.a() as usize, (s.b() - s.a()) as usize);
        let width = self.cap as usize + 1;
        // rows 0..a hold width, width-1, ..., width-a+1 cells
        a * width - a * a.saturating_sub(1) / 2 + d
    }
}

/// Classifies every state with `b ≤ cap` by exhaustive retrograde analysis.
///
/// States are visited by increasing `a + b`, so every move target is already
/// classified. A state is losing iff no move reaches a losing state. Winning
/// states keep the first losing-target move in the order `TakeBoth`, `TakeA`,
/// `TakeB`, ascending amount.
pub fn solve_retrograde(cap: u64) -> Result<RetrogradeTable, GameError> {
    if cap == 0 || cap > MAX_SOLVER_CAP {
        return Err(GameError::Capacity {
            cap,
            limit: MAX_SOLVER_CAP,
        });
    }
    let width = cap as usize + 1;
    let mut table = RetrogradeTable {
        cap,
        cells: vec![Classification::LOSING; width * (width + 1) / 2],
    };
    for total in 0..=2 * cap {
        let a_lo = total.saturating_sub(cap);
        for a in a_lo..=total / 2 {
            let s = GameState::new(a, total - a);
            let witness = witness_order(s).find(|&m| {
                let target = apply(s, m).expect("witness_order yields legal moves");
                table.cells[table.offset(target)].is_losing()
            });
            let offset = table.offset(s);
            table.cells[offset] = match witness {
                Some(m) => Classification::winning(Some(m)),
                None => Classification::LOSING,
            };
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::super::{classify_closed_form, legal_moves, Move, Outcome};
    use super::*;

    #[test]
    fn offsets_are_dense() {
        let t = solve_retrograde(7).unwrap();
        let offsets: Vec<usize> = t.states().map(|s| t.offset(s)).collect();
        assert_eq!(offsets, (0..t.cells.len()).collect::<Vec<_>>());
    }

    #[test]
    fn small_cases() {
        let t = solve_retrograde(10).unwrap();
        let get = |x, y| t.get(GameState::new(x, y)).unwrap();
        assert_eq!(get(0, 0), Classification::LOSING);
        assert_eq!(get(1, 2), Classification::LOSING);
        assert_eq!(get(3, 5), Classification::LOSING);
        let c = get(2, 5);
        assert_eq!(c.outcome, Outcome::Winning);
        let target = apply(GameState::new(2, 5), c.witness.unwrap()).unwrap();
        assert!(get(target.a(), target.b()).is_losing());
        assert_eq!(get(0, 4).witness, Some(Move::TakeB(4)));
        assert_eq!(get(4, 4).witness, Some(Move::TakeBoth(4)));
    }

    #[test]
    fn losing_list() {
        let t = solve_retrograde(20).unwrap();
        let losing: Vec<_> = t.losing_states().map(|s| (s.a(), s.b())).collect();
        assert_eq!(
            losing,
            vec![
                (0, 0),
                (1, 2),
                (3, 5),
                (4, 7),
                (6, 10),
                (8, 13),
                (9, 15),
                (11, 18),
                (12, 20)
            ]
        );
    }

    #[test]
    fn soundness_and_agreement() {
        let t = solve_retrograde(60).unwrap();
        for s in t.states() {
            let c = t.get(s).unwrap();
            assert_eq!(c.outcome, classify_closed_form(s).unwrap().outcome, "{s}");
            let targets = legal_moves(s)
                .into_iter()
                .map(|m| t.get(apply(s, m).unwrap()).unwrap());
            if c.is_losing() {
                assert!(targets.into_iter().all(|x| !x.is_losing()), "{s}");
            } else {
                let w = c.witness.expect("winning states carry a witness");
                assert!(t.get(apply(s, w).unwrap()).unwrap().is_losing());
            }
        }
    }

    #[test]
    fn cap_limits() {
        assert!(matches!(
            solve_retrograde(0),
            Err(GameError::Capacity { .. })
        ));
        assert!(matches!(
            solve_retrograde(MAX_SOLVER_CAP + 1),
            Err(GameError::Capacity { .. })
        ));
        let t = solve_retrograde(5).unwrap();
        assert!(matches!(
            t.get(GameState::new(2, 6)),
            Err(GameError::OutsideSolved { .. })
        ));
    }
}
