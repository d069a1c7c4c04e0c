use proptest::prelude::*;

use wythoff::game::{
    apply, best_move, classify_closed_form, legal_moves, solve_retrograde, GameState,
};
use wythoff::seq::{beatty_p, beatty_q, build_recursive};
use wythoff::verify::{self, Identity, VerificationReport};

#[test]
fn losing_states_sorted_by_a_are_the_pairs() {
    let cap = 150;
    let solved = solve_retrograde(cap).unwrap();
    let mut losing: Vec<(u64, u64)> = solved
        .losing_states()
        .filter(|s| s.a() >= 1)
        .map(|s| (s.a(), s.b()))
        .collect();
    losing.sort();
    let t = build_recursive(cap).unwrap();
    let pairs: Vec<(u64, u64)> = t
        .p_values()
        .iter()
        .zip(t.q_values())
        .map(|(&p, &q)| (p, q))
        .take_while(|&(_, q)| q <= cap)
        .collect();
    assert_eq!(losing, pairs);
}

#[test]
fn closed_form_witness_equals_solver_witness() {
    let solved = solve_retrograde(120).unwrap();
    for s in solved.states() {
        let c = solved.get(s).unwrap();
        match c.witness {
            Some(w) => assert_eq!(best_move(s).unwrap(), w, "{s}"),
            None => assert!(best_move(s).is_err(), "{s}"),
        }
    }
}

#[test]
fn no_losing_state_reaches_another() {
    let solved = solve_retrograde(100).unwrap();
    for s in solved.losing_states() {
        for m in legal_moves(s) {
            assert!(
                !solved.get(apply(s, m).unwrap()).unwrap().is_losing(),
                "{s} {m}"
            );
        }
    }
}

#[test]
fn flagship_run_passes() {
    let reports = verify::verify_all(100_000, 300, 10_000);
    assert_eq!(
        reports.iter().map(|r| r.identity).collect::<Vec<_>>(),
        Identity::ALL.to_vec()
    );
    for r in &reports {
        assert!(r.passed, "{r}");
    }
}

#[test]
fn reports_serialize_to_stable_records() {
    let reports = verify::verify_all(200, 30, 20);
    let json = serde_json::to_string(&reports).unwrap();
    assert!(json.contains("\"identity\":\"L-E\""));
    assert!(!json.contains("elapsed"));
    let back: Vec<VerificationReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back.len(), reports.len());
    for (a, b) in back.iter().zip(&reports) {
        assert_eq!(
            (a.identity, a.range, a.passed, &a.counterexamples),
            (b.identity, b.range, b.passed, &b.counterexamples)
        );
    }
    assert_eq!(
        json,
        serde_json::to_string(&verify::verify_all(200, 30, 20)).unwrap()
    );
}

#[test]
fn corrupted_reports_reproduce_with_public_operations() {
    let t = build_recursive(500).unwrap();
    let bad = t.with_corrupted_p(40, 66).unwrap();
    let report = verify::check_sequence_identity(Identity::CountRecurrence, &bad).unwrap();
    assert!(!report.passed);
    for c in &report.counterexamples {
        assert_eq!(c.expected, bad.p(c.n + 1).unwrap().to_string());
        assert_eq!(c.actual, bad.next_p_via_count(c.n).unwrap().to_string());
    }
}

proptest! {
    #[test]
    fn closed_form_agrees_with_pair_structure(d in 1u64..1_000_000_000) {
        let (a, b) = (beatty_p(d).unwrap(), beatty_q(d).unwrap());
        prop_assert!(classify_closed_form(GameState::new(a, b)).unwrap().is_losing());
        prop_assert!(!classify_closed_form(GameState::new(a + 1, b)).unwrap().is_losing());
        prop_assert!(!classify_closed_form(GameState::new(a, b + 1)).unwrap().is_losing());
    }

    #[test]
    fn best_move_targets_are_losing(x in 0u64..2000, y in 0u64..2000) {
        let s = GameState::new(x, y);
        if !classify_closed_form(s).unwrap().is_losing() {
            let target = apply(s, best_move(s).unwrap()).unwrap();
            prop_assert!(classify_closed_form(target).unwrap().is_losing());
        }
    }
}
