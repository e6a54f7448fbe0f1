//! Arena and legality tests: frozen labeling/enabling cases, exhaustive
//! small-depth scans for the arena axioms, view clauses, first-move
//! constraints and canonicalization.

use llgames::game::{
    is_initial, FinSuppFn, Game, Move, Owner, Position, Tag,
};
use llgames::logic::{parse_formula, Language};

fn game(text: &str) -> Game {
    let f = parse_formula(text, Language::LlMinus).unwrap();
    Game::new(f).unwrap()
}

fn mv(tags: Vec<Tag>) -> Move {
    Move { tags }
}

fn pos(entries: Vec<(Move, Option<usize>)>) -> Position {
    Position { entries }
}

/// Every legal position of `g` of length <= depth, canonical indices only.
fn enumerate(g: &Game, depth: usize) -> Vec<Position> {
    let mut out = vec![Position::empty()];
    let mut frontier = vec![Position::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for (m, j) in g.legal_extensions(s) {
                let t = s.extended(m, j);
                next.push(t.clone());
                out.push(t);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

#[test]
fn labels() {
    let bot = game("bot");
    assert_eq!(bot.label(&mv(vec![])).unwrap().owner, Owner::O);

    let imp = game("(limp bot bot)");
    assert_eq!(imp.label(&mv(vec![Tag::L])).unwrap().owner, Owner::P);
    assert_eq!(imp.label(&mv(vec![Tag::R])).unwrap().owner, Owner::O);

    let par = game("(par bot bot)");
    let pair = mv(vec![Tag::PInit(Box::new(mv(vec![])), Box::new(mv(vec![])))]);
    assert_eq!(par.label(&pair).unwrap().owner, Owner::O);

    // Two limp-left crossings cancel.
    let nested = game("(limp (limp bot bot) bot)");
    assert_eq!(
        nested.label(&mv(vec![Tag::L, Tag::L])).unwrap().owner,
        Owner::O
    );
    assert_eq!(nested.label(&mv(vec![Tag::L, Tag::R])).unwrap().owner, Owner::P);

    // Bad addresses are reported.
    assert!(imp.label(&mv(vec![Tag::PL])).is_err());
    assert!(bot.label(&mv(vec![Tag::L])).is_err());
}

#[test]
fn enabling() {
    let imp = game("(limp bot bot)");
    assert!(imp
        .enabled(Some(&mv(vec![Tag::R])), &mv(vec![Tag::L]))
        .unwrap());
    assert!(!imp
        .enabled(Some(&mv(vec![Tag::L])), &mv(vec![Tag::R]))
        .unwrap());
    assert!(imp.enabled(None, &mv(vec![Tag::R])).unwrap());
    assert!(!imp.enabled(None, &mv(vec![Tag::L])).unwrap());

    let bang = game("(ofc bot)");
    assert!(bang.enabled(None, &mv(vec![Tag::Bang(7)])).unwrap());

    // Bare component initials of a sum stay root-enabled but unreachable.
    let plus = game("(plus bot bot)");
    assert!(plus.enabled(None, &mv(vec![Tag::PL])).unwrap());
    for s in enumerate(&plus, 4) {
        for (m, _) in &s.entries {
            assert!(
                matches!(m.tags.first(), Some(Tag::PInit(_, _)) | None),
                "reachable bare component move {m}"
            );
        }
    }
}

#[test]
fn legality_basics() {
    let imp = game("(limp bot bot)");
    let copycat = pos(vec![(mv(vec![Tag::R]), None), (mv(vec![Tag::L]), Some(0))]);
    assert!(imp.is_legal(&copycat));

    // Two consecutive O-moves break alternation.
    let tensor = game("(tensor bot bot)");
    let both = pos(vec![(mv(vec![Tag::L]), None), (mv(vec![Tag::R]), None)]);
    assert!(!tensor.is_legal(&both));

    // A par position must open with the pair initial.
    let par = game("(par bot bot)");
    assert!(!par.is_legal(&pos(vec![(mv(vec![Tag::PL]), None)])));
    let pair = mv(vec![Tag::PInit(Box::new(mv(vec![])), Box::new(mv(vec![])))]);
    assert!(par.is_legal(&pos(vec![(pair, None)])));

    // A wn position must open with a function initial.
    let wn = game("(wn bot)");
    assert!(!wn.is_legal(&pos(vec![(mv(vec![Tag::Wn(0)]), None)])));
    let alpha = mv(vec![Tag::WnInit(FinSuppFn::constant(mv(vec![])))]);
    assert!(wn.is_legal(&pos(vec![(alpha, None)])));

    // The bot game has a single move: no second question.
    let bot = game("bot");
    assert!(bot.is_legal(&pos(vec![(mv(vec![]), None)])));
    assert!(!bot.is_legal(&pos(vec![(mv(vec![]), None), (mv(vec![]), None)])));
}

#[test]
fn arena_axioms_small_scan() {
    // E1: root-enabled moves are OQ and have no other enabler.
    // E2: vacuous (all moves are questions).
    // E3: enabler and enabled have opposite owners.
    for text in [
        "(limp bot bot)",
        "(tensor bot bot)",
        "(par (limp bot bot) bot)",
        "(plus bot bot)",
        "(with bot bot)",
        "(ofc (limp bot bot))",
        "(wn bot)",
        "(limp (ofc bot) (wn bot))",
    ] {
        let g = game(text);
        let moves = g.candidate_moves(&Position::empty());
        for m in &moves {
            if g.enabled(None, m).unwrap() {
                assert_eq!(g.label(m).unwrap().owner, Owner::O, "{text}: E1 owner of {m}");
                for n in &moves {
                    assert!(
                        !g.enabled(Some(n), m).unwrap(),
                        "{text}: E1 uniqueness, {n} enables initial {m}"
                    );
                }
            }
            for n in &moves {
                if g.enabled(Some(m), n).unwrap() {
                    assert_ne!(
                        g.label(m).unwrap().owner,
                        g.label(n).unwrap().owner,
                        "{text}: E3 on {m} -> {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn legality_prefix_closed() {
    for text in [
        "(limp bot bot)",
        "(limp (tensor bot bot) (par bot bot))",
        "(limp (ofc bot) bot)",
        "(wn (limp bot bot))",
    ] {
        let g = game(text);
        for s in enumerate(&g, 4) {
            for n in 0..s.len() {
                assert!(g.is_legal(&s.prefix(n)), "{text}: prefix {n} of {:?}", s);
            }
        }
    }
}

#[test]
fn views() {
    let g = game("(limp bot bot)");
    let _ = &g;
    let s = pos(vec![(mv(vec![Tag::R]), None), (mv(vec![Tag::L]), Some(0))]);
    assert_eq!(g.p_view(&s), s);
    assert_eq!(g.p_view(&Position::empty()), Position::empty());

    // An initial O-move cuts the P-view down to itself.
    let g2 = game("(tensor (limp bot bot) (limp bot bot))");
    let s2 = pos(vec![
        (mv(vec![Tag::L, Tag::R]), None),
        (mv(vec![Tag::L, Tag::L]), Some(0)),
        (mv(vec![Tag::R, Tag::R]), None),
    ]);
    assert!(g2.is_legal(&s2));
    let v = g2.p_view(&s2);
    assert_eq!(v.entries, vec![(mv(vec![Tag::R, Tag::R]), None)]);

    // The O-view keeps the O-side chain.
    let ov = g2.o_view(&s2);
    assert_eq!(ov.len(), 3);
}

#[test]
fn view_contains_p_justifier() {
    for text in ["(limp (tensor bot bot) (par bot bot))", "(limp (ofc bot) bot)"] {
        let g = game(text);
        for s in enumerate(&g, 4) {
            if let Some((m, Some(j))) = s.entries.last().cloned() {
                if g.label(&m).unwrap().owner == llgames::game::Owner::P {
                    let head = s.prefix(s.len() - 1);
                    let view = g.p_view(&head);
                    // The justifier move occurs in the view of the prefix.
                    assert!(
                        view.entries.iter().any(|(vm, _)| *vm == s.entries[j].0),
                        "{text}: justifier not in view"
                    );
                }
            }
        }
    }
}

#[test]
fn canonicalize_threads() {
    // !(bot -o bot): renaming thread 2 to first-use order 0.
    let g = game("(ofc (limp bot bot))");
    let s = pos(vec![
        (mv(vec![Tag::Bang(2), Tag::R]), None),
        (mv(vec![Tag::Bang(2), Tag::L]), Some(0)),
    ]);
    let t = pos(vec![
        (mv(vec![Tag::Bang(0), Tag::R]), None),
        (mv(vec![Tag::Bang(0), Tag::L]), Some(0)),
    ]);
    assert!(g.is_legal(&s));
    assert_eq!(g.canonicalize(&s), t);
    assert!(g.positions_equivalent(&s, &t));

    // Different threads stay different.
    let u = pos(vec![
        (mv(vec![Tag::Bang(1), Tag::R]), None),
        (mv(vec![Tag::Bang(3), Tag::L]), Some(0)),
    ]);
    assert!(!g.positions_equivalent(&s, &u));

    // Lengths must agree.
    assert!(!g.positions_equivalent(&s, &s.prefix(0)));
}

#[test]
fn canonicalize_idempotent() {
    for text in [
        "(ofc (limp bot bot))",
        "(limp (ofc bot) (ofc bot))",
        "(wn (limp bot bot))",
        "(limp (wn bot) (wn bot))",
    ] {
        let g = game(text);
        for s in enumerate(&g, 4) {
            let c = g.canonicalize(&s);
            assert_eq!(g.canonicalize(&c), c, "{text}: not idempotent on {:?}", s);
            assert_eq!(c.len(), s.len());
            assert!(g.positions_equivalent(&s, &c));
            assert!(g.is_legal(&c), "{text}: canonical form illegal for {:?}", s);
        }
    }
}

#[test]
fn wn_exception_renaming() {
    // A function initial with an exception at thread 5, played at thread 5:
    // canonical form uses thread 0 with the exception carried along.
    let g = game("(wn (limp bot bot))");
    let rq = mv(vec![Tag::R]);
    let alpha = FinSuppFn::new(rq.clone(), [(5, rq.clone())].into_iter().collect());
    // exceptions equal to the default are pruned by the constructor
    assert!(alpha.exceptions.is_empty());
    let alpha = FinSuppFn::constant(rq);
    let s = pos(vec![
        (mv(vec![Tag::WnInit(alpha.clone())]), None),
        (mv(vec![Tag::Wn(5), Tag::L]), Some(0)),
    ]);
    assert!(g.is_legal(&s));
    let c = g.canonicalize(&s);
    assert_eq!(c.entries[1].0, mv(vec![Tag::Wn(0), Tag::L]));
}

#[test]
fn projections() {
    let g = game("(limp bot bot)");
    let _ = &g;
    let s = pos(vec![(mv(vec![Tag::R]), None), (mv(vec![Tag::L]), Some(0))]);
    let left = llgames::game::proj_side(&s, true);
    assert_eq!(left.position.entries, vec![(mv(vec![]), None)]);
    let right = llgames::game::proj_side(&s, false);
    assert_eq!(right.position.entries, vec![(mv(vec![]), None)]);
    assert!(llgames::game::project(&Position::empty(), |_| None)
        .position
        .is_empty());

    // Thread projection with justifier re-closure.
    let gb = game("(limp (ofc (limp bot bot)) bot)");
    // O: R q ; P: L bang(0) R ; O: L bang(0) L
    let s2 = pos(vec![
        (mv(vec![Tag::R]), None),
        (mv(vec![Tag::L, Tag::Bang(0), Tag::R]), Some(0)),
        (mv(vec![Tag::L, Tag::Bang(0), Tag::L]), Some(1)),
    ]);
    assert!(gb.is_legal(&s2));
    let dom = llgames::game::proj_side(&s2, true);
    // Domain initials lose their (hidden) codomain justifier.
    assert_eq!(dom.position.entries[0].1, None);
    let th = llgames::game::proj_bang_thread(&dom.position, 0);
    assert_eq!(th.position.len(), 2);
    assert_eq!(th.position.entries[1].1, Some(0));
}

#[test]
fn trace_format() {
    let g = game("(limp (ofc bot) bot)");
    let s = pos(vec![
        (mv(vec![Tag::R]), None),
        (mv(vec![Tag::L, Tag::Bang(0)]), Some(0)),
    ]);
    let text = g.format_position(&s);
    assert_eq!(text, "0. O Q R/q just=-\n1. P Q L/bang(0)/q just=0\n");

    let par = game("(par bot bot)");
    let pair = mv(vec![Tag::PInit(Box::new(mv(vec![])), Box::new(mv(vec![])))]);
    assert_eq!(format!("{pair}"), "pinit(q,q)");
    assert!(is_initial(&par.shape, &pair));
}

#[test]
fn game_construction_rejects_nonlinear() {
    assert!(Game::new(parse_formula("(and top bot)", Language::Cl).unwrap()).is_err());
    assert!(Game::new(parse_formula("(atom a)", Language::LlMinus).unwrap()).is_err());
    assert!(Game::new(parse_formula("(limp bot bot)", Language::LlMinus).unwrap()).is_ok());
}
