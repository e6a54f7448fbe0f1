//! Translation tests: every classical rule is exercised by at least one
//! proof, and each translated proof must (a) check in the target linear
//! calculus and (b) conclude exactly the translated endsequent.

use llgames::logic::{check_proof, parse_formula, parse_proof, Calculus, Language};
use llgames::translate::{
    classical_formula, classical_proof, classical_sequent, intuitionistic_formula,
    intuitionistic_proof, intuitionistic_sequent,
};

fn round_trip_classical(text: &str) {
    let p = parse_proof(text).unwrap_or_else(|e| panic!("parse {text}: {e}"));
    assert!(check_proof(&p, Calculus::Lk).ok(), "{text} not an lk- proof");
    let q = classical_proof(&p).unwrap_or_else(|e| panic!("translate {text}: {e}"));
    let r = check_proof(&q, Calculus::Llk);
    assert!(r.ok(), "translation of {text} fails in llk-: {r}");
    assert_eq!(
        q.endsequent,
        classical_sequent(&p.endsequent).unwrap(),
        "wrong translated endsequent for {text}"
    );
}

fn round_trip_intuitionistic(text: &str) {
    let p = parse_proof(text).unwrap_or_else(|e| panic!("parse {text}: {e}"));
    assert!(check_proof(&p, Calculus::Lj).ok(), "{text} not an lj proof");
    let q = intuitionistic_proof(&p).unwrap_or_else(|e| panic!("translate {text}: {e}"));
    let r = check_proof(&q, Calculus::Llj);
    assert!(r.ok(), "translation of {text} fails in llj: {r}");
    assert_eq!(
        q.endsequent,
        intuitionistic_sequent(&p.endsequent).unwrap(),
        "wrong translated endsequent for {text}"
    );
}

#[test]
fn formula_translations() {
    let f = parse_formula("(implies (and top bot) (or bot top))", Language::Cl).unwrap();
    assert_eq!(
        classical_formula(&f).unwrap().to_string(),
        "(limp (ofc (wn (with (wn top) (wn bot)))) (wn (ofc (plus (ofc bot) (ofc top)))))"
    );
    assert_eq!(
        intuitionistic_formula(&f).unwrap().to_string(),
        "(limp (ofc (with top bot)) (plus (ofc bot) (ofc top)))"
    );
}

#[test]
fn classical_axioms_and_structural() {
    for text in [
        "(id top)",
        "(id (implies top bot))",
        "(topr)",
        "(botl)",
        "(topl (topr))",
        "(botr (topr))",
        "(wl top (botl))",
        "(wr top (botl))",
        "(cl (wl top (wl top (botl))))",
        "(cr (wr top (wr top (botl))))",
        "(xl 0 (topl (id bot)))",
        "(xr 0 (botr (id top)))",
    ] {
        round_trip_classical(text);
    }
}

#[test]
fn classical_cut() {
    // Without side formulas in the first premise.
    round_trip_classical("(cut- bot (id bot) (id bot))");
    // With side formulas on both sides: the derived cut is exercised.
    round_trip_classical("(cut- top (xr 0 (botr (topr))) (topl (id bot)))");
}

#[test]
fn classical_conjunction() {
    round_trip_classical("(andl (wl bot (wl top (botl))))");
    round_trip_classical("(andl (andl (wl bot (wl top (wl top (botl))))))");
    // Empty and nonempty succedent context.
    round_trip_classical("(andr (topr) (topr))");
    round_trip_classical("(andr (botr (topr)) (botr (topr)))");
    round_trip_classical("(andr (wl bot (botr (wr top (botl)))) (wl bot (botr (wr top (botl)))))");
}

#[test]
fn classical_disjunction() {
    // Empty and nonempty antecedent context.
    round_trip_classical("(orl (botl) (botl))");
    round_trip_classical("(orl (xl 0 (topl (botl))) (xl 0 (topl (botl))))");
    round_trip_classical("(orl (wr bot (wl top (botl))) (wr bot (wl top (botl))))");
    round_trip_classical("(orr (botr (topr)))");
    round_trip_classical("(orr (botr (botr (topr))))");
    round_trip_classical("(orr (wl top (botr (botr (topr)))))");
}

#[test]
fn classical_implication() {
    round_trip_classical("(impl (topr) (botl))");
    round_trip_classical("(impl (wr bot (wr top (botl))) (wr top (topl (botl))))");
    round_trip_classical("(impr- (wr bot (botl)))");
    round_trip_classical("(impr- (botr (wr bot (botl))))");
}

#[test]
fn classical_nested() {
    // Excluded middle for bot: |- bot v (bot => bot).
    round_trip_classical("(orr (xr 0 (impr- (wr bot (id bot)))))");
    // A small cut through a conjunction.
    round_trip_classical(
        "(cut- (and top top) (andr (topr) (topr)) (andl (wl top (wl top (botl)))))",
    );
}

#[test]
fn intuitionistic_rules() {
    for text in [
        "(id top)",
        "(id (implies top bot))",
        "(topr)",
        "(botl)",
        "(topl (topr))",
        "(wl top (botl))",
        "(cl (wl top (wl top (botl))))",
        "(xl 0 (topl (id bot)))",
        "(cut- bot (id bot) (id bot))",
        "(andl (wl bot (wl top (botl))))",
        "(andr (topr) (topr))",
        "(orl (botl) (botl))",
        "(orl (xl 0 (topl (botl))) (xl 0 (topl (botl))))",
        "(impl (topr) (botl))",
        "(impl (id top) (xl 0 (topl (botl))))",
        "(impr- (topl (topr)))",
    ] {
        round_trip_intuitionistic(text);
    }
    // botr in lj has an empty-succedent premise.
    round_trip_intuitionistic("(botr (botl))");
}

#[test]
fn intuitionistic_wr_is_rejected() {
    let p = parse_proof("(wr top (botl))").unwrap();
    assert!(check_proof(&p, Calculus::Lj).ok());
    let err = intuitionistic_proof(&p).unwrap_err();
    assert!(err.contains("wr"), "unexpected error: {err}");
}

#[test]
fn non_classical_input_is_rejected() {
    let p = parse_proof("(ocd (id bot))").unwrap();
    assert!(classical_proof(&p).is_err());
    assert!(intuitionistic_proof(&p).is_err());
}
