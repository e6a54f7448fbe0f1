//! Schema-level tests for the proof checker: one accepted proof per rule,
//! targeted rejections, and parse/print round-trips.

use llgames::logic::{
    check_proof, parse_formula, parse_proof, parse_sequent, Calculus, Language, RuleName,
};
use proptest::prelude::*;

fn accepts(text: &str, calc: Calculus) {
    let p = parse_proof(text).unwrap_or_else(|e| panic!("parse {text}: {e}"));
    let r = check_proof(&p, calc);
    assert!(r.ok(), "{} should check in {}: {}", text, calc.name(), r);
}

fn rejects(text: &str, calc: Calculus) {
    let p = parse_proof(text).unwrap_or_else(|e| panic!("parse {text}: {e}"));
    let r = check_proof(&p, calc);
    assert!(!r.ok(), "{} should not check in {}", text, calc.name());
}

fn concludes(text: &str, sequent: &str) {
    let p = parse_proof(text).unwrap();
    let s = parse_sequent(sequent, Language::LlMinus)
        .or_else(|_| parse_sequent(sequent, Language::Cl))
        .unwrap();
    assert_eq!(p.endsequent, s, "conclusion of {text}");
}

#[test]
fn linear_rules_accept() {
    let cases: &[(&str, &str)] = &[
        ("(id bot)", "(seq (bot) (bot))"),
        ("(cut- bot (id bot) (id bot))", "(seq (bot) (bot))"),
        ("(xl 0 (topl (id bot)))", "(seq (top bot) (bot))"),
        ("(xr 0 (botr (id top)))", "(seq (top) (top bot))"),
        ("(ocw top (id bot))", "(seq (bot (ofc top)) (bot))"),
        ("(wnw top (id bot))", "(seq (bot) ((wn top) bot))"),
        (
            "(occ (ocw top (ocw top (id bot))))",
            "(seq (bot (ofc top)) (bot))",
        ),
        (
            "(wnc (wnw top (wnw top (id bot))))",
            "(seq (bot) ((wn top) bot))",
        ),
        ("(ocd (id bot))", "(seq ((ofc bot)) (bot))"),
        ("(wnd (id bot))", "(seq (bot) ((wn bot)))"),
        ("(wnl (botl))", "(seq ((wn bot)) ())"),
        ("(ocr (topr))", "(seq () ((ofc top)))"),
        ("(0l (bot top))", "(seq (zero) (bot top))"),
        ("(1r (bot) (top))", "(seq (bot) (one top))"),
        ("(topl (topr))", "(seq (top) (top))"),
        ("(topr)", "(seq () (top))"),
        ("(botl)", "(seq (bot) ())"),
        ("(botr (topr))", "(seq () (bot top))"),
        (
            "(tensorl (topl (topl (botl))))",
            "(seq (bot (tensor top top)) ())",
        ),
        ("(tensorr- (topr) (topr))", "(seq () ((tensor top top)))"),
        (
            "(withl 1 (with top bot) (topl (botl)))",
            "(seq (bot (with top bot)) ())",
        ),
        ("(withr- (topr) (topr))", "(seq () ((with top top)))"),
        ("(parl- (botl) (botl))", "(seq ((par bot bot)) ())"),
        (
            "(parr (botr (botr (topr))))",
            "(seq () ((par bot bot) top))",
        ),
        ("(plusl- (botl) (botl))", "(seq ((plus bot bot)) ())"),
        ("(plusr 1 (plus top bot) (topr))", "(seq () ((plus top bot)))"),
        ("(limpl (topr) (botl))", "(seq ((limp top bot)) ())"),
        (
            "(limpr- (botr (id top)))",
            "(seq () ((limp top bot) top))",
        ),
        ("(ocwnl (wnl (ocd (botl))))", "(seq ((ofc (wn bot))) ())"),
        ("(ocwnr (ocr (wnd (topr))))", "(seq () ((wn (ofc top))))"),
        (
            "(tensorparl (parl- (tensorl (xl 0 (topl (botl)))) (botl)))",
            "(seq (top (par bot bot)) ())",
        ),
        (
            "(tensorparr (tensorr- (topr) (parr (botr (topr)))))",
            "(seq () ((tensor top bot) top))",
        ),
    ];
    for (text, sequent) in cases {
        accepts(text, Calculus::Llk);
        concludes(text, sequent);
    }
}

#[test]
fn classical_rules_accept() {
    let cases: &[(&str, &str)] = &[
        ("(id top)", "(seq (top) (top))"),
        ("(cut- bot (id bot) (id bot))", "(seq (bot) (bot))"),
        ("(xl 0 (topl (id bot)))", "(seq (top bot) (bot))"),
        ("(xr 0 (botr (id top)))", "(seq (top) (top bot))"),
        ("(wl top (botl))", "(seq (bot top) ())"),
        ("(wr top (botl))", "(seq (bot) (top))"),
        ("(cl (wl top (wl top (botl))))", "(seq (bot top) ())"),
        ("(cr (wr top (wr top (botl))))", "(seq (bot) (top))"),
        ("(topl (topr))", "(seq (top) (top))"),
        ("(topr)", "(seq () (top))"),
        ("(botl)", "(seq (bot) ())"),
        ("(botr (topr))", "(seq () (bot top))"),
        (
            "(andl (wl bot (wl top (botl))))",
            "(seq (bot (and top bot)) ())",
        ),
        ("(andr (topr) (topr))", "(seq () ((and top top)))"),
        ("(orl (botl) (botl))", "(seq ((or bot bot)) ())"),
        ("(orr (botr (topr)))", "(seq () ((or bot top)))"),
        ("(impl (topr) (botl))", "(seq ((implies top bot)) ())"),
        ("(impr- (wr bot (botl)))", "(seq () ((implies bot bot)))"),
    ];
    for (text, sequent) in cases {
        accepts(text, Calculus::Lk);
        concludes(text, sequent);
    }
}

#[test]
fn classical_cut_carries_both_contexts() {
    // D |- B, G and D', B |- G' give D, D' |- G, G'; the linear cut- would
    // reject the extra succedent formula in the first premise.
    let text = "(cut- top (xr 0 (botr (topr))) (topl (botl)))";
    accepts(text, Calculus::Lk);
    concludes(text, "(seq (bot) (bot))");
    rejects(text, Calculus::Llk);
}

#[test]
fn intuitionistic_variants() {
    // Shared-context plusl- is the LLJ rule; llk- wants singleton antecedents.
    let shared = "(plusl- (xl 0 (topl (botl))) (xl 0 (topl (botl))))";
    accepts(shared, Calculus::Llj);
    concludes(shared, "(seq (top (plus bot bot)) ())");
    rejects(shared, Calculus::Llk);

    // Context-carrying limpr- is the LLJ rule.
    let ctx = "(limpr- (xl 0 (topl (topl (topr)))))";
    accepts(ctx, Calculus::Llj);
    concludes(ctx, "(seq (top) ((limp top top)))");
    rejects(ctx, Calculus::Llk);

    // The context-free limpr- reading agrees with LLJ on singleton premises.
    accepts("(limpr- (topl (topr)))", Calculus::Llj);
    accepts("(limpr- (topl (topr)))", Calculus::Llk);
    concludes("(limpr- (topl (topr)))", "(seq () ((limp top top)))");
}

#[test]
fn admissibility_boundaries() {
    // Exchange/contraction/weakening on the right have no intuitionistic form.
    rejects("(xr 0 (botr (id top)))", Calculus::Llj);
    rejects("(cr (wr top (wr top (botl))))", Calculus::Lj);
    // wr itself is admissible in lj when the premise succedent is empty.
    accepts("(wr top (botl))", Calculus::Lj);
    rejects("(wr top (wr top (botl)))", Calculus::Lj);
    // Classical names in linear calculi and vice versa.
    rejects("(wl top (botl))", Calculus::Llk);
    rejects("(ocw top (id bot))", Calculus::Lk);
    rejects("(andl (wl bot (wl top (botl))))", Calculus::Llj);
    // par/wn formulas are outside ILL even under admissible rule names.
    rejects("(id (wn bot))", Calculus::Llj);
    rejects("(id (par bot bot))", Calculus::Llj);
    // one/zero are outside the classical languages.
    rejects("(id one)", Calculus::Lk);
    // orr introduces two succedent formulas before merging: not lj.
    rejects("(orr (botr (topr)))", Calculus::Lj);
}

#[test]
fn side_conditions() {
    // These violate a schema side condition in every calculus, so conclusion
    // inference already fails at parse time.
    // occ only contracts ofc-formulas.
    assert!(parse_proof("(occ (topl (topl (botl))))").is_err());
    // wnc only contracts wn-formulas.
    assert!(parse_proof("(wnc (botr (botr (topr))))").is_err());
    // ocr needs an all-ofc antecedent.
    assert!(parse_proof("(ocr (topl (topr)))").is_err());
    // wnl needs an all-wn succedent.
    assert!(parse_proof("(wnl (topl (botr (topr))))").is_err());
    // tensorr- needs singleton succedents.
    assert!(parse_proof("(tensorr- (botr (topr)) (topr))").is_err());
}

#[test]
fn parse_errors() {
    assert!(parse_proof("(frob)").is_err());
    assert!(parse_proof("(id)").is_err());
    assert!(parse_proof("(id bot (topr))").is_err());
    assert!(parse_proof("(cut- bot (topr) (botl))").is_err()); // wrong cut formula
    assert!(parse_proof("(xl 3 (topl (botl)))").is_err()); // position out of range
    assert!(parse_proof("(withl 3 (with top bot) (topl (botl)))").is_err());
    assert!(parse_proof("(id bot").is_err());
    assert!(parse_formula("(par bot bot)", Language::Ill).is_err());
    assert!(parse_formula("(tensor one)", Language::LlMinus).is_err());
}

#[test]
fn mutated_endsequent_is_caught() {
    let mut p = parse_proof("(topl (topr))").unwrap();
    p.endsequent.ante.clear();
    assert!(!check_proof(&p, Calculus::Llk).ok());
}

#[test]
fn rule_names_round_trip() {
    for calc in [Calculus::Llk, Calculus::Lk, Calculus::Llj, Calculus::Lj] {
        for &r in RuleName::admissible_in(calc) {
            assert_eq!(RuleName::from_name(r.name()), Some(r));
        }
    }
}

fn linear_formula() -> impl Strategy<Value = llgames::logic::Formula> {
    use llgames::logic::Formula;
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        Just(Formula::One),
        Just(Formula::Zero),
        "[a-z][a-z0-9]{0,3}".prop_map(Formula::Atom),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::limp(a, b)),
            inner.clone().prop_map(Formula::ofc),
            inner.prop_map(Formula::wn),
        ]
    })
}

proptest! {
    #[test]
    fn formula_print_parse_round_trip(f in linear_formula()) {
        let parsed = parse_formula(&f.to_string(), Language::LlMinus).unwrap();
        prop_assert_eq!(parsed, f);
    }
}

#[test]
fn proof_print_parse_round_trip() {
    for text in [
        "(cut- bot (id bot) (id bot))",
        "(withl 2 (with top bot) (xl 0 (topl (botl))))",
        "(plusr 2 (plus top bot) (botr (topr)))",
        "(0l (bot top))",
        "(1r (bot) (top))",
        "(tensorparr (tensorr- (topr) (parr (botr (topr)))))",
    ] {
        let p = parse_proof(text).unwrap();
        let q = parse_proof(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }
}
