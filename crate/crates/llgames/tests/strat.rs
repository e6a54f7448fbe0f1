//! Strategy algebra tests: category and exponential laws at small depth,
//! structural isomorphism round-trips, classical strategies, and the
//! documented failure modes (non-strict par, type mismatches).

use llgames::game::{Game, Move, Position, Tag};
use llgames::logic::{parse_formula, Formula, Language};
use llgames::strat::{
    absorption, compose, copairing, copycat, curry, demorgan_ofc, demorgan_ofc_inv,
    demorgan_tensor, demorgan_tensor_inv, dereliction, dne, ev, in_sharp, lem, par,
    par_s2_witness, pairing, promotion, strategies_equivalent, strictness_witness, structural,
    tensor, tensor_unit_intro, uncurry, upsilon, waste, whynot, Strategy, StructuralName,
};

fn f(text: &str) -> Formula {
    parse_formula(text, Language::LlMinus).unwrap()
}

fn cc(text: &str) -> Strategy {
    copycat(&f(text)).unwrap()
}

/// The functorial action of the exponential on strategies.
fn bang(phi: &Strategy) -> Strategy {
    let dom = match &phi.game.shape {
        Formula::Limp(a, _) => (**a).clone(),
        _ => panic!("not a limp game"),
    };
    promotion(&compose(&dereliction(&dom).unwrap(), phi).unwrap()).unwrap()
}

fn assert_equiv(a: &Strategy, b: &Strategy, depth: usize, what: &str) {
    assert!(
        strategies_equivalent(a, b, depth),
        "{what}: {} differs from {}",
        a.provenance,
        b.provenance
    );
}

#[test]
fn copycat_answers_by_mirroring() {
    let cc = copycat(&f("bot")).unwrap();
    let open = Position::empty().extended(Move { tags: vec![Tag::R] }, None);
    let (m, j) = cc.respond(&open).unwrap();
    assert_eq!(m.tags, vec![Tag::L]);
    assert_eq!(j, Some(0));
    // The empty position and even positions get no response.
    assert!(cc.respond(&Position::empty()).is_none());
}

#[test]
fn composition_identities() {
    for text in [
        "top",
        "bot",
        "(limp bot bot)",
        "(tensor bot bot)",
        "(par bot bot)",
        "(ofc bot)",
        "(wn bot)",
    ] {
        let id = cc(text);
        let left = compose(&id, &id).unwrap();
        assert_equiv(&left, &id, 6, &format!("cc;cc on {text}"));
    }
}

#[test]
fn composition_associativity() {
    // der : !b -> b, waste : b -> ?b, ?id : ?b -> ?b.
    let b = f("bot");
    let phi = dereliction(&b).unwrap();
    let psi = waste(&b).unwrap();
    let chi = whynot(&copycat(&b).unwrap()).unwrap();
    let lhs = compose(&compose(&phi, &psi).unwrap(), &chi).unwrap();
    let rhs = compose(&phi, &compose(&psi, &chi).unwrap()).unwrap();
    assert_equiv(&lhs, &rhs, 6, "associativity");
}

#[test]
fn functorial_copycats() {
    let b = f("bot");
    let idb = copycat(&b).unwrap();
    assert_equiv(&whynot(&idb).unwrap(), &cc("(wn bot)"), 6, "?id = id");
    assert_equiv(&bang(&idb), &cc("(ofc bot)"), 6, "!id = id");
    assert_equiv(
        &tensor(&idb, &idb).unwrap(),
        &cc("(tensor bot bot)"),
        6,
        "id tensor id = id",
    );
    assert_equiv(
        &par(&idb, &idb).unwrap(),
        &cc("(par bot bot)"),
        6,
        "id par id = id",
    );
}

#[test]
fn additive_copycats() {
    let args = [f("bot"), f("bot")];
    let p1 = structural(StructuralName::Proj1, &args).unwrap();
    let p2 = structural(StructuralName::Proj2, &args).unwrap();
    assert_equiv(
        &pairing(&p1, &p2).unwrap(),
        &cc("(with bot bot)"),
        6,
        "<proj1,proj2> = id",
    );
    let i1 = structural(StructuralName::Inj1, &args).unwrap();
    let i2 = structural(StructuralName::Inj2, &args).unwrap();
    assert_equiv(
        &copairing(&i1, &i2).unwrap(),
        &cc("(plus bot bot)"),
        6,
        "[inj1,inj2] = id",
    );
}

#[test]
fn whynot_monad_laws() {
    for a in [f("bot"), f("(limp bot bot)")] {
        let wa = Formula::wn(a.clone());
        let idwa = copycat(&wa).unwrap();
        // unit then multiplication, on both sides.
        let left = compose(&waste(&wa).unwrap(), &absorption(&a).unwrap()).unwrap();
        assert_equiv(&left, &idwa, 6, "eta;mu = id");
        let right = compose(&whynot(&waste(&a).unwrap()).unwrap(), &absorption(&a).unwrap())
            .unwrap();
        assert_equiv(&right, &idwa, 6, "?eta;mu = id");
        // associativity of the multiplication.
        let lhs = compose(&absorption(&wa).unwrap(), &absorption(&a).unwrap()).unwrap();
        let rhs = compose(
            &whynot(&absorption(&a).unwrap()).unwrap(),
            &absorption(&a).unwrap(),
        )
        .unwrap();
        assert_equiv(&lhs, &rhs, 6, "mu assoc");
    }
}

#[test]
fn ofcourse_comonad_laws() {
    for a in [f("bot"), f("(limp bot bot)")] {
        let oa = Formula::ofc(a.clone());
        let idoa = copycat(&oa).unwrap();
        let delta = promotion(&idoa).unwrap();
        // comultiplication then counit, on both sides.
        let left = compose(&delta, &dereliction(&oa).unwrap()).unwrap();
        assert_equiv(&left, &idoa, 6, "delta;eps = id");
        let right = compose(&delta, &bang(&dereliction(&a).unwrap())).unwrap();
        assert_equiv(&right, &idoa, 6, "delta;!eps = id");
        // coassociativity.
        let delta2 = promotion(&copycat(&Formula::ofc(oa.clone())).unwrap()).unwrap();
        let lhs = compose(&delta, &delta2).unwrap();
        let rhs = compose(&delta, &bang(&delta)).unwrap();
        assert_equiv(&lhs, &rhs, 5, "delta coassoc");
    }
}

#[test]
fn kleisli_extension_law() {
    // Promotion then dereliction recovers the strategy.
    let b = f("bot");
    let phi = dereliction(&b).unwrap();
    let back = compose(&promotion(&phi).unwrap(), &dereliction(&b).unwrap()).unwrap();
    assert_equiv(&back, &phi, 6, "promotion;der = id on strategies");
    assert_equiv(&promotion(&phi).unwrap(), &cc("(ofc bot)"), 6, "der! = id");
}

#[test]
fn upsilon_counit_and_unit_laws() {
    for a in [f("bot"), f("(limp bot bot)")] {
        // ?eps . d = eps?
        let lhs = compose(&upsilon(&a).unwrap(), &whynot(&dereliction(&a).unwrap()).unwrap())
            .unwrap();
        let rhs = dereliction(&Formula::wn(a.clone())).unwrap();
        assert_equiv(&lhs, &rhs, 6, "?eps.d = eps?");
        // d . !eta = eta!
        let lhs = compose(&bang(&waste(&a).unwrap()), &upsilon(&a).unwrap()).unwrap();
        let rhs = waste(&Formula::ofc(a.clone())).unwrap();
        assert_equiv(&lhs, &rhs, 6, "d.!eta = eta!");
    }
}

#[test]
fn upsilon_comultiplication_law() {
    let a = f("bot");
    let oa = Formula::ofc(a.clone());
    let wa = Formula::wn(a.clone());
    // ?delta . d = d! . !d . delta?
    let delta = promotion(&copycat(&oa).unwrap()).unwrap();
    let lhs = compose(&upsilon(&a).unwrap(), &whynot(&delta).unwrap()).unwrap();
    let delta_w = promotion(&copycat(&Formula::ofc(wa.clone())).unwrap()).unwrap();
    let rhs = compose(
        &compose(&delta_w, &bang(&upsilon(&a).unwrap())).unwrap(),
        &upsilon(&oa).unwrap(),
    )
    .unwrap();
    assert_equiv(&lhs, &rhs, 5, "?delta.d = d!.!d.delta?");
}

#[test]
fn upsilon_multiplication_law() {
    let a = f("bot");
    let oa = Formula::ofc(a.clone());
    let wa = Formula::wn(a.clone());
    // d . !mu = mu! . ?d . d?
    let lhs = compose(&bang(&absorption(&a).unwrap()), &upsilon(&a).unwrap()).unwrap();
    let rhs = compose(
        &compose(&upsilon(&wa).unwrap(), &whynot(&upsilon(&a).unwrap()).unwrap()).unwrap(),
        &absorption(&oa).unwrap(),
    )
    .unwrap();
    assert_equiv(&lhs, &rhs, 5, "d.!mu = mu!.?d.d?");
}

fn assert_iso(fwd: &Strategy, bwd: &Strategy, depth: usize, what: &str) {
    let (dom, _) = match &fwd.game.shape {
        Formula::Limp(a, b) => ((**a).clone(), (**b).clone()),
        _ => panic!("not a limp game"),
    };
    let (mid, cod) = match &bwd.game.shape {
        Formula::Limp(a, b) => ((**a).clone(), (**b).clone()),
        _ => panic!("not a limp game"),
    };
    assert_eq!(dom, cod, "{what}: not inverse shapes");
    let round1 = compose(fwd, bwd).unwrap();
    assert_equiv(&round1, &copycat(&dom).unwrap(), depth, what);
    let round2 = compose(bwd, fwd).unwrap();
    assert_equiv(&round2, &copycat(&mid).unwrap(), depth, what);
}

#[test]
fn natural_iso_round_trips() {
    use StructuralName::*;
    let b = f("bot");
    let i = f("(limp bot bot)");
    for a in [&b, &i] {
        let one = [a.clone()];
        assert_iso(
            &structural(Ni1, &one).unwrap(),
            &structural(Ni1Inv, &one).unwrap(),
            6,
            "ni1",
        );
        let two = [a.clone(), b.clone()];
        assert_iso(
            &structural(Ni2, &two).unwrap(),
            &structural(Ni2Inv, &two).unwrap(),
            6,
            "ni2",
        );
        assert_iso(
            &structural(Ni3, &two).unwrap(),
            &structural(Ni3Inv, &two).unwrap(),
            6,
            "ni3",
        );
        assert_iso(
            &structural(Ni4, &two).unwrap(),
            &structural(Ni4Inv, &two).unwrap(),
            6,
            "ni4",
        );
        assert_iso(
            &demorgan_ofc(a).unwrap(),
            &demorgan_ofc_inv(a).unwrap(),
            6,
            "demorgan-ofc",
        );
        assert_iso(
            &demorgan_tensor(a, &b).unwrap(),
            &demorgan_tensor_inv(a, &b).unwrap(),
            6,
            "demorgan-tensor",
        );
    }
}

#[test]
fn symmetry_involutions() {
    use StructuralName::*;
    let args = [f("bot"), f("(limp bot bot)")];
    let rargs = [args[1].clone(), args[0].clone()];
    let st = compose(
        &structural(SymTensor, &args).unwrap(),
        &structural(SymTensor, &rargs).unwrap(),
    )
    .unwrap();
    assert_equiv(
        &st,
        &copycat(&Formula::tensor(args[0].clone(), args[1].clone())).unwrap(),
        6,
        "sym-tensor involution",
    );
    let sp = compose(
        &structural(SymPar, &args).unwrap(),
        &structural(SymPar, &rargs).unwrap(),
    )
    .unwrap();
    assert_equiv(
        &sp,
        &copycat(&Formula::par(args[0].clone(), args[1].clone())).unwrap(),
        6,
        "sym-par involution",
    );
}

#[test]
fn tensor_unit_round_trip() {
    let a = f("(limp bot bot)");
    let round = compose(
        &tensor_unit_intro(&a).unwrap(),
        &structural(StructuralName::UnitTensor, &[a.clone()]).unwrap(),
    )
    .unwrap();
    assert_equiv(&round, &copycat(&a).unwrap(), 6, "tensor unit");
}

#[test]
fn curry_uncurry_round_trip() {
    let b = f("bot");
    let e = ev(&b).unwrap();
    let c = curry(&e).unwrap();
    // Curried evaluation is the copy-cat on the negation.
    assert_eq!(c.game.shape.to_string(), "(limp (limp bot bot) (limp bot bot))");
    assert_equiv(&c, &cc("(limp bot bot)"), 6, "curry(ev) = id");
    let back = uncurry(&c).unwrap();
    assert_eq!(back.game.shape, e.game.shape);
    assert_equiv(&back, &e, 6, "uncurry(curry(ev)) = ev");
}

#[test]
fn strictness_and_sharp_membership() {
    let b = f("bot");
    assert!(strictness_witness(&copycat(&b).unwrap(), 6).is_none());
    assert!(in_sharp(&copycat(&b).unwrap(), 6));
    assert!(in_sharp(&dereliction(&b).unwrap(), 6));
    // lem answers its opening move inside the codomain: not strict, but its
    // domain has no moves, so it still lives in the strict subcategory.
    let l = lem(&b).unwrap();
    assert!(strictness_witness(&l, 6).is_some());
    assert!(in_sharp(&l, 6));
}

/// A deliberately non-strict strategy on I -> I: the opening codomain
/// question is answered inside the codomain.
fn swivel() -> Strategy {
    let i = f("(limp bot bot)");
    let game = Game::new(Formula::limp(i.clone(), i)).unwrap();
    Strategy::new(game, "swivel", |s| {
        let (m, _) = s.entries.last()?;
        match m.tags.as_slice() {
            [Tag::R, Tag::R] => Some((
                Move {
                    tags: vec![Tag::R, Tag::L],
                },
                Some(s.len() - 1),
            )),
            _ => None,
        }
    })
}

#[test]
fn par_of_non_strict_strategies_is_refused() {
    let s = swivel();
    assert!(strictness_witness(&s, 4).is_some());
    let (w1, w2) = par_s2_witness(&s, &s).expect("expected a determinism witness");
    assert_eq!(w1.len(), 2);
    assert_eq!(w2.len(), 2);
    assert_eq!(w1.entries[0], w2.entries[0], "same odd prefix");
    assert_ne!(w1.entries[1], w2.entries[1], "distinct continuations");
    let err = par(&s, &s).unwrap_err();
    assert!(err.contains("non-strict"), "unexpected error: {err}");
    // Strict inputs compose fine under par.
    assert!(par_s2_witness(&cc("bot"), &cc("bot")).is_none());
}

#[test]
fn compose_rejects_mismatched_middles() {
    let err = compose(&cc("bot"), &cc("top")).unwrap_err();
    assert!(err.contains("middle"), "unexpected error: {err}");
}

#[test]
fn classical_strategies() {
    let b = f("bot");
    let d = dne(&b).unwrap();
    assert_eq!(
        d.game.shape.to_string(),
        "(limp (limp (limp bot bot) bot) bot)"
    );
    // Double negation introduction, then elimination, is the identity.
    let nb = Formula::neg_linear(b.clone());
    let dni = curry(
        &compose(
            &structural(StructuralName::SymTensor, &[b.clone(), nb.clone()]).unwrap(),
            &ev(&b).unwrap(),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(dni.game.shape, Formula::limp(b.clone(), Formula::neg_linear(nb)));
    let round = compose(&dni, &d).unwrap();
    assert_equiv(&round, &copycat(&b).unwrap(), 6, "dni;dne = id");
}
