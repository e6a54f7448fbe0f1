//! Translations of the classical calculi into the linear ones.
//!
//! Formulas translate by
//!
//! ```text
//! classical:        T -> T    _|_ -> _|_
//!                   A ^ B  ->  ?A* & ?B*
//!                   A v B  ->  !A* + !B*
//!                   A => B ->  !?A* -o ?!B*
//! intuitionistic:   A ^ B  ->  A* & B*
//!                   A v B  ->  !A* + !B*
//!                   A => B ->  !A* -o B*
//! ```
//!
//! and a classical proof of `D |- G` becomes a linear proof of `!D* |- ?G*`;
//! an intuitionistic proof of `D |- B` becomes one of `!D* |- B*` (the
//! succedent stays undecorated). Both translations go rule by rule, so the
//! output proof tree mirrors the input tree with local expansions.
//!
//! The only classical rule without an image is intuitionistic right
//! weakening: `D |- ` gives `D |- B`, but `!D* |- ` does not give
//! `!D* |- B*` in ILL, so [`intuitionistic_proof`] rejects proofs using `wr`.
//!
//! Internally the unrestricted cut (side formulas in the first premise's
//! succedent) is derived from `cut-` by folding contexts with `tensor`/`par`
//! and redistributing with `tensorparr`; see [`derived_cut`]'s source.

use crate::logic::{
    check_proof, infer_conclusion, Calculus, Formula, Params, Proof, RuleName, Sequent,
};

/// Applies the classical formula translation.
///
/// Atoms pass through unchanged; linear constructors are rejected.
pub fn classical_formula(f: &Formula) -> Result<Formula, String> {
    Ok(match f {
        Formula::Top => Formula::Top,
        Formula::Bot => Formula::Bot,
        Formula::Atom(n) => Formula::Atom(n.clone()),
        Formula::And(a, b) => Formula::with(
            Formula::wn(classical_formula(a)?),
            Formula::wn(classical_formula(b)?),
        ),
        Formula::Or(a, b) => Formula::plus(
            Formula::ofc(classical_formula(a)?),
            Formula::ofc(classical_formula(b)?),
        ),
        Formula::Implies(a, b) => Formula::limp(
            Formula::ofc(Formula::wn(classical_formula(a)?)),
            Formula::wn(Formula::ofc(classical_formula(b)?)),
        ),
        _ => return Err(format!("{f} is not a classical formula")),
    })
}

/// Applies the intuitionistic formula translation.
pub fn intuitionistic_formula(f: &Formula) -> Result<Formula, String> {
    Ok(match f {
        Formula::Top => Formula::Top,
        Formula::Bot => Formula::Bot,
        Formula::Atom(n) => Formula::Atom(n.clone()),
        Formula::And(a, b) => Formula::with(
            intuitionistic_formula(a)?,
            intuitionistic_formula(b)?,
        ),
        Formula::Or(a, b) => Formula::plus(
            Formula::ofc(intuitionistic_formula(a)?),
            Formula::ofc(intuitionistic_formula(b)?),
        ),
        Formula::Implies(a, b) => Formula::limp(
            Formula::ofc(intuitionistic_formula(a)?),
            intuitionistic_formula(b)?,
        ),
        _ => return Err(format!("{f} is not a classical formula")),
    })
}

/// `D |- G` becomes `!D* |- ?G*`.
pub fn classical_sequent(s: &Sequent) -> Result<Sequent, String> {
    Ok(Sequent::new(
        s.ante
            .iter()
            .map(|f| Ok(Formula::ofc(classical_formula(f)?)))
            .collect::<Result<_, String>>()?,
        s.succ
            .iter()
            .map(|f| Ok(Formula::wn(classical_formula(f)?)))
            .collect::<Result<_, String>>()?,
    ))
}

/// `D |- B` becomes `!D* |- B*`.
pub fn intuitionistic_sequent(s: &Sequent) -> Result<Sequent, String> {
    Ok(Sequent::new(
        s.ante
            .iter()
            .map(|f| Ok(Formula::ofc(intuitionistic_formula(f)?)))
            .collect::<Result<_, String>>()?,
        s.succ
            .iter()
            .map(intuitionistic_formula)
            .collect::<Result<_, String>>()?,
    ))
}

// ---------------------------------------------------------------------------
// Proof builders. These construct linear proof nodes and recompute the
// endsequent through the schema engine, so a construction bug panics here
// instead of producing an ill-formed tree.
// ---------------------------------------------------------------------------

fn pf(rule: RuleName, params: Params, premises: Vec<Proof>) -> Proof {
    let seqs: Vec<&Sequent> = premises.iter().map(|p| &p.endsequent).collect();
    let endsequent = infer_conclusion(rule, None, &params, &seqs)
        .unwrap_or_else(|e| panic!("translation built an invalid {} node: {e}", rule.name()));
    Proof {
        rule,
        endsequent,
        params,
        premises,
    }
}

fn with_formula(f: Formula) -> Params {
    Params {
        formula: Some(f),
        ..Params::default()
    }
}

fn id(f: Formula) -> Proof {
    pf(RuleName::Id, with_formula(f), vec![])
}
fn cutm(f: Formula, p: Proof, q: Proof) -> Proof {
    pf(RuleName::Cut, with_formula(f), vec![p, q])
}
fn xl(k: usize, p: Proof) -> Proof {
    let params = Params {
        position: Some(k),
        ..Params::default()
    };
    pf(RuleName::Xl, params, vec![p])
}
fn xr(k: usize, p: Proof) -> Proof {
    let params = Params {
        position: Some(k),
        ..Params::default()
    };
    pf(RuleName::Xr, params, vec![p])
}
fn ocw(f: Formula, p: Proof) -> Proof {
    pf(RuleName::OcW, with_formula(f), vec![p])
}
fn wnw(f: Formula, p: Proof) -> Proof {
    pf(RuleName::WnW, with_formula(f), vec![p])
}
fn occ(p: Proof) -> Proof {
    pf(RuleName::OcC, Params::default(), vec![p])
}
fn wnc(p: Proof) -> Proof {
    pf(RuleName::WnC, Params::default(), vec![p])
}
fn ocd(p: Proof) -> Proof {
    pf(RuleName::OcD, Params::default(), vec![p])
}
fn wnd(p: Proof) -> Proof {
    pf(RuleName::WnD, Params::default(), vec![p])
}
fn wnl(p: Proof) -> Proof {
    pf(RuleName::WnL, Params::default(), vec![p])
}
fn ocr(p: Proof) -> Proof {
    pf(RuleName::OcR, Params::default(), vec![p])
}
fn topl(p: Proof) -> Proof {
    pf(RuleName::TopL, Params::default(), vec![p])
}
fn topr() -> Proof {
    pf(RuleName::TopR, Params::default(), vec![])
}
fn botl() -> Proof {
    pf(RuleName::BotL, Params::default(), vec![])
}
fn botr(p: Proof) -> Proof {
    pf(RuleName::BotR, Params::default(), vec![p])
}
fn tensorl(p: Proof) -> Proof {
    pf(RuleName::TensorL, Params::default(), vec![p])
}
fn tensorr(p: Proof, q: Proof) -> Proof {
    pf(RuleName::TensorR, Params::default(), vec![p, q])
}
fn withl(side: u8, f: Formula, p: Proof) -> Proof {
    let params = Params {
        side: Some(side),
        formula: Some(f),
        ..Params::default()
    };
    pf(RuleName::WithL, params, vec![p])
}
fn withr(p: Proof, q: Proof) -> Proof {
    pf(RuleName::WithR, Params::default(), vec![p, q])
}
fn parl(p: Proof, q: Proof) -> Proof {
    pf(RuleName::ParL, Params::default(), vec![p, q])
}
fn parr(p: Proof) -> Proof {
    pf(RuleName::ParR, Params::default(), vec![p])
}
fn plusl(p: Proof, q: Proof) -> Proof {
    pf(RuleName::PlusL, Params::default(), vec![p, q])
}
fn plusr(side: u8, f: Formula, p: Proof) -> Proof {
    let params = Params {
        side: Some(side),
        formula: Some(f),
        ..Params::default()
    };
    pf(RuleName::PlusR, params, vec![p])
}
fn limpl(p: Proof, q: Proof) -> Proof {
    pf(RuleName::LimpL, Params::default(), vec![p, q])
}
fn limpr(p: Proof) -> Proof {
    pf(RuleName::LimpR, Params::default(), vec![p])
}
fn ocwnl(p: Proof) -> Proof {
    pf(RuleName::OcWnL, Params::default(), vec![p])
}
fn ocwnr(p: Proof) -> Proof {
    pf(RuleName::OcWnR, Params::default(), vec![p])
}
fn tensorparr(p: Proof) -> Proof {
    pf(RuleName::TensorParR, Params::default(), vec![p])
}

// ---------------------------------------------------------------------------
// Exchange plumbing.
// ---------------------------------------------------------------------------

/// Moves the antecedent formula at `from` to position `to` by adjacent swaps.
fn move_ante(mut p: Proof, from: usize, to: usize) -> Proof {
    let mut i = from;
    while i < to {
        p = xl(i, p);
        i += 1;
    }
    while i > to {
        p = xl(i - 1, p);
        i -= 1;
    }
    p
}

/// Moves the succedent formula at `from` to position `to` by adjacent swaps.
fn move_succ(mut p: Proof, from: usize, to: usize) -> Proof {
    let mut i = from;
    while i < to {
        p = xr(i, p);
        i += 1;
    }
    while i > to {
        p = xr(i - 1, p);
        i -= 1;
    }
    p
}

/// Permutes the antecedent into `target` (same multiset) by bubbling each
/// target formula into place from left to right.
fn reorder_ante(mut p: Proof, target: &[Formula]) -> Proof {
    debug_assert_eq!(p.endsequent.ante.len(), target.len());
    for i in 0..target.len() {
        let from = p.endsequent.ante[i..]
            .iter()
            .position(|f| f == &target[i])
            .unwrap_or_else(|| panic!("reorder_ante: {} missing", target[i]))
            + i;
        p = move_ante(p, from, i);
    }
    p
}

/// Succedent analog of [`reorder_ante`].
fn reorder_succ(mut p: Proof, target: &[Formula]) -> Proof {
    debug_assert_eq!(p.endsequent.succ.len(), target.len());
    for i in 0..target.len() {
        let from = p.endsequent.succ[i..]
            .iter()
            .position(|f| f == &target[i])
            .unwrap_or_else(|| panic!("reorder_succ: {} missing", target[i]))
            + i;
        p = move_succ(p, from, i);
    }
    p
}

/// Contracts one duplicate of the ofc-formula `f` in the antecedent, keeping
/// the other formulas in their current relative order.
fn contract_ante(p: Proof, f: &Formula) -> Proof {
    let mut target: Vec<Formula> = Vec::new();
    let mut seen = 0;
    for g in &p.endsequent.ante {
        if g == f && seen < 2 {
            seen += 1;
        } else {
            target.push(g.clone());
        }
    }
    assert_eq!(seen, 2, "contract_ante: {f} not duplicated");
    target.push(f.clone());
    target.push(f.clone());
    occ(reorder_ante(p, &target))
}

/// Succedent analog of [`contract_ante`] (for wn-formulas).
fn contract_succ(p: Proof, f: &Formula) -> Proof {
    let mut target: Vec<Formula> = vec![f.clone(), f.clone()];
    let mut seen = 0;
    for g in &p.endsequent.succ {
        if g == f && seen < 2 {
            seen += 1;
        } else {
            target.push(g.clone());
        }
    }
    assert_eq!(seen, 2, "contract_succ: {f} not duplicated");
    wnc(reorder_succ(p, &target))
}

// ---------------------------------------------------------------------------
// The derived unrestricted cut.
// ---------------------------------------------------------------------------

/// Right-nested tensor fold `a1 * (a2 * (... * top))`.
fn tensor_fold(l: &[Formula]) -> Formula {
    match l.split_first() {
        None => Formula::Top,
        Some((a, rest)) => Formula::tensor(a.clone(), tensor_fold(rest)),
    }
}

/// Left-nested par fold `((bot # g1) # g2) # ...`.
fn par_fold(l: &[Formula]) -> Formula {
    l.iter()
        .fold(Formula::Bot, |acc, g| Formula::par(acc, g.clone()))
}

/// `D |- a1 * (a2 * (... * top))`, built from identities.
fn tensor_fold_intro(l: &[Formula]) -> Proof {
    match l.split_first() {
        None => topr(),
        Some((a, rest)) => tensorr(id(a.clone()), tensor_fold_intro(rest)),
    }
}

/// `((bot # g1) # ...) # gm |- g1, ..., gm`, built from identities.
fn par_fold_elim(l: &[Formula]) -> Proof {
    match l.split_last() {
        None => botl(),
        Some((g, rest)) => parl(par_fold_elim(rest), id(g.clone())),
    }
}

/// The unrestricted cut, derived from `cut-`.
///
/// Takes `p1 : D |- b, G` (cut formula first) and `p2 : D', b |- G'` (cut
/// formula last) to a proof of `D, D' |- G, G'`. When `G` is empty this is
/// `cut-` itself; otherwise both premises are folded into single formulas,
/// redistributed with `tensorparr`, cut with `cut-`, and unfolded again.
fn derived_cut(b: &Formula, p1: Proof, p2: Proof) -> Proof {
    assert_eq!(p1.endsequent.succ.first(), Some(b), "derived_cut premise 1");
    assert_eq!(p2.endsequent.ante.last(), Some(b), "derived_cut premise 2");
    let gamma: Vec<Formula> = p1.endsequent.succ[1..].to_vec();
    if gamma.is_empty() {
        return cutm(b.clone(), p1, p2);
    }
    let delta: Vec<Formula> = p1.endsequent.ante.clone();
    let delta2: Vec<Formula> = p2.endsequent.ante[..p2.endsequent.ante.len() - 1].to_vec();
    let gamma2: Vec<Formula> = p2.endsequent.succ.clone();
    let k = delta2.len();
    let m = gamma.len();

    // D |- (rt D') * (b # (## G)), where rt is the tensor fold and ## the
    // par fold.
    let mut c = move_succ(p1, 0, m); // D |- G, b
    c = botr(c); // D |- bot, G, b
    for _ in 0..m {
        c = parr(c); // D |- ## G, b
    }
    c = parr(xr(0, c)); // D |- b # (## G)
    let d = tensorr(tensor_fold_intro(&delta2), c); // D', D |- (rt D') * (b # ## G)
    let f = parr(tensorparr(d)); // D', D |- ((rt D') * b) # (## G)
    let cut_formula = Formula::par(
        Formula::tensor(tensor_fold(&delta2), b.clone()),
        par_fold(&gamma),
    );

    // (rt D') * b |- G', by folding the antecedent of p2.
    let mut w = topl(p2); // D', b, top |- G'
    w = move_ante(w, k, 0); // b, D', top |- G'
    for _ in 0..k {
        w = tensorl(w); // b, rt D' |- G'
    }
    w = tensorl(xl(0, w)); // (rt D') * b |- G'

    // ((rt D') * b) # (## G) |- G', G, then cut and reorder.
    let wing = parl(w, par_fold_elim(&gamma));
    let cut = cutm(cut_formula, f, wing); // D', D |- G', G
    let ante_target: Vec<Formula> = delta.iter().chain(delta2.iter()).cloned().collect();
    let succ_target: Vec<Formula> = gamma.iter().chain(gamma2.iter()).cloned().collect();
    reorder_succ(reorder_ante(cut, &ante_target), &succ_target)
}

// ---------------------------------------------------------------------------
// The classical proof translation.
// ---------------------------------------------------------------------------

/// `!(X & Y) |- !X * !Y`: the substitution of `&` under `!` by `*`.
fn sub_tensor_with(x: &Formula, y: &Formula) -> Proof {
    let with = Formula::with(x.clone(), y.clone());
    let w1 = ocr(ocd(withl(1, with.clone(), id(x.clone()))));
    let w2 = ocr(ocd(withl(2, with, id(y.clone()))));
    occ(tensorr(w1, w2))
}

/// Translates a checked LK⁻ proof of `D |- G` into an LLK⁻ proof of
/// `!D* |- ?G*`.
pub fn classical_proof(p: &Proof) -> Result<Proof, String> {
    let report = check_proof(p, Calculus::Lk);
    if !report.ok() {
        return Err(format!("input does not check in lk-: {report}"));
    }
    Ok(tc(p))
}

/// Wraps every antecedent translation in `!`.
fn bang_all(l: &[Formula]) -> Vec<Formula> {
    l.iter().map(|f| Formula::ofc(f.clone())).collect()
}

fn tc_formula(f: &Formula) -> Formula {
    classical_formula(f).expect("checked classical formula")
}

fn tc(p: &Proof) -> Proof {
    use RuleName::*;
    let prem = |i: usize| tc(&p.premises[i]);
    let src = |i: usize| &p.premises[i].endsequent;
    match p.rule {
        Id => {
            let a = tc_formula(p.params.formula.as_ref().unwrap());
            wnd(ocd(id(a)))
        }
        Cut => {
            let b = tc_formula(p.params.formula.as_ref().unwrap());
            let b = Formula::wn(Formula::ofc(b)); // the linear cut formula ?!B*
            let p1 = ocwnr(ocr(prem(0)));
            let p2 = wnl(prem(1));
            derived_cut(&b, p1, p2)
        }
        Xl => xl(p.params.position.unwrap(), prem(0)),
        Xr => xr(p.params.position.unwrap(), prem(0)),
        Wl => ocw(tc_formula(p.params.formula.as_ref().unwrap()), prem(0)),
        Wr => wnw(tc_formula(p.params.formula.as_ref().unwrap()), prem(0)),
        Cl => occ(prem(0)),
        Cr => wnc(prem(0)),
        TopL => ocd(topl(prem(0))),
        TopR => wnd(topr()),
        BotL => ocd(botl()),
        BotR => wnd(botr(prem(0))),
        AndL => {
            // Premise D, A1, A2 |- G: re-decorate the last two antecedents
            // as !?Ai*, fuse with tensorl, and cut against the gadget
            // !(?A1* & ?A2*) |- !?A1* * !?A2*.
            let n = src(0).ante.len();
            let x = Formula::wn(tc_formula(&src(0).ante[n - 2]));
            let y = Formula::wn(tc_formula(&src(0).ante[n - 1]));
            let mut q = ocwnl(wnl(prem(0)));
            q = xl(n - 2, q);
            q = ocwnl(wnl(q));
            q = tensorl(xl(n - 2, q));
            let cut_formula = Formula::tensor(
                Formula::ofc(x.clone()),
                Formula::ofc(y.clone()),
            );
            let cut = cutm(cut_formula, sub_tensor_with(&x, &y), q);
            let mut target: Vec<Formula> = cut.endsequent.ante[1..].to_vec();
            target.push(Formula::ofc(Formula::with(x, y)));
            reorder_ante(cut, &target)
        }
        AndR => {
            let x = Formula::wn(tc_formula(&src(0).succ[0]));
            let y = Formula::wn(tc_formula(&src(1).succ[0]));
            let gamma: Vec<Formula> = src(0).succ[1..].iter().map(tc_formula).collect();
            let principal = Formula::wn(Formula::with(x.clone(), y.clone()));
            if gamma.is_empty() {
                return wnd(withr(prem(0), prem(1)));
            }
            // Promote each premise to !D* |- !?Bi*, ?G*, then cut both
            // against the pairing gadget !?B1*, !?B2* |- ?(?B1* & ?B2*).
            let p1 = ocr(prem(0));
            let p2 = ocr(prem(1));
            let s1 = ocw(y.clone(), ocd(id(x.clone())));
            let s2 = xl(0, ocw(x.clone(), ocd(id(y.clone()))));
            let pair = wnd(withr(s1, s2));
            let c1 = derived_cut(&Formula::ofc(y.clone()), p2, pair);
            let mut c = derived_cut(&Formula::ofc(x.clone()), p1, c1);
            let delta = c.endsequent.ante[..c.endsequent.ante.len() / 2].to_vec();
            for f in &delta {
                c = contract_ante(c, f);
            }
            for g in &gamma {
                c = contract_succ(c, &Formula::wn(g.clone()));
            }
            let mut succ_target = vec![principal];
            succ_target.extend(gamma.iter().map(|g| Formula::wn(g.clone())));
            reorder_succ(reorder_ante(c, &delta), &succ_target)
        }
        OrL => {
            let n1 = src(0).ante.len();
            let x = Formula::ofc(tc_formula(&src(0).ante[n1 - 1]));
            let y = Formula::ofc(tc_formula(&src(1).ante[src(1).ante.len() - 1]));
            let delta: Vec<Formula> =
                bang_all(&src(0).ante[..n1 - 1].iter().map(tc_formula).collect::<Vec<_>>());
            let principal = Formula::ofc(Formula::plus(x.clone(), y.clone()));
            if delta.is_empty() {
                return ocd(plusl(prem(0), prem(1)));
            }
            // Demote each premise to !D*, ?!Ai* |- ?G*, then cut both against
            // the case gadget !(!A1* + !A2*) |- ?!A1*, ?!A2*.
            let p1 = wnl(prem(0));
            let p2 = wnl(prem(1));
            let s1 = xr(0, wnw(y.clone(), wnd(id(x.clone()))));
            let s2 = wnw(x.clone(), wnd(id(y.clone())));
            let cases = ocd(plusl(s1, s2));
            let c1 = derived_cut(&Formula::wn(x), cases, p1);
            let mut c = derived_cut(&Formula::wn(y), c1, p2);
            let gamma: Vec<Formula> = c.endsequent.succ[..c.endsequent.succ.len() / 2].to_vec();
            for f in &delta {
                c = contract_ante(c, f);
            }
            for g in &gamma {
                c = contract_succ(c, g);
            }
            let mut ante_target = delta;
            ante_target.push(principal);
            reorder_succ(reorder_ante(c, &ante_target), &gamma)
        }
        OrR => {
            // Premise D |- B1, B2, G: re-decorate the first two succedents as
            // ?!Bi*, fold the whole succedent into one par, and cut against
            // an unfolding of it that injects into !B1* + !B2*.
            let x = Formula::ofc(tc_formula(&src(0).succ[0]));
            let y = Formula::ofc(tc_formula(&src(0).succ[1]));
            let gamma: Vec<Formula> = src(0).succ[2..]
                .iter()
                .map(|g| Formula::wn(tc_formula(g)))
                .collect();
            let mut q = ocwnr(ocr(prem(0)));
            q = ocwnr(ocr(xr(0, q)));
            q = xr(0, q);
            let fold_len = q.endsequent.succ.len();
            let tail = q.endsequent.succ[1..].to_vec();
            let cut_formula = tail.iter().fold(q.endsequent.succ[0].clone(), |acc, s| {
                Formula::par(acc, s.clone())
            });
            for _ in 1..fold_len {
                q = parr(q);
            }
            let plus = Formula::plus(x.clone(), y.clone());
            let w1 = wnl(wnd(plusr(1, plus.clone(), id(x.clone()))));
            let w2 = wnl(wnd(plusr(2, plus, id(y.clone()))));
            let mut chain = wnc(parl(w1, w2));
            for g in &gamma {
                chain = parl(chain, id(g.clone()));
            }
            cutm(cut_formula, q, chain)
        }
        ImpL => {
            let a = Formula::wn(tc_formula(&src(0).succ[0]));
            let n2 = src(1).ante.len();
            let b = Formula::ofc(tc_formula(&src(1).ante[n2 - 1]));
            let principal = Formula::ofc(Formula::limp(
                Formula::ofc(a),
                Formula::wn(b),
            ));
            let p1 = ocr(prem(0));
            let p2 = wnl(prem(1));
            let mut c = ocd(limpl(p1, p2));
            let delta: Vec<Formula> =
                bang_all(&src(0).ante.iter().map(tc_formula).collect::<Vec<_>>());
            let gamma: Vec<Formula> = src(0).succ[1..]
                .iter()
                .map(|g| Formula::wn(tc_formula(g)))
                .collect();
            for f in &delta {
                c = contract_ante(c, f);
            }
            for g in &gamma {
                c = contract_succ(c, g);
            }
            let mut ante_target = delta;
            ante_target.push(principal);
            reorder_succ(reorder_ante(c, &ante_target), &gamma)
        }
        ImpR => wnd(limpr(ocwnr(ocr(ocwnl(wnl(prem(0))))))),
        _ => unreachable!("rule {} is not classical", p.rule.name()),
    }
}

// ---------------------------------------------------------------------------
// The intuitionistic proof translation.
// ---------------------------------------------------------------------------

/// Translates a checked LJ proof of `D |- B` into an LLJ proof of
/// `!D* |- B*`.
///
/// Right weakening has no image (from `!D* |- ` there is no ILL proof of
/// `!D* |- B*` in general), so proofs using `wr` are rejected.
pub fn intuitionistic_proof(p: &Proof) -> Result<Proof, String> {
    let report = check_proof(p, Calculus::Lj);
    if !report.ok() {
        return Err(format!("input does not check in lj: {report}"));
    }
    ti(p)
}

fn ti_formula(f: &Formula) -> Formula {
    intuitionistic_formula(f).expect("checked intuitionistic formula")
}

fn ti(p: &Proof) -> Result<Proof, String> {
    use RuleName::*;
    let prem = |i: usize| ti(&p.premises[i]);
    let src = |i: usize| &p.premises[i].endsequent;
    Ok(match p.rule {
        Id => {
            let a = ti_formula(p.params.formula.as_ref().unwrap());
            ocd(id(a))
        }
        Cut => {
            let b = Formula::ofc(ti_formula(p.params.formula.as_ref().unwrap()));
            cutm(b, ocr(prem(0)?), prem(1)?)
        }
        Xl => xl(p.params.position.unwrap(), prem(0)?),
        Wl => ocw(ti_formula(p.params.formula.as_ref().unwrap()), prem(0)?),
        Wr => {
            return Err(
                "wr has no translation: `!D* |- ` does not entail `!D* |- B*` in ILL".into(),
            )
        }
        Cl => occ(prem(0)?),
        TopL => ocd(topl(prem(0)?)),
        TopR => topr(),
        BotL => ocd(botl()),
        BotR => botr(prem(0)?),
        AndL => {
            let n = src(0).ante.len();
            let x = ti_formula(&src(0).ante[n - 2]);
            let y = ti_formula(&src(0).ante[n - 1]);
            let q = tensorl(prem(0)?);
            let cut_formula =
                Formula::tensor(Formula::ofc(x.clone()), Formula::ofc(y.clone()));
            let cut = cutm(cut_formula, sub_tensor_with(&x, &y), q);
            let mut target: Vec<Formula> = cut.endsequent.ante[1..].to_vec();
            target.push(Formula::ofc(Formula::with(x, y)));
            reorder_ante(cut, &target)
        }
        AndR => withr(prem(0)?, prem(1)?),
        OrL => ocd(plusl(prem(0)?, prem(1)?)),
        ImpL => {
            let a = ti_formula(&src(0).succ[0]);
            let b = ti_formula(&src(1).ante[src(1).ante.len() - 1]);
            let limp = Formula::limp(Formula::ofc(a), b.clone());
            let applied = ocd(limpl(ocr(prem(0)?), id(b.clone())));
            let cut = cutm(Formula::ofc(b), ocr(applied), prem(1)?);
            let delta: Vec<Formula> =
                bang_all(&src(0).ante.iter().map(ti_formula).collect::<Vec<_>>());
            let mut c = cut;
            for f in &delta {
                c = contract_ante(c, f);
            }
            let mut target = delta;
            target.push(Formula::ofc(limp));
            reorder_ante(c, &target)
        }
        ImpR => limpr(prem(0)?),
        _ => unreachable!("rule {} is not intuitionistic", p.rule.name()),
    })
}
