//! Rule schemas and the proof checker.
//!
//! Conventions: lists grow to the right in antecedents and to the left in
//! succedents, matching how the rules are written. A rule that adds a formula
//! to the antecedent adds it as the last element; a rule that adds to the
//! succedent adds it as the first. Structural repositioning is done with
//! `xl`/`xr`.
//!
//! Linear rules (the `llk-` schemas; `llj` reuses the names with the
//! unrestricted-but-intuitionistic schemas where they differ):
//!
//! ```text
//! (id A)                      A |- A
//! (cut- B)    D |- B          D', B |- G'        =>  D, D' |- G'
//! (xl k)      D, A, A', D' |- G                  =>  D, A', A, D' |- G
//! (xr k)      D |- G, B, B', G'                  =>  D |- G, B', B, G'
//! (ocw A)     D |- G                             =>  D, !A |- G
//! (wnw B)     D |- G                             =>  D |- ?B, G
//! occ         D, !A, !A |- G                     =>  D, !A |- G
//! wnc         D |- ?B, ?B, G                     =>  D |- ?B, G
//! ocd         D, A |- G                          =>  D, !A |- G
//! wnd         D |- B, G                          =>  D |- ?B, G
//! wnl         !D, A |- ?G                        =>  !D, ?A |- ?G
//! ocr         !D |- B, ?G                        =>  !D |- !B, ?G
//! (0l (G))                    0 |- G
//! (1r (D) (G))                D |- 1, G
//! topl        D |- G                             =>  D, T |- G
//! topr                        |- T
//! botl                        _|_ |-
//! botr        D |- G                             =>  D |- _|_, G
//! tensorl     D, A1, A2 |- G                     =>  D, A1*A2 |- G
//! tensorr-    D1 |- B1        D2 |- B2           =>  D1, D2 |- B1*B2
//! (withl i (with A1 A2))  D, Ai |- G             =>  D, A1&A2 |- G
//! withr-      D |- B1         D |- B2            =>  D |- B1&B2
//! parl-       A1 |- G1        A2 |- G2           =>  A1#A2 |- G1, G2
//! parr        D |- B1, B2, G                     =>  D |- B1#B2, G
//! plusl-      A1 |- G         A2 |- G            =>  A1+A2 |- G
//! (plusr i (plus B1 B2))  D |- Bi, G             =>  D |- B1+B2, G
//! limpl       D1 |- A, G1     D2, B |- G2        =>  D1, D2, A-oB |- G1, G2
//! limpr-      A |- B, G                          =>  |- A-oB, G
//! ocwnl       D, ?!A |- G                        =>  D, !?A |- G
//! ocwnr       D |- !?B, G                        =>  D |- ?!B, G
//! tensorparl  D, (A*B)#C |- G                    =>  D, A, B#C |- G
//! tensorparr  D |- A*(B#C), G                    =>  D |- A*B, C, G
//! ```
//!
//! `llj` differences (Def. of that calculus: the unrestricted rules, kept to
//! intuitionistic sequents): `plusl-` carries a shared context
//! (`D, A1 |- G` and `D, A2 |- G` give `D, A1+A2 |- G`) and `limpr-` keeps
//! its context (`D, A |- B` gives `D |- A-oB`). `cut-` and `tensorr-`
//! coincide with the restricted schemas under the intuitionistic restriction.
//!
//! Classical rules (`lk-`; `lj` is the same restricted to intuitionistic
//! sequents): `cut-` is the unrestricted Cut
//! (`D |- B, G` and `D', B |- G'` give `D, D' |- G, G'`), `wl`/`wr`/`cl`/`cr`
//! mirror `ocw`/`wnw`/`occ`/`wnc` without the exponential decoration, and:
//!
//! ```text
//! andl        D, A1, A2 |- G                     =>  D, A1^A2 |- G
//! andr        D |- B1, G      D |- B2, G         =>  D |- B1^B2, G
//! orl         D, A1 |- G      D, A2 |- G         =>  D, A1vA2 |- G
//! orr         D |- B1, B2, G                     =>  D |- B1vB2, G
//! impl        D |- A, G       D, B |- G          =>  D, A=>B |- G
//! impr-       A |- B, G                          =>  |- A=>B, G
//! ```

use super::{Calculus, Formula, Params, Proof, RuleName, Sequent};
use std::fmt;

/// One schema violation, located by its path in the proof tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    /// The rule at that node.
    pub rule: RuleName,
    /// What went wrong.
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "at [{}] ({}): {}",
            path.join("."),
            self.rule.name(),
            self.message
        )
    }
}

/// Result of checking a proof; OK iff there are no failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// All schema violations found, in pre-order.
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    /// True if the proof checked without failures.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "OK")
        } else {
            for (i, fail) in self.failures.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "FAIL {fail}")?;
            }
            Ok(())
        }
    }
}

/// Checks every node of `p` against the rule schemas of `calc`.
///
/// Total and deterministic; failures are report entries, not errors.
pub fn check_proof(p: &Proof, calc: Calculus) -> CheckReport {
    let mut report = CheckReport::default();
    check_node(p, calc, &mut Vec::new(), &mut report);
    report
}

fn check_node(p: &Proof, calc: Calculus, path: &mut Vec<usize>, report: &mut CheckReport) {
    let mut fail = |path: &[usize], message: String| {
        report.failures.push(CheckFailure {
            path: path.to_vec(),
            rule: p.rule,
            message,
        });
    };

    if !RuleName::admissible_in(calc).contains(&p.rule) {
        fail(
            path,
            format!("rule '{}' not admissible in {}", p.rule.name(), calc.name()),
        );
        return;
    }
    let lang = calc.language();
    for f in p.endsequent.ante.iter().chain(p.endsequent.succ.iter()) {
        if let Err(e) = f.in_language(lang) {
            fail(path, e);
            return;
        }
    }
    if calc.intuitionistic() && !p.endsequent.intuitionistic() {
        fail(
            path,
            format!(
                "sequent has {} succedent formulas; at most 1 allowed",
                p.endsequent.succ.len()
            ),
        );
        return;
    }
    if p.premises.len() != p.rule.arity() {
        fail(
            path,
            format!(
                "expected {} premise(s), got {}",
                p.rule.arity(),
                p.premises.len()
            ),
        );
        return;
    }
    let premise_seqs: Vec<&Sequent> = p.premises.iter().map(|q| &q.endsequent).collect();
    match infer_conclusion(p.rule, Some(calc), &p.params, &premise_seqs) {
        Ok(expected) => {
            if expected != p.endsequent {
                fail(
                    path,
                    format!("conclusion {} does not match schema {expected}", p.endsequent),
                );
            }
        }
        Err(msg) => fail(path, msg),
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(q, calc, path, report);
        path.pop();
    }
}

fn is_ofc(f: &Formula) -> bool {
    matches!(f, Formula::OfCourse(_))
}

fn is_wn(f: &Formula) -> bool {
    matches!(f, Formula::WhyNot(_))
}

fn split_last(s: &Sequent) -> Result<(&[Formula], &Formula), String> {
    match s.ante.split_last() {
        Some((last, init)) => Ok((init, last)),
        None => Err("premise antecedent is empty".into()),
    }
}

fn split_first(s: &Sequent) -> Result<(&Formula, &[Formula]), String> {
    match s.succ.split_first() {
        Some((first, tail)) => Ok((first, tail)),
        None => Err("premise succedent is empty".into()),
    }
}

fn cat(a: &[Formula], b: &[Formula]) -> Vec<Formula> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Computes the unique conclusion of `rule` from its parameters and premise
/// sequents, enforcing the rule's side conditions.
///
/// With `calc` given, the calculus-specific variant of the schema is used and
/// its restrictions are enforced; with `None` (as used by the parser before
/// any calculus is known) the most permissive reading is taken.
pub fn infer_conclusion(
    rule: RuleName,
    calc: Option<Calculus>,
    params: &Params,
    prems: &[&Sequent],
) -> Result<Sequent, String> {
    use RuleName::*;
    let need_formula = || {
        params
            .formula
            .clone()
            .ok_or_else(|| "missing formula parameter".to_string())
    };
    match rule {
        Id => {
            let a = need_formula()?;
            Ok(Sequent::new(vec![a.clone()], vec![a]))
        }
        Cut => {
            let b = need_formula()?;
            let (p1, p2) = (prems[0], prems[1]);
            let (first, gamma) = split_first(p1)?;
            if first != &b {
                return Err(format!("cut formula {b} is not first in {p1}"));
            }
            let (delta2, last) = split_last(p2)?;
            if last != &b {
                return Err(format!("cut formula {b} is not last in {p2}"));
            }
            if matches!(calc, Some(Calculus::Llk)) && !gamma.is_empty() {
                return Err("cut- in llk- needs a singleton succedent in its first premise".into());
            }
            Ok(Sequent::new(
                cat(&p1.ante, delta2),
                cat(gamma, &p2.succ),
            ))
        }
        Xl => {
            let k = params.position.ok_or("missing position parameter")?;
            let p = prems[0];
            if k + 1 >= p.ante.len() {
                return Err(format!("position {k} out of range for {p}"));
            }
            let mut ante = p.ante.clone();
            ante.swap(k, k + 1);
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        Xr => {
            let k = params.position.ok_or("missing position parameter")?;
            let p = prems[0];
            if k + 1 >= p.succ.len() {
                return Err(format!("position {k} out of range for {p}"));
            }
            let mut succ = p.succ.clone();
            succ.swap(k, k + 1);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        OcW | Wl => {
            let a = need_formula()?;
            let a = if rule == OcW { Formula::ofc(a) } else { a };
            let p = prems[0];
            let mut ante = p.ante.clone();
            ante.push(a);
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        WnW | Wr => {
            let b = need_formula()?;
            let b = if rule == WnW { Formula::wn(b) } else { b };
            let p = prems[0];
            let mut succ = vec![b];
            succ.extend_from_slice(&p.succ);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        OcC | Cl => {
            let p = prems[0];
            if p.ante.len() < 2 {
                return Err("premise antecedent too short to contract".into());
            }
            let n = p.ante.len();
            let (a1, a2) = (&p.ante[n - 2], &p.ante[n - 1]);
            if a1 != a2 {
                return Err(format!("last two antecedent formulas differ: {a1} vs {a2}"));
            }
            if rule == OcC && !is_ofc(a1) {
                return Err(format!("contracted formula {a1} is not an ofc-formula"));
            }
            Ok(Sequent::new(p.ante[..n - 1].to_vec(), p.succ.clone()))
        }
        WnC | Cr => {
            let p = prems[0];
            if p.succ.len() < 2 {
                return Err("premise succedent too short to contract".into());
            }
            let (b1, b2) = (&p.succ[0], &p.succ[1]);
            if b1 != b2 {
                return Err(format!("first two succedent formulas differ: {b1} vs {b2}"));
            }
            if rule == WnC && !is_wn(b1) {
                return Err(format!("contracted formula {b1} is not a wn-formula"));
            }
            Ok(Sequent::new(p.ante.clone(), p.succ[1..].to_vec()))
        }
        OcD => {
            let p = prems[0];
            let (init, last) = split_last(p)?;
            let mut ante = init.to_vec();
            ante.push(Formula::ofc(last.clone()));
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        WnD => {
            let p = prems[0];
            let (first, tail) = split_first(p)?;
            let mut succ = vec![Formula::wn(first.clone())];
            succ.extend_from_slice(tail);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        WnL => {
            let p = prems[0];
            let (init, last) = split_last(p)?;
            if !init.iter().all(is_ofc) {
                return Err("wnl needs an all-ofc antecedent context".into());
            }
            if !p.succ.iter().all(is_wn) {
                return Err("wnl needs an all-wn succedent".into());
            }
            let mut ante = init.to_vec();
            ante.push(Formula::wn(last.clone()));
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        OcR => {
            let p = prems[0];
            let (first, tail) = split_first(p)?;
            if !p.ante.iter().all(is_ofc) {
                return Err("ocr needs an all-ofc antecedent".into());
            }
            if !tail.iter().all(is_wn) {
                return Err("ocr needs an all-wn succedent context".into());
            }
            let mut succ = vec![Formula::ofc(first.clone())];
            succ.extend_from_slice(tail);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        ZeroL => {
            let gamma = params.succ.clone().unwrap_or_default();
            Ok(Sequent::new(vec![Formula::Zero], gamma))
        }
        OneR => {
            let delta = params.ante.clone().unwrap_or_default();
            let gamma = params.succ.clone().unwrap_or_default();
            let mut succ = vec![Formula::One];
            succ.extend(gamma);
            Ok(Sequent::new(delta, succ))
        }
        TopL => {
            let p = prems[0];
            let mut ante = p.ante.clone();
            ante.push(Formula::Top);
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        TopR => Ok(Sequent::new(vec![], vec![Formula::Top])),
        BotL => Ok(Sequent::new(vec![Formula::Bot], vec![])),
        BotR => {
            let p = prems[0];
            let mut succ = vec![Formula::Bot];
            succ.extend_from_slice(&p.succ);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        TensorL | AndL => {
            let p = prems[0];
            if p.ante.len() < 2 {
                return Err("premise antecedent too short".into());
            }
            let n = p.ante.len();
            let (a1, a2) = (p.ante[n - 2].clone(), p.ante[n - 1].clone());
            let mut ante = p.ante[..n - 2].to_vec();
            ante.push(if rule == TensorL {
                Formula::tensor(a1, a2)
            } else {
                Formula::and(a1, a2)
            });
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        TensorR => {
            let (p1, p2) = (prems[0], prems[1]);
            if p1.succ.len() != 1 || p2.succ.len() != 1 {
                return Err("tensorr- needs singleton succedents".into());
            }
            let b = Formula::tensor(p1.succ[0].clone(), p2.succ[0].clone());
            Ok(Sequent::new(cat(&p1.ante, &p2.ante), vec![b]))
        }
        WithL => {
            let i = params.side.ok_or("missing side parameter")?;
            let principal = need_formula()?;
            let (a1, a2) = match &principal {
                Formula::With(a, b) => (a.as_ref(), b.as_ref()),
                _ => return Err(format!("principal formula {principal} is not a with")),
            };
            let expected = if i == 1 { a1 } else { a2 };
            let p = prems[0];
            let (init, last) = split_last(p)?;
            if last != expected {
                return Err(format!("premise last antecedent {last} is not side {i}"));
            }
            let mut ante = init.to_vec();
            ante.push(principal.clone());
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        WithR => {
            let (p1, p2) = (prems[0], prems[1]);
            if p1.ante != p2.ante {
                return Err("withr- needs equal antecedents".into());
            }
            if p1.succ.len() != 1 || p2.succ.len() != 1 {
                return Err("withr- needs singleton succedents".into());
            }
            let b = Formula::with(p1.succ[0].clone(), p2.succ[0].clone());
            Ok(Sequent::new(p1.ante.clone(), vec![b]))
        }
        ParL => {
            let (p1, p2) = (prems[0], prems[1]);
            if p1.ante.len() != 1 || p2.ante.len() != 1 {
                return Err("parl- needs singleton antecedents".into());
            }
            let a = Formula::par(p1.ante[0].clone(), p2.ante[0].clone());
            Ok(Sequent::new(vec![a], cat(&p1.succ, &p2.succ)))
        }
        ParR | OrR => {
            let p = prems[0];
            if p.succ.len() < 2 {
                return Err("premise succedent too short".into());
            }
            let (b1, b2) = (p.succ[0].clone(), p.succ[1].clone());
            let mut succ = vec![if rule == ParR {
                Formula::par(b1, b2)
            } else {
                Formula::or(b1, b2)
            }];
            succ.extend_from_slice(&p.succ[2..]);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        PlusL | OrL => {
            let (p1, p2) = (prems[0], prems[1]);
            let (d1, a1) = split_last(p1)?;
            let (d2, a2) = split_last(p2)?;
            if d1 != d2 {
                return Err("premise antecedent contexts differ".into());
            }
            if p1.succ != p2.succ {
                return Err("premise succedents differ".into());
            }
            if rule == PlusL && matches!(calc, Some(Calculus::Llk)) && !d1.is_empty() {
                return Err("plusl- in llk- needs singleton antecedents".into());
            }
            let mut ante = d1.to_vec();
            ante.push(if rule == PlusL {
                Formula::plus(a1.clone(), a2.clone())
            } else {
                Formula::or(a1.clone(), a2.clone())
            });
            Ok(Sequent::new(ante, p1.succ.clone()))
        }
        PlusR => {
            let i = params.side.ok_or("missing side parameter")?;
            let principal = need_formula()?;
            let (b1, b2) = match &principal {
                Formula::Plus(a, b) => (a.as_ref(), b.as_ref()),
                _ => return Err(format!("principal formula {principal} is not a plus")),
            };
            let expected = if i == 1 { b1 } else { b2 };
            let p = prems[0];
            let (first, tail) = split_first(p)?;
            if first != expected {
                return Err(format!("premise first succedent {first} is not side {i}"));
            }
            let mut succ = vec![principal.clone()];
            succ.extend_from_slice(tail);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        LimpL => {
            let (p1, p2) = (prems[0], prems[1]);
            let (a, g1) = split_first(p1)?;
            let (d2, b) = split_last(p2)?;
            let mut ante = p1.ante.clone();
            ante.extend_from_slice(d2);
            ante.push(Formula::limp(a.clone(), b.clone()));
            Ok(Sequent::new(ante, cat(g1, &p2.succ)))
        }
        LimpR => {
            let p = prems[0];
            let lj_style = match calc {
                Some(Calculus::Llj) => true,
                Some(_) => false,
                None => p.ante.len() > 1,
            };
            if lj_style {
                let (delta, a) = split_last(p)?;
                if p.succ.len() != 1 {
                    return Err("limpr- in llj needs a singleton succedent".into());
                }
                Ok(Sequent::new(
                    delta.to_vec(),
                    vec![Formula::limp(a.clone(), p.succ[0].clone())],
                ))
            } else {
                if p.ante.len() != 1 {
                    return Err("limpr- needs a singleton antecedent".into());
                }
                let (b, gamma) = split_first(p)?;
                let mut succ = vec![Formula::limp(p.ante[0].clone(), b.clone())];
                succ.extend_from_slice(gamma);
                Ok(Sequent::new(vec![], succ))
            }
        }
        OcWnL => {
            let p = prems[0];
            let (init, last) = split_last(p)?;
            let inner = match last {
                Formula::WhyNot(x) => match x.as_ref() {
                    Formula::OfCourse(a) => a.as_ref().clone(),
                    _ => return Err(format!("expected ?!A as last antecedent, got {last}")),
                },
                _ => return Err(format!("expected ?!A as last antecedent, got {last}")),
            };
            let mut ante = init.to_vec();
            ante.push(Formula::ofc(Formula::wn(inner)));
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        OcWnR => {
            let p = prems[0];
            let (first, tail) = split_first(p)?;
            let inner = match first {
                Formula::OfCourse(x) => match x.as_ref() {
                    Formula::WhyNot(b) => b.as_ref().clone(),
                    _ => return Err(format!("expected !?B as first succedent, got {first}")),
                },
                _ => return Err(format!("expected !?B as first succedent, got {first}")),
            };
            let mut succ = vec![Formula::wn(Formula::ofc(inner))];
            succ.extend_from_slice(tail);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        TensorParL => {
            let p = prems[0];
            let (init, last) = split_last(p)?;
            let (a, b, c) = match last {
                Formula::Par(l, r) => match l.as_ref() {
                    Formula::Tensor(a, b) => (a.as_ref().clone(), b.as_ref().clone(), r.as_ref().clone()),
                    _ => return Err(format!("expected (A*B)#C as last antecedent, got {last}")),
                },
                _ => return Err(format!("expected (A*B)#C as last antecedent, got {last}")),
            };
            let mut ante = init.to_vec();
            ante.push(a);
            ante.push(Formula::par(b, c));
            Ok(Sequent::new(ante, p.succ.clone()))
        }
        TensorParR => {
            let p = prems[0];
            let (first, tail) = split_first(p)?;
            let (a, b, c) = match first {
                Formula::Tensor(l, r) => match r.as_ref() {
                    Formula::Par(b, c) => (l.as_ref().clone(), b.as_ref().clone(), c.as_ref().clone()),
                    _ => return Err(format!("expected A*(B#C) as first succedent, got {first}")),
                },
                _ => return Err(format!("expected A*(B#C) as first succedent, got {first}")),
            };
            let mut succ = vec![Formula::tensor(a, b), c];
            succ.extend_from_slice(tail);
            Ok(Sequent::new(p.ante.clone(), succ))
        }
        AndR => {
            let (p1, p2) = (prems[0], prems[1]);
            let (b1, g1) = split_first(p1)?;
            let (b2, g2) = split_first(p2)?;
            if p1.ante != p2.ante {
                return Err("andr needs equal antecedents".into());
            }
            if g1 != g2 {
                return Err("andr needs equal succedent contexts".into());
            }
            let mut succ = vec![Formula::and(b1.clone(), b2.clone())];
            succ.extend_from_slice(g1);
            Ok(Sequent::new(p1.ante.clone(), succ))
        }
        ImpL => {
            let (p1, p2) = (prems[0], prems[1]);
            let (a, g1) = split_first(p1)?;
            let (d2, b) = split_last(p2)?;
            if p1.ante != d2 {
                return Err("impl needs equal antecedent contexts".into());
            }
            if g1 != p2.succ {
                return Err("impl needs equal succedent contexts".into());
            }
            let mut ante = p1.ante.clone();
            ante.push(Formula::implies(a.clone(), b.clone()));
            Ok(Sequent::new(ante, g1.to_vec()))
        }
        ImpR => {
            let p = prems[0];
            if p.ante.len() != 1 {
                return Err("impr- needs a singleton antecedent".into());
            }
            let (b, gamma) = split_first(p)?;
            let mut succ = vec![Formula::implies(p.ante[0].clone(), b.clone())];
            succ.extend_from_slice(gamma);
            Ok(Sequent::new(vec![], succ))
        }
    }
}
