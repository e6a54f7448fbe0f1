//! Temporary debug scaffolding.

use llgames::game::Position;
use llgames::logic::{parse_formula, Formula, Language};
use llgames::strat::*;

fn f(text: &str) -> Formula {
    parse_formula(text, Language::LlMinus).unwrap()
}

fn diverge(phi: &Strategy, psi: &Strategy, s: &Position, t: &Position, depth: usize) -> bool {
    if depth == 0 {
        return true;
    }
    let exts_s = phi.game.legal_extensions(s);
    let exts_t = psi.game.legal_extensions(t);
    for (m, j) in &exts_s {
        let s2 = s.extended(m.clone(), *j);
        let cs2 = phi.game.canonicalize(&s2);
        let t2 = exts_t
            .iter()
            .map(|(n, k)| t.extended(n.clone(), *k))
            .find(|t2| psi.game.canonicalize(t2) == cs2);
        let t2 = match t2 {
            Some(t2) => t2,
            None => {
                println!("no match in psi for phi extension:");
                println!("{}", phi.game.format_position(&s2));
                return false;
            }
        };
        match (phi.respond(&s2), psi.respond(&t2)) {
            (None, None) => {}
            (Some((rm, rj)), Some((tm, tj))) => {
                let s3 = s2.extended(rm, rj);
                let t3 = t2.extended(tm, tj);
                if !phi.game.is_legal(&s3) {
                    println!("phi response illegal at:\n{}", phi.game.format_position(&s3));
                    return false;
                }
                if !psi.game.is_legal(&t3) {
                    println!("psi response illegal at:\n{}", psi.game.format_position(&t3));
                    return false;
                }
                if phi.game.canonicalize(&s3) != psi.game.canonicalize(&t3) {
                    println!("responses differ:");
                    println!("phi:\n{}", phi.game.format_position(&s3));
                    println!("psi:\n{}", psi.game.format_position(&t3));
                    return false;
                }
                if !diverge(phi, psi, &s3, &t3, depth - 1) {
                    return false;
                }
            }
            (a, b) => {
                println!("response presence differs at:");
                println!("phi pos:\n{}", phi.game.format_position(&s2));
                println!("phi: {:?}  psi: {:?}", a, b);
                return false;
            }
        }
    }
    for (n, k) in &exts_t {
        let t2 = t.extended(n.clone(), *k);
        let c = psi.game.canonicalize(&t2);
        if !exts_s
            .iter()
            .any(|(m, j)| phi.game.canonicalize(&s.extended(m.clone(), *j)) == c)
        {
            println!("no match in phi for psi extension:");
            println!("{}", psi.game.format_position(&t2));
            return false;
        }
    }
    true
}

#[test]
fn debug_ni4() {
    use StructuralName::*;
    let two = [f("bot"), f("bot")];
    let fwd = structural(Ni4, &two).unwrap();
    let bwd = structural(Ni4Inv, &two).unwrap();
    let round = compose(&fwd, &bwd).unwrap();
    let id = copycat(&f("(plus (limp bot bot) (limp bot bot))")).unwrap();
    println!("== ni4;ni4inv vs id ==");
    diverge(&round, &id, &Position::empty(), &Position::empty(), 6);
}

#[test]
fn debug_upsilon_eta() {
    let a = f("(limp bot bot)");
    let der = dereliction(&Formula::ofc(a.clone())).unwrap();
    let _ = der;
    let b = compose(
        &promotion(&compose(&dereliction(&a).unwrap(), &waste(&a).unwrap()).unwrap()).unwrap(),
        &upsilon(&a).unwrap(),
    )
    .unwrap();
    let rhs = waste(&Formula::ofc(a.clone())).unwrap();
    println!("== d.!eta vs eta! ==");
    diverge(&b, &rhs, &Position::empty(), &Position::empty(), 6);
}

#[test]
fn debug_dne() {
    let b = f("bot");
    let d = dne(&b).unwrap();
    let nb = Formula::neg_linear(b.clone());
    let dni = curry(
        &compose(
            &structural(StructuralName::SymTensor, &[b.clone(), nb.clone()]).unwrap(),
            &ev(&b).unwrap(),
        )
        .unwrap(),
    )
    .unwrap();
    let round = compose(&dni, &d).unwrap();
    let id = copycat(&b).unwrap();
    println!("== dni;dne vs id ==");
    diverge(&round, &id, &Position::empty(), &Position::empty(), 6);
}
